#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace curate {

struct WarcRecord {
    std::string target_uri;
    std::string record_type;
    int http_status = 0;
    std::string content_type;  // embedded HTTP Content-Type
    std::string payload;       // HTTP body, dechunked
    std::uint64_t record_index = 0;  // position in file, for document ids
};

struct WarcStats {
    std::uint64_t responses = 0;        // records yielded
    std::uint64_t records_seen = 0;     // every well-formed record
    std::uint64_t corrupt_members = 0;  // gzip members skipped
    std::uint64_t malformed_records = 0;
    bool truncated = false;
};

// Streams response records out of a gzip-multistream WARC (or a plain
// .warc for fixtures). Corrupt gzip members are skipped at the member
// boundary; malformed record headers skip to the next "WARC/" marker.
class WarcReader {
public:
    explicit WarcReader(const std::string& path);
    ~WarcReader();
    WarcReader(const WarcReader&) = delete;
    WarcReader& operator=(const WarcReader&) = delete;

    // Yields the next response record in file order; false at EOF.
    bool next(WarcRecord& record);

    const WarcStats& stats() const { return stats_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    WarcStats stats_;
};

}  // namespace curate
