#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace curate {

// Gzip writer with a fixed header (mtime 0) so identical content produces
// identical bytes on every run. Falls back to plain file output when the
// path does not end in ".gz".
class OutputFile {
public:
    explicit OutputFile(const std::string& path);
    ~OutputFile();
    OutputFile(const OutputFile&) = delete;
    OutputFile& operator=(const OutputFile&) = delete;

    void write(std::string_view data);
    void close();  // flushes; throws on I/O failure

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Streaming reader over plain or gzip files. Multistream members are
// concatenated transparently. Corruption is a hard error here; the WARC
// reader has its own member-level recovery.
class InputFile {
public:
    explicit InputFile(const std::string& path);
    ~InputFile();
    InputFile(const InputFile&) = delete;
    InputFile& operator=(const InputFile&) = delete;

    // Returns number of bytes produced; 0 at end of stream.
    std::size_t read(char* out, std::size_t capacity);

    // Reads up to and including '\n'. Returns false at end of stream.
    bool read_line(std::string& line);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Member-at-a-time gzip reader for WARC files: each call decompresses one
// complete gzip member. A corrupt member is skipped by scanning the raw
// bytes for the next member magic.
class GzipMemberReader {
public:
    explicit GzipMemberReader(const std::string& path);
    ~GzipMemberReader();

    // Appends one member's plaintext to `out`. Returns false at EOF.
    // Corrupt members are skipped (counted), possibly hitting EOF.
    bool next_member(std::string& out);

    std::uint64_t corrupt_members() const { return corrupt_members_; }
    bool truncated() const { return truncated_; }

private:
    bool refill();
    bool scan_to_magic();

    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::uint64_t corrupt_members_ = 0;
    bool truncated_ = false;
};

// Whole-file helpers for small fixtures and resources.
std::string read_file(const std::string& path);
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace curate
