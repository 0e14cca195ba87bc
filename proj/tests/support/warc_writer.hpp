#pragma once

#include <zlib.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace curate::testing {

// One-shot gzip compression of a whole buffer (single member).
inline std::string gzip_compress(std::string_view data) {
    z_stream strm{};
    if (deflateInit2(&strm, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
                     Z_DEFAULT_STRATEGY) != Z_OK) {
        throw std::runtime_error("deflateInit2 failed");
    }
    gz_header header{};
    header.os = 3;
    deflateSetHeader(&strm, &header);
    std::string out;
    out.resize(deflateBound(&strm, static_cast<uLong>(data.size())) + 32);
    strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    strm.avail_in = static_cast<uInt>(data.size());
    strm.next_out = reinterpret_cast<Bytef*>(out.data());
    strm.avail_out = static_cast<uInt>(out.size());
    int rc = deflate(&strm, Z_FINISH);
    if (rc != Z_STREAM_END) {
        deflateEnd(&strm);
        throw std::runtime_error("deflate failed");
    }
    out.resize(out.size() - strm.avail_out);
    deflateEnd(&strm);
    return out;
}

// Builds WARC bytes record by record, one gzip member per record like the
// real crawl files. Supports plain (uncompressed) output and deliberate
// corruption for the recovery tests.
class WarcWriter {
public:
    explicit WarcWriter(bool gzip = true) : gzip_(gzip) {}

    static std::string make_record(const std::string& type, const std::string& uri,
                                   const std::string& block) {
        std::string rec = "WARC/1.0\r\n";
        rec += "WARC-Type: " + type + "\r\n";
        if (!uri.empty()) rec += "WARC-Target-URI: " + uri + "\r\n";
        rec += "WARC-Record-ID: <urn:uuid:0000>\r\n";
        rec += "Content-Length: " + std::to_string(block.size()) + "\r\n";
        rec += "\r\n";
        rec += block;
        rec += "\r\n\r\n";
        return rec;
    }

    static std::string make_http_block(int status, const std::string& content_type,
                                       const std::string& body,
                                       const std::string& extra_headers = "") {
        std::string block = "HTTP/1.1 " + std::to_string(status) + " OK\r\n";
        if (!content_type.empty()) block += "Content-Type: " + content_type + "\r\n";
        block += extra_headers;
        block += "Content-Length: " + std::to_string(body.size()) + "\r\n";
        block += "\r\n";
        block += body;
        return block;
    }

    void add_response(const std::string& uri, const std::string& html,
                      int status = 200,
                      const std::string& content_type = "text/html; charset=utf-8") {
        add_record(make_record("response", uri, make_http_block(status, content_type, html)));
    }

    void add_record(const std::string& record_bytes) {
        if (gzip_) {
            bytes_ += gzip_compress(record_bytes);
        } else {
            bytes_ += record_bytes;
        }
    }

    // A syntactically valid member whose deflate payload is garbage.
    void add_corrupt_member() {
        std::string member = gzip_compress("this member will be damaged beyond recovery");
        for (std::size_t i = 12; i + 8 < member.size(); ++i) member[i] ^= 0x5A;
        // Scrub any accidental member magic the damage may have produced,
        // so the rescue scan lands on the real next member.
        for (std::size_t i = 10; i + 2 < member.size(); ++i) {
            if (static_cast<unsigned char>(member[i]) == 0x1f &&
                static_cast<unsigned char>(member[i + 1]) == 0x8b &&
                static_cast<unsigned char>(member[i + 2]) == 0x08) {
                member[i + 2] = 0x09;
            }
        }
        bytes_ += member;
    }

    void add_raw(std::string_view raw) { bytes_ += raw; }

    const std::string& bytes() const { return bytes_; }

    void save(const std::string& path) const {
        std::FILE* fp = std::fopen(path.c_str(), "wb");
        if (!fp) throw std::runtime_error("cannot open " + path);
        if (!bytes_.empty() && std::fwrite(bytes_.data(), 1, bytes_.size(), fp) != bytes_.size()) {
            std::fclose(fp);
            throw std::runtime_error("short write " + path);
        }
        std::fclose(fp);
    }

private:
    bool gzip_;
    std::string bytes_;
};

}  // namespace curate::testing
