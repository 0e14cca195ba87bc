#include "curate/warc.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "curate/errors.hpp"
#include "curate/gzip.hpp"
#include "curate/text.hpp"

namespace curate {

namespace {

// Records larger than this are treated as malformed and skipped.
constexpr std::size_t kMaxRecordBytes = 64ull << 20;

std::string lower_ascii(std::string_view s) { return ascii_lower(s); }

// "Name: value" header lines, CRLF or LF terminated, until a blank line.
// Returns byte offset just past the blank line, or npos if incomplete.
std::size_t parse_headers(std::string_view block, std::size_t pos,
                          std::map<std::string, std::string>& out) {
    while (true) {
        std::size_t eol = block.find('\n', pos);
        if (eol == std::string_view::npos) return std::string_view::npos;
        std::string_view line = block.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = eol + 1;
        if (line.empty()) return pos;
        std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) continue;  // tolerated junk
        std::string name = lower_ascii(trim_view(line.substr(0, colon)));
        std::string value(trim_view(line.substr(colon + 1)));
        out[name] = std::move(value);
    }
}

std::string dechunk(std::string_view body) {
    std::string out;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t eol = body.find("\r\n", pos);
        if (eol == std::string_view::npos) break;
        std::string size_line(trim_view(body.substr(pos, eol - pos)));
        std::size_t semi = size_line.find(';');
        if (semi != std::string::npos) size_line.resize(semi);
        char* endp = nullptr;
        unsigned long long n = std::strtoull(size_line.c_str(), &endp, 16);
        if (endp == size_line.c_str()) break;  // not a chunk size; bail out
        if (n == 0) break;
        pos = eol + 2;
        if (pos + n > body.size()) {
            out.append(body.substr(pos));
            break;
        }
        out.append(body.substr(pos, n));
        pos += n + 2;  // chunk data + CRLF
    }
    return out;
}

}  // namespace

struct WarcReader::Impl {
    std::unique_ptr<GzipMemberReader> gz;  // for .gz inputs
    std::string plain;                     // for plain .warc fixtures
    bool plain_loaded = false;
    std::string path;

    std::string buf;
    std::size_t pos = 0;
    bool input_done = false;
    bool desynced = false;

    bool pull_more() {
        if (gz) {
            return gz->next_member(buf);
        }
        if (!plain_loaded) {
            buf += read_file(path);
            plain_loaded = true;
            return true;
        }
        return false;
    }

    void compact() {
        if (pos > (1u << 20) && pos > buf.size() / 2) {
            buf.erase(0, pos);
            pos = 0;
        }
    }
};

WarcReader::WarcReader(const std::string& path) : impl_(new Impl) {
    impl_->path = path;
    if (path.size() >= 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
        impl_->gz = std::make_unique<GzipMemberReader>(path);
    }
}

WarcReader::~WarcReader() = default;

bool WarcReader::next(WarcRecord& record) {
    auto& im = *impl_;
    for (;;) {
        im.compact();
        // Skip inter-record padding.
        while (im.pos < im.buf.size() &&
               (im.buf[im.pos] == '\r' || im.buf[im.pos] == '\n')) {
            ++im.pos;
        }
        std::string_view view(im.buf);
        if (view.size() - im.pos < 8) {
            if (im.input_done) {
                if (view.size() > im.pos) stats_.truncated = true;
                break;
            }
            if (!im.pull_more()) {
                im.input_done = true;
                if (im.gz) {
                    stats_.corrupt_members = im.gz->corrupt_members();
                    if (im.gz->truncated()) stats_.truncated = true;
                }
            }
            continue;
        }
        if (view.compare(im.pos, 5, "WARC/") != 0) {
            // Desynced: hunt for the next record marker. Count the event
            // once, however many refills the hunt takes.
            if (!im.desynced) {
                ++stats_.malformed_records;
                im.desynced = true;
            }
            std::size_t next = view.find("WARC/1.", im.pos);
            if (next == std::string_view::npos) {
                if (im.input_done) break;
                // Keep a short tail: the marker may straddle the refill.
                std::size_t keep = std::min<std::size_t>(view.size() - im.pos, 7);
                im.buf.erase(0, view.size() - keep);
                im.pos = 0;
                continue;
            }
            im.pos = next;
        }
        im.desynced = false;
        std::size_t version_eol = view.find('\n', im.pos);
        if (version_eol == std::string_view::npos) {
            if (im.input_done) {
                stats_.truncated = true;
                break;
            }
            if (!im.pull_more()) im.input_done = true;
            continue;
        }
        std::map<std::string, std::string> headers;
        std::size_t body_start = parse_headers(view, version_eol + 1, headers);
        if (body_start == std::string_view::npos) {
            if (im.input_done) {
                stats_.truncated = true;
                break;
            }
            if (!im.pull_more()) im.input_done = true;
            continue;
        }
        auto it = headers.find("content-length");
        if (it == headers.end()) {
            ++stats_.malformed_records;
            im.pos = body_start;
            continue;
        }
        char* endp = nullptr;
        unsigned long long content_length = std::strtoull(it->second.c_str(), &endp, 10);
        if (endp == it->second.c_str() || content_length > kMaxRecordBytes) {
            ++stats_.malformed_records;
            im.pos = body_start;
            continue;
        }
        if (body_start + content_length > view.size()) {
            if (im.input_done) {
                stats_.truncated = true;
                break;
            }
            if (!im.pull_more()) im.input_done = true;
            continue;
        }
        std::string_view body = view.substr(body_start, content_length);
        im.pos = body_start + content_length;
        ++stats_.records_seen;

        std::string record_type = lower_ascii(headers["warc-type"]);
        if (record_type != "response") continue;

        record = WarcRecord{};
        record.record_type = record_type;
        record.record_index = stats_.records_seen - 1;
        record.target_uri = headers["warc-target-uri"];
        // Some writers wrap the URI in angle brackets.
        if (record.target_uri.size() >= 2 && record.target_uri.front() == '<' &&
            record.target_uri.back() == '>') {
            record.target_uri = record.target_uri.substr(1, record.target_uri.size() - 2);
        }

        if (body.rfind("HTTP/", 0) == 0) {
            std::size_t status_eol = body.find('\n');
            if (status_eol == std::string_view::npos) {
                ++stats_.malformed_records;
                continue;
            }
            std::string_view status_line = body.substr(0, status_eol);
            std::size_t sp = status_line.find(' ');
            if (sp != std::string_view::npos) {
                record.http_status = std::atoi(std::string(status_line.substr(sp + 1)).c_str());
            }
            std::map<std::string, std::string> http_headers;
            std::size_t http_body = parse_headers(body, status_eol + 1, http_headers);
            if (http_body == std::string_view::npos) {
                record.payload.clear();
            } else {
                std::string_view payload = body.substr(http_body);
                if (lower_ascii(http_headers["transfer-encoding"]).find("chunked") !=
                    std::string::npos) {
                    record.payload = dechunk(payload);
                } else {
                    record.payload = std::string(payload);
                    auto cl = http_headers.find("content-length");
                    if (cl != http_headers.end()) {
                        char* e2 = nullptr;
                        unsigned long long n = std::strtoull(cl->second.c_str(), &e2, 10);
                        if (e2 != cl->second.c_str() && n < record.payload.size()) {
                            record.payload.resize(n);
                        }
                    }
                }
            }
            record.content_type = http_headers["content-type"];
        } else {
            // Non-HTTP record body (resource records etc).
            record.payload = std::string(body);
            record.content_type = headers["content-type"];
        }
        ++stats_.responses;
        if (im.gz) stats_.corrupt_members = im.gz->corrupt_members();
        return true;
    }
    if (im.gz) {
        stats_.corrupt_members = im.gz->corrupt_members();
        if (im.gz->truncated()) stats_.truncated = true;
    }
    return false;
}

}  // namespace curate
