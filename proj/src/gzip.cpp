#include "curate/gzip.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "curate/errors.hpp"

namespace curate {

namespace {

constexpr std::size_t kBufSize = 1 << 16;

bool has_gz_suffix(const std::string& path) {
    return path.size() >= 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

std::string temp_path_for(const std::string& path) {
    return path + ".tmp";
}

}  // namespace

// --- OutputFile ----------------------------------------------------------

struct OutputFile::Impl {
    std::string final_path;
    std::string tmp_path;
    std::FILE* fp = nullptr;
    bool gzip = false;
    bool closed = false;
    z_stream strm{};
    gz_header header{};
    std::vector<unsigned char> out_buf;

    void write_raw(const unsigned char* data, std::size_t n) {
        if (n && std::fwrite(data, 1, n, fp) != n) {
            throw Error("io_error", "write failed: " + tmp_path);
        }
    }

    void deflate_chunk(const char* data, std::size_t n, int flush) {
        strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data));
        strm.avail_in = static_cast<uInt>(n);
        do {
            strm.next_out = out_buf.data();
            strm.avail_out = static_cast<uInt>(out_buf.size());
            int rc = deflate(&strm, flush);
            if (rc == Z_STREAM_ERROR) {
                throw Error("io_error", "deflate failed: " + tmp_path);
            }
            write_raw(out_buf.data(), out_buf.size() - strm.avail_out);
            if (flush == Z_FINISH && rc == Z_STREAM_END) break;
        } while (strm.avail_in > 0 || (flush == Z_FINISH));
    }
};

OutputFile::OutputFile(const std::string& path) : impl_(new Impl) {
    impl_->final_path = path;
    impl_->tmp_path = temp_path_for(path);
    impl_->gzip = has_gz_suffix(path);
    std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    impl_->fp = std::fopen(impl_->tmp_path.c_str(), "wb");
    if (!impl_->fp) throw Error("io_error", "cannot open for write: " + impl_->tmp_path);
    if (impl_->gzip) {
        impl_->out_buf.resize(kBufSize);
        // windowBits 15+16 = gzip wrapper; header pinned for determinism.
        if (deflateInit2(&impl_->strm, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
                         Z_DEFAULT_STRATEGY) != Z_OK) {
            throw Error("io_error", "deflateInit2 failed");
        }
        impl_->header.time = 0;
        impl_->header.os = 3;  // unix
        deflateSetHeader(&impl_->strm, &impl_->header);
    }
}

OutputFile::~OutputFile() {
    if (!impl_) return;
    if (!impl_->closed) {
        // Abandoned writer: drop the temp file, never the final path.
        if (impl_->gzip) deflateEnd(&impl_->strm);
        if (impl_->fp) std::fclose(impl_->fp);
        std::remove(impl_->tmp_path.c_str());
    }
}

void OutputFile::write(std::string_view data) {
    if (data.empty()) return;
    if (impl_->gzip) {
        impl_->deflate_chunk(data.data(), data.size(), Z_NO_FLUSH);
    } else {
        impl_->write_raw(reinterpret_cast<const unsigned char*>(data.data()), data.size());
    }
}

void OutputFile::close() {
    if (impl_->closed) return;
    if (impl_->gzip) {
        impl_->deflate_chunk(nullptr, 0, Z_FINISH);
        deflateEnd(&impl_->strm);
    }
    if (std::fclose(impl_->fp) != 0) {
        throw Error("io_error", "close failed: " + impl_->tmp_path);
    }
    impl_->fp = nullptr;
    std::error_code ec;
    std::filesystem::rename(impl_->tmp_path, impl_->final_path, ec);
    if (ec) throw Error("io_error", "rename failed: " + impl_->final_path);
    impl_->closed = true;
}

// --- InputFile -----------------------------------------------------------

struct InputFile::Impl {
    std::string path;
    std::FILE* fp = nullptr;
    bool gzip = false;
    bool eof = false;
    z_stream strm{};
    bool strm_live = false;
    std::vector<unsigned char> in_buf;
    std::string pending;  // decoded bytes not yet handed out
    std::size_t pending_pos = 0;

    bool fill_input() {
        if (strm.avail_in > 0) return true;
        std::size_t n = std::fread(in_buf.data(), 1, in_buf.size(), fp);
        strm.next_in = in_buf.data();
        strm.avail_in = static_cast<uInt>(n);
        return n > 0;
    }
};

InputFile::InputFile(const std::string& path) : impl_(new Impl) {
    impl_->path = path;
    impl_->fp = std::fopen(path.c_str(), "rb");
    if (!impl_->fp) throw Error("io_error", "cannot open: " + path);
    impl_->gzip = has_gz_suffix(path);
    if (impl_->gzip) {
        impl_->in_buf.resize(kBufSize);
        if (inflateInit2(&impl_->strm, 15 + 32) != Z_OK) {
            throw Error("io_error", "inflateInit2 failed");
        }
        impl_->strm_live = true;
    }
}

InputFile::~InputFile() {
    if (!impl_) return;
    if (impl_->strm_live) inflateEnd(&impl_->strm);
    if (impl_->fp) std::fclose(impl_->fp);
}

std::size_t InputFile::read(char* out, std::size_t capacity) {
    if (!impl_->gzip) {
        return std::fread(out, 1, capacity, impl_->fp);
    }
    if (impl_->eof) return 0;
    z_stream& strm = impl_->strm;
    std::size_t produced = 0;
    while (produced < capacity) {
        if (!impl_->fill_input()) {
            if (produced == 0 && strm.avail_in == 0) impl_->eof = true;
            break;
        }
        strm.next_out = reinterpret_cast<Bytef*>(out + produced);
        strm.avail_out = static_cast<uInt>(capacity - produced);
        int rc = inflate(&strm, Z_NO_FLUSH);
        produced = capacity - strm.avail_out;
        if (rc == Z_STREAM_END) {
            // Multistream: reset for the next member, if any bytes remain.
            if (strm.avail_in == 0 && std::feof(impl_->fp)) {
                impl_->eof = true;
                break;
            }
            inflateReset(&strm);
            continue;
        }
        if (rc != Z_OK && rc != Z_BUF_ERROR) {
            throw Error("io_error", "corrupt gzip stream: " + impl_->path);
        }
    }
    return produced;
}

bool InputFile::read_line(std::string& line) {
    line.clear();
    auto& pending = impl_->pending;
    auto& pos = impl_->pending_pos;
    for (;;) {
        std::size_t nl = pending.find('\n', pos);
        if (nl != std::string::npos) {
            line.append(pending, pos, nl - pos + 1);
            pos = nl + 1;
            if (pos == pending.size()) {
                pending.clear();
                pos = 0;
            }
            return true;
        }
        line.append(pending, pos, pending.size() - pos);
        pending.clear();
        pos = 0;
        char buf[kBufSize];
        std::size_t n = read(buf, sizeof(buf));
        if (n == 0) return !line.empty();
        pending.assign(buf, n);
    }
}

// --- GzipMemberReader ----------------------------------------------------

struct GzipMemberReader::Impl {
    std::string path;
    std::FILE* fp = nullptr;
    std::vector<unsigned char> in_buf;
    std::size_t in_len = 0;
    std::size_t in_pos = 0;
    bool file_eof = false;

    bool refill_tail() {
        // Keeps unconsumed bytes, reads more after them.
        if (in_pos > 0) {
            std::memmove(in_buf.data(), in_buf.data() + in_pos, in_len - in_pos);
            in_len -= in_pos;
            in_pos = 0;
        }
        if (file_eof || in_len == in_buf.size()) return in_len > in_pos;
        std::size_t n = std::fread(in_buf.data() + in_len, 1, in_buf.size() - in_len, fp);
        if (n == 0) file_eof = true;
        in_len += n;
        return in_len > in_pos;
    }
};

GzipMemberReader::GzipMemberReader(const std::string& path) : impl_(new Impl) {
    impl_->path = path;
    impl_->fp = std::fopen(path.c_str(), "rb");
    if (!impl_->fp) throw Error("io_error", "cannot open: " + path);
    impl_->in_buf.resize(kBufSize);
}

GzipMemberReader::~GzipMemberReader() {
    if (impl_ && impl_->fp) std::fclose(impl_->fp);
}

bool GzipMemberReader::scan_to_magic() {
    // Positions in_pos at the next 1f 8b 08 triple, refilling as needed.
    for (;;) {
        if (!impl_->refill_tail()) return false;
        const auto* buf = impl_->in_buf.data();
        for (std::size_t i = impl_->in_pos; i + 2 < impl_->in_len; ++i) {
            if (buf[i] == 0x1f && buf[i + 1] == 0x8b && buf[i + 2] == 0x08) {
                impl_->in_pos = i;
                return true;
            }
        }
        // Keep last two bytes in case the magic straddles the boundary.
        impl_->in_pos = impl_->in_len >= 2 ? impl_->in_len - 2 : impl_->in_len;
        if (impl_->file_eof) return false;
    }
}

bool GzipMemberReader::next_member(std::string& out) {
    for (;;) {
        if (!scan_to_magic()) return false;
        z_stream strm{};
        if (inflateInit2(&strm, 15 + 16) != Z_OK) {
            throw Error("io_error", "inflateInit2 failed");
        }
        const std::size_t out_start = out.size();
        bool restart = false;
        char chunk[kBufSize];
        int rc = Z_OK;
        for (;;) {
            if (impl_->in_pos >= impl_->in_len && !impl_->refill_tail()) {
                // Truncated final member.
                inflateEnd(&strm);
                out.resize(out_start);
                truncated_ = true;
                return false;
            }
            strm.next_in = impl_->in_buf.data() + impl_->in_pos;
            strm.avail_in = static_cast<uInt>(impl_->in_len - impl_->in_pos);
            strm.next_out = reinterpret_cast<Bytef*>(chunk);
            strm.avail_out = sizeof(chunk);
            rc = inflate(&strm, Z_NO_FLUSH);
            impl_->in_pos = impl_->in_len - strm.avail_in;
            if (rc == Z_OK || rc == Z_BUF_ERROR || rc == Z_STREAM_END) {
                out.append(chunk, sizeof(chunk) - strm.avail_out);
            }
            if (rc == Z_STREAM_END) {
                inflateEnd(&strm);
                return true;
            }
            if (rc != Z_OK && rc != Z_BUF_ERROR) {
                // Corrupt member: drop its output and resume the magic scan
                // after this member's own magic so it is not refound.
                if (strm.total_in < 3) {
                    std::size_t skip = 3 - static_cast<std::size_t>(strm.total_in);
                    impl_->in_pos = std::min(impl_->in_pos + skip, impl_->in_len);
                }
                inflateEnd(&strm);
                out.resize(out_start);
                ++corrupt_members_;
                restart = true;
                break;
            }
        }
        if (restart) continue;
    }
}

// --- helpers -------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io_error", "cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
    OutputFile out(path);
    out.write(content);
    out.close();
}

}  // namespace curate
