#include <doctest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "curate/gzip.hpp"
#include "support/temp_dir.hpp"
#include "support/warc_writer.hpp"

using namespace curate;
using curate::testing::TempDir;
using curate::testing::gzip_compress;

TEST_CASE("OutputFile/InputFile round-trip gzip content") {
    TempDir dir;
    std::string path = dir.file("roundtrip.txt.gz");
    {
        OutputFile out(path);
        out.write("line one\n");
        out.write("line two\n");
        out.close();
    }
    InputFile in(path);
    std::string line;
    REQUIRE(in.read_line(line));
    CHECK(line == "line one\n");
    REQUIRE(in.read_line(line));
    CHECK(line == "line two\n");
    CHECK_FALSE(in.read_line(line));
}

TEST_CASE("plain files skip the gzip wrapper") {
    TempDir dir;
    std::string path = dir.file("plain.txt");
    write_file_atomic(path, "hello\nworld");
    CHECK(read_file(path) == "hello\nworld");

    InputFile in(path);
    std::string line;
    REQUIRE(in.read_line(line));
    CHECK(line == "hello\n");
    REQUIRE(in.read_line(line));
    CHECK(line == "world");  // last line has no newline
    CHECK_FALSE(in.read_line(line));
}

TEST_CASE("gzip output is byte-identical across runs") {
    TempDir dir;
    std::string a = dir.file("a.gz");
    std::string b = dir.file("b.gz");
    const std::string payload = "deterministic payload with some length to compress\n";
    {
        OutputFile out(a);
        for (int i = 0; i < 100; ++i) out.write(payload);
        out.close();
    }
    {
        OutputFile out(b);
        for (int i = 0; i < 100; ++i) out.write(payload);
        out.close();
    }
    CHECK(read_file(a) == read_file(b));
}

TEST_CASE("unclosed OutputFile leaves no final file behind") {
    TempDir dir;
    std::string path = dir.file("abandoned.gz");
    {
        OutputFile out(path);
        out.write("never flushed");
    }
    CHECK_FALSE(std::filesystem::exists(path));
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
}

TEST_CASE("InputFile concatenates multistream members") {
    TempDir dir;
    std::string path = dir.file("multi.gz");
    std::string bytes = gzip_compress("first member\n") + gzip_compress("second member\n");
    {
        std::FILE* fp = std::fopen(path.c_str(), "wb");
        REQUIRE(fp);
        std::fwrite(bytes.data(), 1, bytes.size(), fp);
        std::fclose(fp);
    }
    InputFile in(path);
    std::string line;
    REQUIRE(in.read_line(line));
    CHECK(line == "first member\n");
    REQUIRE(in.read_line(line));
    CHECK(line == "second member\n");
    CHECK_FALSE(in.read_line(line));
}

TEST_CASE("GzipMemberReader walks members one at a time") {
    TempDir dir;
    std::string path = dir.file("members.gz");
    std::string bytes = gzip_compress("alpha") + gzip_compress("beta") + gzip_compress("gamma");
    write_file_atomic(path + ".raw", bytes);  // plain write; .raw avoids the gz suffix
    std::filesystem::rename(path + ".raw", path);

    GzipMemberReader reader(path);
    std::string out;
    REQUIRE(reader.next_member(out));
    CHECK(out == "alpha");
    out.clear();
    REQUIRE(reader.next_member(out));
    CHECK(out == "beta");
    out.clear();
    REQUIRE(reader.next_member(out));
    CHECK(out == "gamma");
    CHECK_FALSE(reader.next_member(out));
    CHECK(reader.corrupt_members() == 0);
    CHECK_FALSE(reader.truncated());
}

TEST_CASE("GzipMemberReader skips a corrupt member and recovers") {
    TempDir dir;
    std::string path = dir.file("damaged.gz");
    std::string bytes = gzip_compress("good one");
    {
        curate::testing::WarcWriter scratch(true);
        scratch.add_corrupt_member();
        bytes += scratch.bytes();
    }
    bytes += gzip_compress("good two");
    write_file_atomic(path + ".raw", bytes);
    std::filesystem::rename(path + ".raw", path);

    GzipMemberReader reader(path);
    std::string out;
    std::vector<std::string> members;
    while (reader.next_member(out)) {
        members.push_back(out);
        out.clear();
    }
    REQUIRE(members.size() == 2);
    CHECK(members[0] == "good one");
    CHECK(members[1] == "good two");
    CHECK(reader.corrupt_members() >= 1);
}

TEST_CASE("GzipMemberReader flags a truncated tail") {
    TempDir dir;
    std::string path = dir.file("truncated.gz");
    std::string full = gzip_compress("complete") +
                       gzip_compress("this member gets cut off before its end marker");
    std::string cut = full.substr(0, full.size() - 6);
    write_file_atomic(path + ".raw", cut);
    std::filesystem::rename(path + ".raw", path);

    GzipMemberReader reader(path);
    std::string out;
    REQUIRE(reader.next_member(out));
    CHECK(out == "complete");
    out.clear();
    CHECK_FALSE(reader.next_member(out));
    CHECK(reader.truncated());
}
