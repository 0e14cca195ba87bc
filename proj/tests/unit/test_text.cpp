#include <doctest.h>

#include <string>
#include <vector>

#include "curate/text.hpp"

using namespace curate;

TEST_CASE("utf8_next decodes valid sequences") {
    std::string s = "a\xC3\xA9\xE4\xB8\xAD\xF0\x9F\x98\x80";  // a é 中 😀
    std::size_t pos = 0;
    CHECK(utf8_next(s, pos) == U'a');
    CHECK(utf8_next(s, pos) == 0x00E9);
    CHECK(utf8_next(s, pos) == 0x4E2D);
    CHECK(utf8_next(s, pos) == 0x1F600);
    CHECK(pos == s.size());
}

TEST_CASE("utf8_next rejects malformed input one byte at a time") {
    std::string overlong = "\xC0\x80";  // overlong NUL
    std::size_t pos = 0;
    CHECK(utf8_next(overlong, pos) == 0xFFFD);

    std::string surrogate = "\xED\xA0\x80";  // U+D800
    pos = 0;
    CHECK(utf8_next(surrogate, pos) == 0xFFFD);

    std::string stray = "\x80zz";
    pos = 0;
    CHECK(utf8_next(stray, pos) == 0xFFFD);
    CHECK(pos == 1);  // resyncs on the next byte

    std::string truncated = "\xE4\xB8";  // missing final continuation
    pos = 0;
    CHECK(utf8_next(truncated, pos) == 0xFFFD);
}

TEST_CASE("utf8_length counts codepoints") {
    CHECK(utf8_length("") == 0);
    CHECK(utf8_length("abc") == 3);
    CHECK(utf8_length("\xC3\xA9") == 1);
    CHECK(utf8_length("\xE4\xB8\xAD\xE6\x96\x87") == 2);
}

TEST_CASE("utf8_append round-trips through utf8_next") {
    for (char32_t cp : {U'a', char32_t(0x00E9), char32_t(0x4E2D), char32_t(0x1F600),
                        char32_t(0x0E01), char32_t(0xAC00)}) {
        std::string s;
        utf8_append(s, cp);
        std::size_t pos = 0;
        CHECK(utf8_next(s, pos) == cp);
        CHECK(pos == s.size());
    }
}

TEST_CASE("trim_view strips unicode whitespace") {
    CHECK(trim_view("  hi  ") == "hi");
    CHECK(trim_view("\t\r\nhi\n") == "hi");
    CHECK(trim_view("\xC2\xA0hi\xC2\xA0") == "hi");          // nbsp
    CHECK(trim_view("\xE3\x80\x80hi\xE3\x80\x80") == "hi");  // ideographic space
    CHECK(trim_view("") == "");
    CHECK(trim_view("   ") == "");
    CHECK(trim_view("a") == "a");
}

TEST_CASE("split_lines trims and drops empties") {
    auto lines = split_lines("first\n\n  second  \n\t\nthird\n");
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "first");
    CHECK(lines[1] == "second");
    CHECK(lines[2] == "third");

    CHECK(split_lines("").empty());
    CHECK(split_lines("\n\n\n").empty());
    CHECK(split_lines("only").size() == 1);
}

TEST_CASE("tokenize_words splits english on whitespace") {
    auto words = tokenize_words("The quick  brown\tfox\njumps", "en");
    REQUIRE(words.size() == 5);
    CHECK(words[0] == "The");
    CHECK(words[4] == "jumps");
}

TEST_CASE("tokenize_words keeps korean words whole") {
    auto words = tokenize_words("\xEC\x95\x88\xEB\x85\x95 \xEC\x84\xB8\xEC\x83\x81", "ko");
    REQUIRE(words.size() == 2);  // 안녕 / 세상
}

TEST_CASE("tokenize_words splits japanese per character") {
    // 日本語テスト = 6 CJK chars, no spaces.
    auto words = tokenize_words("\xE6\x97\xA5\xE6\x9C\xAC\xE8\xAA\x9E"
                                "\xE3\x83\x86\xE3\x82\xB9\xE3\x83\x88",
                                "ja");
    CHECK(words.size() == 6);
}

TEST_CASE("tokenize_words splits thai per character but latin stays whole") {
    // ไทย (3 thai chars) + space + "abc" stays a single token.
    auto words = tokenize_words("\xE0\xB9\x84\xE0\xB8\x97\xE0\xB8\xA2 abc", "th");
    REQUIRE(words.size() == 4);
    CHECK(words[3] == "abc");
}

TEST_CASE("split_sentences needs terminal punct plus space") {
    auto s = split_sentences("First one. Second one! Third? Trailing bit", "en");
    REQUIRE(s.size() == 4);
    CHECK(s[0] == "First one.");
    CHECK(s[1] == "Second one!");
    CHECK(s[2] == "Third?");
    CHECK(s[3] == "Trailing bit");

    // Decimal points do not split.
    CHECK(split_sentences("pi is 3.14159 exactly", "en").size() == 1);
    CHECK(split_sentences("", "en").empty());
}

TEST_CASE("split_sentences breaks at fullwidth stops without spaces") {
    // 今日は晴れ。明日は雨。
    auto s = split_sentences("\xE4\xBB\x8A\xE6\x97\xA5\xE3\x81\xAF\xE6\x99\xB4\xE3\x82\x8C"
                             "\xE3\x80\x82"
                             "\xE6\x98\x8E\xE6\x97\xA5\xE3\x81\xAF\xE9\x9B\xA8"
                             "\xE3\x80\x82",
                             "ja");
    CHECK(s.size() == 2);
}

TEST_CASE("raw_segments keeps newlines inside segments") {
    auto segs = raw_segments("one two\nthree four");
    REQUIRE(segs.size() == 3);
    CHECK(segs[0] == "one");
    CHECK(segs[1] == "two\nthree");
    CHECK(segs[2] == "four");
}

TEST_CASE("is_alpha_cp covers the pipeline scripts") {
    CHECK(is_alpha_cp(U'q'));
    CHECK(is_alpha_cp(0x00E9));   // é
    CHECK(is_alpha_cp(0xAC00));   // 가
    CHECK(is_alpha_cp(0x3042));   // あ
    CHECK(is_alpha_cp(0x30A2));   // ア
    CHECK(is_alpha_cp(0x4E2D));   // 中
    CHECK(is_alpha_cp(0x0E01));   // ก
    CHECK_FALSE(is_alpha_cp(U'5'));
    CHECK_FALSE(is_alpha_cp(U'%'));
    CHECK_FALSE(is_alpha_cp(0x0E50));  // thai digit zero
    CHECK_FALSE(is_alpha_cp(0x00D7));  // multiplication sign
}

TEST_CASE("ascii_lower leaves non-ascii alone") {
    CHECK(ascii_lower("MiXeD") == "mixed");
    CHECK(ascii_lower("\xC3\x89") == "\xC3\x89");  // É untouched
}
