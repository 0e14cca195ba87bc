#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace curate {

// --- minimal UTF-8 helpers ---------------------------------------------

// Decodes the codepoint starting at byte offset `pos`, advancing `pos`.
// Invalid sequences decode as U+FFFD and advance one byte.
char32_t utf8_next(std::string_view s, std::size_t& pos);

// Number of codepoints (invalid bytes count as one replacement each).
std::size_t utf8_length(std::string_view s);

void utf8_append(std::string& out, char32_t cp);

// ASCII-only lowercasing; non-ASCII bytes pass through untouched.
std::string ascii_lower(std::string_view s);

bool is_space_cp(char32_t cp);
bool is_alpha_cp(char32_t cp);   // Latin, Hangul, Kana, Han, Thai letters
bool is_cjk_thai_cp(char32_t cp);  // Han / Hiragana / Katakana / Thai

// --- text units shared by every stage -----------------------------------

// Newline-separated segments, whitespace-trimmed, empties dropped.
// This single definition of a "line" feeds dedup and all line metrics.
std::vector<std::string> split_lines(std::string_view text);

// Whitespace tokenization; for no-space scripts (ja, th) each Han/Kana/Thai
// character additionally becomes its own token.
std::vector<std::string> tokenize_words(std::string_view text, std::string_view lang);

// Like tokenize_words but the per-character CJK/Thai split is always on,
// so the result depends on the text alone. Feeds hashed word features.
std::vector<std::string> tokenize_words_script_aware(std::string_view text);

// Splits on terminal punctuation (. ! ? and fullwidth forms) followed by
// whitespace or end of text. A chunk with no terminal punctuation is one
// sentence. Known to over-split abbreviations ("e.g."); accepted.
std::vector<std::string> split_sentences(std::string_view text, std::string_view lang);

struct TokenStream {
    std::vector<std::string> words;
    std::vector<std::string> lines;
    std::vector<std::string> sentences;

    static TokenStream from(std::string_view text, std::string_view lang);
};

// Maximal runs of non-space/non-tab characters in the raw text. Unlike
// tokenize_words this keeps newlines inside segments, which is what the
// words-with-newline metric needs.
std::vector<std::string> raw_segments(std::string_view text);

// Trims ASCII + common Unicode whitespace from both ends.
std::string_view trim_view(std::string_view s);

}  // namespace curate
