#include "curate/text.hpp"

#include <algorithm>

namespace curate {

char32_t utf8_next(std::string_view s, std::size_t& pos) {
    const unsigned char b0 = static_cast<unsigned char>(s[pos]);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    auto cont = [&](std::size_t i) {
        return i < s.size() && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(pos + 1)) {
        char32_t cp = (b0 & 0x1Fu) << 6 | (static_cast<unsigned char>(s[pos + 1]) & 0x3Fu);
        pos += 2;
        return cp < 0x80 ? 0xFFFD : cp;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(pos + 1) && cont(pos + 2)) {
        char32_t cp = (b0 & 0x0Fu) << 12 |
                      (static_cast<unsigned char>(s[pos + 1]) & 0x3Fu) << 6 |
                      (static_cast<unsigned char>(s[pos + 2]) & 0x3Fu);
        pos += 3;
        return cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF) ? 0xFFFD : cp;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(pos + 1) && cont(pos + 2) && cont(pos + 3)) {
        char32_t cp = (b0 & 0x07u) << 18 |
                      (static_cast<unsigned char>(s[pos + 1]) & 0x3Fu) << 12 |
                      (static_cast<unsigned char>(s[pos + 2]) & 0x3Fu) << 6 |
                      (static_cast<unsigned char>(s[pos + 3]) & 0x3Fu);
        pos += 4;
        return cp < 0x10000 || cp > 0x10FFFF ? 0xFFFD : cp;
    }
    ++pos;
    return 0xFFFD;
}

std::size_t utf8_length(std::string_view s) {
    std::size_t n = 0, pos = 0;
    while (pos < s.size()) {
        utf8_next(s, pos);
        ++n;
    }
    return n;
}

void utf8_append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

bool is_space_cp(char32_t cp) {
    switch (cp) {
        case U' ': case U'\t': case U'\n': case U'\r':
        case U'\f': case U'\v':
        case 0x00A0:  // nbsp
        case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F:
        case 0x3000:  // ideographic space
        case 0xFEFF:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_alpha_cp(char32_t cp) {
    if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
    if (cp < 0x80) return false;
    // Latin-1 letters and Latin extended
    if ((cp >= 0x00C0 && cp <= 0x024F && cp != 0x00D7 && cp != 0x00F7)) return true;
    // Greek, Cyrillic
    if (cp >= 0x0370 && cp <= 0x04FF) return true;
    // Thai letters (excludes digits 0x0E50-0x0E59)
    if (cp >= 0x0E01 && cp <= 0x0E4E) return true;
    // Hangul syllables + jamo
    if (cp >= 0xAC00 && cp <= 0xD7A3) return true;
    if (cp >= 0x1100 && cp <= 0x11FF) return true;
    if (cp >= 0x3130 && cp <= 0x318F) return true;
    // Hiragana / Katakana
    if (cp >= 0x3041 && cp <= 0x309F) return true;
    if (cp >= 0x30A0 && cp <= 0x30FF) return true;
    // Han
    if (cp >= 0x4E00 && cp <= 0x9FFF) return true;
    if (cp >= 0x3400 && cp <= 0x4DBF) return true;
    return false;
}

bool is_cjk_thai_cp(char32_t cp) {
    if (cp >= 0x3041 && cp <= 0x309F) return true;   // Hiragana
    if (cp >= 0x30A0 && cp <= 0x30FF) return true;   // Katakana
    if (cp >= 0x4E00 && cp <= 0x9FFF) return true;   // Han
    if (cp >= 0x3400 && cp <= 0x4DBF) return true;   // Han ext A
    if (cp >= 0x0E01 && cp <= 0x0E5B) return true;   // Thai
    return false;
}

std::string_view trim_view(std::string_view s) {
    // Trim ASCII whitespace plus UTF-8 encoded nbsp/ideographic space.
    auto leading = [&]() -> std::size_t {
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t next = pos;
            char32_t cp = utf8_next(s, next);
            if (!is_space_cp(cp)) break;
            pos = next;
        }
        return pos;
    };
    std::size_t start = leading();
    s.remove_prefix(start);
    while (!s.empty()) {
        // Walk back over one trailing codepoint at a time.
        std::size_t i = s.size();
        while (i > 0 && (static_cast<unsigned char>(s[i - 1]) & 0xC0) == 0x80) --i;
        if (i == 0) break;
        std::size_t pos = i - 1;
        char32_t cp = utf8_next(s, pos);
        if (!is_space_cp(cp) || pos != s.size()) break;
        s.remove_suffix(s.size() - (i - 1));
    }
    return s;
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view seg = end == std::string_view::npos
                                   ? text.substr(start)
                                   : text.substr(start, end - start);
        std::string_view t = trim_view(seg);
        if (!t.empty()) lines.emplace_back(t);
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return lines;
}

namespace {

std::vector<std::string> tokenize_impl(std::string_view text, bool per_char) {
    std::vector<std::string> words;
    std::string current;
    std::size_t pos = 0;
    auto flush = [&]() {
        if (!current.empty()) {
            words.push_back(current);
            current.clear();
        }
    };
    while (pos < text.size()) {
        std::size_t cp_start = pos;
        char32_t cp = utf8_next(text, pos);
        if (is_space_cp(cp)) {
            flush();
            continue;
        }
        if (per_char && is_cjk_thai_cp(cp)) {
            flush();
            words.emplace_back(text.substr(cp_start, pos - cp_start));
            continue;
        }
        current.append(text.substr(cp_start, pos - cp_start));
    }
    flush();
    return words;
}

}  // namespace

std::vector<std::string> tokenize_words(std::string_view text, std::string_view lang) {
    return tokenize_impl(text, lang == "ja" || lang == "th");
}

std::vector<std::string> tokenize_words_script_aware(std::string_view text) {
    return tokenize_impl(text, true);
}

namespace {

bool is_terminal_punct(char32_t cp) {
    return cp == U'.' || cp == U'!' || cp == U'?' ||
           cp == 0x3002 /* 。 */ || cp == 0xFF01 /* ！ */ || cp == 0xFF1F /* ？ */;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text, std::string_view /*lang*/) {
    std::vector<std::string> sentences;
    std::string current;
    std::size_t pos = 0;
    bool pending_break = false;
    auto flush = [&]() {
        std::string_view t = trim_view(current);
        if (!t.empty()) sentences.emplace_back(t);
        current.clear();
        pending_break = false;
    };
    while (pos < text.size()) {
        std::size_t cp_start = pos;
        char32_t cp = utf8_next(text, pos);
        if (pending_break && is_space_cp(cp)) {
            flush();
            continue;
        }
        pending_break = is_terminal_punct(cp);
        current.append(text.substr(cp_start, pos - cp_start));
        // Fullwidth stops are not space-separated in running CJK text.
        if (pending_break && cp >= 0x3000) flush();
    }
    flush();
    return sentences;
}

std::vector<std::string> raw_segments(std::string_view text) {
    std::vector<std::string> segments;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ' ' || text[i] == '\t') {
            if (i > start) segments.emplace_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    return segments;
}

TokenStream TokenStream::from(std::string_view text, std::string_view lang) {
    TokenStream ts;
    ts.words = tokenize_words(text, lang);
    ts.lines = split_lines(text);
    ts.sentences = split_sentences(text, lang);
    return ts;
}

}  // namespace curate
