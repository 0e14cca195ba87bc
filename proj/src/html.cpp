#include "curate/html.hpp"

#include <array>
#include <cctype>
#include <cstdlib>
#include <unordered_map>
#include <unordered_set>

#include "curate/text.hpp"

namespace curate {

namespace {

const std::unordered_set<std::string>& skipped_subtrees() {
    static const std::unordered_set<std::string> s = {
        "script", "style", "noscript", "nav", "header", "footer", "aside",
        "form", "head", "template", "iframe", "svg", "select", "button",
    };
    return s;
}

// Content of these is raw text; only the matching close tag ends it.
const std::unordered_set<std::string>& raw_text_elements() {
    static const std::unordered_set<std::string> s = {"script", "style", "textarea",
                                                      "title"};
    return s;
}

const std::unordered_set<std::string>& block_elements() {
    static const std::unordered_set<std::string> s = {
        "p", "div", "br", "li", "ul", "ol", "dl", "dt", "dd", "h1", "h2", "h3",
        "h4", "h5", "h6", "table", "thead", "tbody", "tr", "td", "th", "article",
        "section", "blockquote", "pre", "hr", "figure", "figcaption", "main",
        "details", "summary", "address", "fieldset", "legend", "center", "caption",
    };
    return s;
}

const std::unordered_map<std::string, char32_t>& named_entities() {
    static const std::unordered_map<std::string, char32_t> m = {
        {"amp", U'&'},    {"lt", U'<'},      {"gt", U'>'},      {"quot", U'"'},
        {"apos", U'\''},  {"nbsp", U' '},    {"copy", 0x00A9},  {"reg", 0x00AE},
        {"trade", 0x2122},{"mdash", 0x2014}, {"ndash", 0x2013}, {"hellip", 0x2026},
        {"lsquo", 0x2018},{"rsquo", 0x2019}, {"ldquo", 0x201C}, {"rdquo", 0x201D},
        {"middot", 0x00B7},{"bull", 0x2022}, {"laquo", 0x00AB}, {"raquo", 0x00BB},
        {"deg", 0x00B0},  {"times", 0x00D7}, {"divide", 0x00F7},{"sect", 0x00A7},
        {"para", 0x00B6}, {"euro", 0x20AC},  {"pound", 0x00A3}, {"yen", 0x00A5},
        {"cent", 0x00A2}, {"shy", 0},        {"zwnj", 0},       {"zwj", 0},
    };
    return m;
}

// cp1252's 0x80-0x9F block; 0 marks unassigned bytes.
constexpr std::array<char32_t, 32> kCp1252High = {
    0x20AC, 0,      0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
    0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0,      0x017D, 0,
    0,      0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0,      0x017E, 0x0178,
};

std::string normalize_charset_name(std::string_view name) {
    std::string out;
    for (char c : name) {
        if (c == '-' || c == '_' || c == ' ') continue;
        out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    }
    return out;
}

std::string decode_utf8_lenient(std::string_view bytes) {
    std::string out;
    out.reserve(bytes.size());
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        std::size_t start = pos;
        char32_t cp = utf8_next(bytes, pos);
        if (cp == 0xFFFD) {
            utf8_append(out, 0xFFFD);
        } else {
            out.append(bytes.substr(start, pos - start));
        }
    }
    return out;
}

std::string decode_single_byte(std::string_view bytes, bool cp1252) {
    std::string out;
    out.reserve(bytes.size() + bytes.size() / 4);
    for (char c : bytes) {
        unsigned char b = static_cast<unsigned char>(c);
        if (b < 0x80) {
            out.push_back(c);
        } else if (cp1252 && b < 0xA0) {
            char32_t cp = kCp1252High[b - 0x80];
            if (cp) utf8_append(out, cp);
        } else {
            utf8_append(out, b);
        }
    }
    return out;
}

struct TagToken {
    std::string name;
    bool closing = false;
    std::size_t end = 0;  // offset just past '>'
};

// Parses a tag starting at '<'. Attribute values may contain '>'.
bool parse_tag(std::string_view html, std::size_t pos, TagToken& tag) {
    std::size_t i = pos + 1;
    if (i >= html.size()) return false;
    if (html[i] == '/') {
        tag.closing = true;
        ++i;
    } else {
        tag.closing = false;
    }
    tag.name.clear();
    while (i < html.size()) {
        char c = html[i];
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            tag.name.push_back(c);
        } else if (c >= 'A' && c <= 'Z') {
            tag.name.push_back(static_cast<char>(c - 'A' + 'a'));
        } else {
            break;
        }
        ++i;
    }
    if (tag.name.empty()) return false;
    char quote = 0;
    while (i < html.size()) {
        char c = html[i];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '>') {
            tag.end = i + 1;
            return true;
        }
        ++i;
    }
    return false;  // unterminated tag
}

// Case-insensitive search; needle must already be lowercase.
std::size_t find_ci(std::string_view hay, std::string_view needle, std::size_t from) {
    if (needle.empty() || hay.size() < needle.size()) return std::string_view::npos;
    for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
        std::size_t j = 0;
        for (; j < needle.size(); ++j) {
            char c = hay[i + j];
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            if (c != needle[j]) break;
        }
        if (j == needle.size()) return i;
    }
    return std::string_view::npos;
}

// Decodes the entity at `pos` (which points at '&'); advances pos past it.
// Unknown entities are kept verbatim.
void append_entity(std::string_view html, std::size_t& pos, std::string& out) {
    std::size_t semi = html.find(';', pos + 1);
    if (semi == std::string_view::npos || semi - pos > 12) {
        out.push_back('&');
        ++pos;
        return;
    }
    std::string_view body = html.substr(pos + 1, semi - pos - 1);
    if (!body.empty() && body[0] == '#') {
        char32_t cp = 0;
        if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
            cp = static_cast<char32_t>(
                std::strtoul(std::string(body.substr(2)).c_str(), nullptr, 16));
        } else if (body.size() > 1) {
            cp = static_cast<char32_t>(
                std::strtoul(std::string(body.substr(1)).c_str(), nullptr, 10));
        }
        if (cp >= 0x20 && cp <= 0x10FFFF) utf8_append(out, cp);
        pos = semi + 1;
        return;
    }
    auto it = named_entities().find(std::string(body));
    if (it != named_entities().end()) {
        if (it->second) utf8_append(out, it->second);
        pos = semi + 1;
        return;
    }
    out.push_back('&');
    ++pos;
}

}  // namespace

std::string sniff_meta_charset(std::string_view html_prefix) {
    std::string lowered = ascii_lower(html_prefix.substr(0, 4096));
    std::size_t pos = lowered.find("charset");
    if (pos == std::string::npos) return "";
    pos += 7;
    while (pos < lowered.size() &&
           (lowered[pos] == '=' || lowered[pos] == ' ' || lowered[pos] == '"' ||
            lowered[pos] == '\'')) {
        ++pos;
    }
    std::size_t end = pos;
    while (end < lowered.size() &&
           (std::isalnum(static_cast<unsigned char>(lowered[end])) ||
            lowered[end] == '-' || lowered[end] == '_')) {
        ++end;
    }
    return lowered.substr(pos, end - pos);
}

std::string decode_to_utf8(std::string_view bytes, std::string_view charset_name) {
    std::string name = normalize_charset_name(charset_name);
    if (name == "iso88591" || name == "latin1") {
        return decode_single_byte(bytes, /*cp1252=*/false);
    }
    if (name == "windows1252" || name == "cp1252") {
        return decode_single_byte(bytes, /*cp1252=*/true);
    }
    // utf-8, ascii and everything unrecognized: lenient UTF-8.
    return decode_utf8_lenient(bytes);
}

ExtractedText extract_text(std::string_view html_bytes, std::string_view declared_charset) {
    ExtractedText result;
    if (html_bytes.empty()) {
        result.reason = "empty_input";
        return result;
    }
    std::string charset(declared_charset);
    if (charset.empty()) charset = sniff_meta_charset(html_bytes);
    std::string html = decode_to_utf8(html_bytes, charset);
    if (html.empty()) {
        result.reason = "undecodable";
        return result;
    }

    std::string out;
    out.reserve(html.size() / 4);
    std::unordered_map<std::string, int> skip_depth;
    int skipping = 0;
    bool last_space = true;

    auto emit_newline = [&]() {
        if (!out.empty() && out.back() != '\n') {
            out.push_back('\n');
            last_space = true;
        }
    };
    auto emit_space = [&]() {
        if (!last_space) {
            out.push_back(' ');
            last_space = true;
        }
    };

    std::size_t pos = 0;
    const std::size_t n = html.size();
    while (pos < n) {
        char c = html[pos];
        if (c == '<') {
            if (html.compare(pos, 4, "<!--") == 0) {
                std::size_t close = html.find("-->", pos + 4);
                pos = close == std::string::npos ? n : close + 3;
                continue;
            }
            if (pos + 1 < n && (html[pos + 1] == '!' || html[pos + 1] == '?')) {
                std::size_t close = html.find('>', pos + 1);
                pos = close == std::string::npos ? n : close + 1;
                continue;
            }
            TagToken tag;
            if (!parse_tag(html, pos, tag)) {
                // Stray '<': treat as text.
                if (!skipping) {
                    out.push_back('<');
                    last_space = false;
                }
                ++pos;
                continue;
            }
            pos = tag.end;
            const bool is_block = block_elements().count(tag.name) > 0;
            if (!tag.closing && raw_text_elements().count(tag.name)) {
                // Raw content: ends only at the matching close tag.
                std::string close = "</" + tag.name;
                std::size_t close_pos = find_ci(html, close, pos);
                if (close_pos == std::string_view::npos) {
                    pos = n;
                } else {
                    std::size_t gt = html.find('>', close_pos);
                    pos = gt == std::string::npos ? n : gt + 1;
                }
                if (is_block && !skipping) emit_newline();
                continue;
            }
            if (skipped_subtrees().count(tag.name)) {
                int& depth = skip_depth[tag.name];
                if (tag.closing) {
                    if (depth > 0) {
                        --depth;
                        --skipping;
                    }
                } else {
                    ++depth;
                    ++skipping;
                }
                if (!skipping && is_block) emit_newline();
                continue;
            }
            if (is_block && !skipping) emit_newline();
            continue;
        }
        if (skipping) {
            ++pos;
            continue;
        }
        if (c == '&') {
            std::string decoded;
            append_entity(html, pos, decoded);
            for (char d : decoded) {
                unsigned char u = static_cast<unsigned char>(d);
                if (u < 0x20 || u == 0x7F) {
                    emit_space();
                } else if (d == ' ') {
                    emit_space();
                } else {
                    out.push_back(d);
                    last_space = false;
                }
            }
            continue;
        }
        unsigned char u = static_cast<unsigned char>(c);
        if (u < 0x20 || u == 0x7F || c == ' ') {
            emit_space();
        } else {
            out.push_back(c);
            last_space = false;
        }
        ++pos;
    }

    // Normalize through the shared line unit definition.
    std::vector<std::string> lines = split_lines(out);
    std::string text;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) text.push_back('\n');
        text.append(lines[i]);
    }
    result.text = std::move(text);
    if (result.text.empty()) result.reason = "no_text";
    return result;
}

}  // namespace curate
