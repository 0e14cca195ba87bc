#include "curate/heuristics.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <unordered_map>

#include "curate/errors.hpp"
#include "curate/text.hpp"

namespace curate {

namespace {

std::set<std::string> read_word_list(const std::filesystem::path& path) {
    std::set<std::string> out;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        std::string_view t = trim_view(line);
        if (t.empty() || t.front() == '#') continue;
        out.insert(ascii_lower(t));
    }
    return out;
}

// Lowercase and strip non-alphanumeric codepoints from both edges, so
// "The," matches a stop list entry "the".
std::string normalize_token(std::string_view token) {
    std::vector<std::pair<std::size_t, std::size_t>> spans;  // byte ranges per cp
    std::vector<bool> word_char;
    std::size_t pos = 0;
    while (pos < token.size()) {
        const std::size_t start = pos;
        const char32_t cp = utf8_next(token, pos);
        spans.emplace_back(start, pos);
        word_char.push_back(is_alpha_cp(cp) || (cp >= U'0' && cp <= U'9'));
    }
    std::size_t first = 0;
    while (first < spans.size() && !word_char[first]) ++first;
    std::size_t last = spans.size();
    while (last > first && !word_char[last - 1]) --last;
    if (first >= last) return {};
    return ascii_lower(token.substr(spans[first].first,
                                    spans[last - 1].second - spans[first].first));
}

bool is_bullet_cp(char32_t cp) {
    switch (cp) {
        case 0x2022:  // •
        case 0x2023:  // ‣
        case 0x25AA:  // ▪
        case 0x25E6:  // ◦
        case U'-':
        case U'*':
        case 0x00B7:  // ·
            return true;
        default:
            return false;
    }
}

bool is_terminal_punct_cp(char32_t cp) {
    switch (cp) {
        case U'.': case U'!': case U'?': case U'"': case U'\'':
        case 0x201D:  // ”
        case 0x3002:  // 。
        case 0xFF01:  // ！
        case 0xFF1F:  // ？
            return true;
        default:
            return false;
    }
}

char32_t first_cp(std::string_view s) {
    std::size_t pos = 0;
    return utf8_next(s, pos);
}

char32_t last_cp(std::string_view s) {
    std::size_t i = s.size();
    while (i > 0 && (static_cast<unsigned char>(s[i - 1]) & 0xC0) == 0x80) --i;
    if (i == 0) return 0xFFFD;
    std::size_t pos = i - 1;
    return utf8_next(s, pos);
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::size_t count_substring(std::string_view hay, std::string_view needle) {
    std::size_t n = 0;
    std::size_t pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string_view::npos) {
        ++n;
        pos += needle.size();  // non-overlapping
    }
    return n;
}

bool contains_ci(std::string_view hay, std::string_view needle_lower) {
    if (needle_lower.empty()) return false;
    if (hay.size() < needle_lower.size()) return false;
    for (std::size_t i = 0; i + needle_lower.size() <= hay.size(); ++i) {
        std::size_t j = 0;
        while (j < needle_lower.size()) {
            char c = hay[i + j];
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            if (c != needle_lower[j]) break;
            ++j;
        }
        if (j == needle_lower.size()) return true;
    }
    return false;
}

// Chars covered by the single most frequent word n-gram, times its count.
// Char length of an n-gram is the sum of its words' codepoint lengths
// (whitespace not included); the fraction is clamped to 1 because
// overlapping occurrences can over-count.
double top_ngram_fraction(const std::vector<std::string>& words,
                          const std::vector<std::size_t>& word_chars,
                          std::size_t n, double doc_chars) {
    if (words.size() < n || doc_chars <= 0) return 0.0;
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> counts;
    std::string key;
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
        key.clear();
        std::size_t chars = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k) key.push_back('\x1f');
            key += words[i + k];
            chars += word_chars[i + k];
        }
        auto& entry = counts[key];
        ++entry.first;
        entry.second = chars;
    }
    std::size_t best_count = 0;
    std::size_t best_chars = 0;
    for (const auto& [gram, entry] : counts) {
        if (entry.first > best_count ||
            (entry.first == best_count && entry.second > best_chars)) {
            best_count = entry.first;
            best_chars = entry.second;
        }
    }
    const double frac =
        static_cast<double>(best_count) * static_cast<double>(best_chars) / doc_chars;
    return std::min(frac, 1.0);
}

// Chars inside non-first occurrences of any repeated n-gram; a word position
// is counted once even when several repeated grams cover it.
double dup_ngram_fraction(const std::vector<std::string>& words,
                          const std::vector<std::size_t>& word_chars,
                          std::size_t n, double doc_chars) {
    if (words.size() < n || doc_chars <= 0) return 0.0;
    std::unordered_map<std::string, std::size_t> first_seen;
    std::vector<bool> covered(words.size(), false);
    std::string key;
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
        key.clear();
        for (std::size_t k = 0; k < n; ++k) {
            if (k) key.push_back('\x1f');
            key += words[i + k];
        }
        auto [it, inserted] = first_seen.emplace(key, i);
        if (!inserted) {
            for (std::size_t k = 0; k < n; ++k) covered[i + k] = true;
        }
    }
    std::size_t chars = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (covered[i]) chars += word_chars[i];
    }
    return std::min(static_cast<double>(chars) / doc_chars, 1.0);
}

const std::set<std::string>& lang_list(
    const std::map<std::string, std::set<std::string>>& lists, const std::string& lang) {
    static const std::set<std::string> empty;
    auto it = lists.find(lang);
    return it == lists.end() ? empty : it->second;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// IPv4: four runs of 1-3 digits, each <= 255, '.'-separated, with digit-run
// guards so "1.2.3.4000" is not a quad ending in "400".
bool match_ipv4(std::string_view s, std::size_t at, std::size_t& end) {
    if (at > 0 && (is_digit(s[at - 1]) || s[at - 1] == '.')) return false;
    std::size_t pos = at;
    for (int octet = 0; octet < 4; ++octet) {
        if (octet && (pos >= s.size() || s[pos] != '.')) return false;
        if (octet) ++pos;
        std::size_t run = 0;
        int value = 0;
        while (pos < s.size() && is_digit(s[pos])) {
            value = value * 10 + (s[pos] - '0');
            ++run;
            ++pos;
            if (run > 3) return false;
        }
        if (run == 0 || value > 255) return false;
    }
    // "1.2.3.4.5" is a version string, but a sentence-final dot is fine.
    if (pos + 1 < s.size() && s[pos] == '.' && is_digit(s[pos + 1])) return false;
    end = pos;
    return true;
}

bool is_phone_sep(char c) {
    return c == ' ' || c == '-' || c == '.' || c == '(' || c == ')';
}

// Phone: 7-15 digits in separated groups. Digit-run guards keep version
// strings ("1.2.3.4000"), dates ("2024-08-15"), and spaced integers
// ("1 200 300") from matching.
bool match_phone(std::string_view s, std::size_t at, std::size_t& end) {
    std::size_t pos = at;
    bool plus = false;
    if (pos < s.size() && s[pos] == '+') {
        plus = true;
        ++pos;
    }
    struct Group {
        std::size_t len = 0;
        int value = -1;  // -1 when too long to matter
    };
    std::vector<Group> groups;
    std::size_t digits_end = pos;
    bool non_dot_sep = false;
    while (pos < s.size()) {
        if (is_digit(s[pos])) {
            Group g;
            int value = 0;
            while (pos < s.size() && is_digit(s[pos])) {
                if (g.len < 6) value = value * 10 + (s[pos] - '0');
                ++g.len;
                ++pos;
            }
            g.value = g.len <= 6 ? value : -1;
            groups.push_back(g);
            digits_end = pos;
        } else if (is_phone_sep(s[pos]) && !groups.empty()) {
            // allow a short separator run between groups, e.g. ") "
            std::size_t sep = 0;
            std::size_t probe = pos;
            while (probe < s.size() && is_phone_sep(s[probe]) && sep < 3) {
                if (s[probe] != '.') non_dot_sep = true;
                ++sep;
                ++probe;
            }
            if (probe >= s.size() || !is_digit(s[probe])) break;
            pos = probe;
        } else if (is_phone_sep(s[pos]) && groups.empty() && s[pos] == '(') {
            ++pos;  // leading "(555" style
        } else {
            break;
        }
    }
    if (groups.empty()) return false;
    std::size_t total = 0;
    for (const Group& g : groups) total += g.len;
    if (total < 7 || total > 15) return false;
    if (!plus) {
        if (groups.size() < 2) return false;
        // A bare 1-digit lead ("1-800-...") needs the full grouped shape;
        // "1 200 300" style formatted integers stay out.
        if (groups[0].len == 1 && groups.size() < 4) return false;
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const std::size_t cap = (plus && groups.size() == 1) ? 15 : 7;
        if (groups[i].len > cap) return false;
        if (i > 0 && groups[i].len < 2) return false;
    }
    // A malformed dotted quad (e.g. "999.999.999.999") is not a phone.
    if (!plus && groups.size() == 4 && !non_dot_sep) {
        const bool quad_shape = std::all_of(groups.begin(), groups.end(),
                                            [](const Group& g) { return g.len <= 3; });
        if (quad_shape) return false;
    }
    // Calendar dates: 2024-08-15 / 15.08.2024 shapes with a plausible year.
    if (!plus && groups.size() == 3) {
        auto is_year = [](const Group& g) {
            return g.len == 4 && g.value >= 1900 && g.value <= 2099;
        };
        if ((is_year(groups[0]) && groups[1].len == 2 && groups[2].len == 2) ||
            (groups[0].len == 2 && groups[1].len == 2 && is_year(groups[2]))) {
            return false;
        }
    }
    // A trailing letter glued to the digits looks like an identifier, not a
    // phone number ("build 2024-08-151a").
    if (digits_end < s.size()) {
        const char c = s[digits_end];
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return false;
    }
    end = digits_end;
    return true;
}

bool is_email_local_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || is_digit(c) ||
           c == '.' || c == '_' || c == '%' || c == '+' || c == '-';
}

bool is_email_domain_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || is_digit(c) ||
           c == '.' || c == '-';
}

// RFC-5322-lite: local@domain.tld with an alphabetic TLD of 2+ chars.
bool match_email(std::string_view s, std::size_t at_pos, std::size_t& begin,
                 std::size_t& end) {
    std::size_t start = at_pos;
    while (start > 0 && is_email_local_char(s[start - 1])) --start;
    if (start == at_pos) return false;
    std::size_t stop = at_pos + 1;
    while (stop < s.size() && is_email_domain_char(s[stop])) ++stop;
    std::string_view domain = s.substr(at_pos + 1, stop - at_pos - 1);
    while (!domain.empty() && (domain.back() == '.' || domain.back() == '-')) {
        domain.remove_suffix(1);
    }
    const std::size_t dot = domain.rfind('.');
    if (dot == std::string_view::npos || dot == 0) return false;
    std::string_view tld = domain.substr(dot + 1);
    if (tld.size() < 2) return false;
    for (char c : tld) {
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
    }
    begin = start;
    end = at_pos + 1 + domain.size();
    return true;
}

}  // namespace

HeuristicResources HeuristicResources::load(const std::string& dir) {
    namespace fs = std::filesystem;
    HeuristicResources res;
    if (!fs::is_directory(dir)) return res;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        auto lang_of = [&](std::string_view prefix) -> std::string {
            // stopwords.<lang>.txt
            std::string_view rest(name);
            rest.remove_prefix(prefix.size());
            const std::size_t dot = rest.find('.');
            return std::string(rest.substr(0, dot));
        };
        if (name.starts_with("stopwords.") && name.ends_with(".txt")) {
            res.stopwords[lang_of("stopwords.")] = read_word_list(entry.path());
        } else if (name.starts_with("badwords.") && name.ends_with(".txt")) {
            res.badwords[lang_of("badwords.")] = read_word_list(entry.path());
        } else if (name == "license_phrases.txt") {
            for (const auto& phrase : read_word_list(entry.path())) {
                res.license_phrases.push_back(phrase);
            }
        }
    }
    return res;
}

std::map<std::string, double> DocMetrics::as_map() const {
    return {
        {"num_lines", num_lines},
        {"doc_chars", doc_chars},
        {"frac_lines_bullet_start", frac_lines_bullet_start},
        {"frac_lines_terminal_punct", frac_lines_terminal_punct},
        {"num_sentences", num_sentences},
        {"frac_words_no_alpha", frac_words_no_alpha},
        {"frac_words_with_newline", frac_words_with_newline},
        {"frac_short_lines", frac_short_lines},
        {"frac_stop_words", frac_stop_words},
        {"frac_chars_top_2gram", frac_chars_top_2gram},
        {"frac_chars_top_3gram", frac_chars_top_3gram},
        {"frac_chars_top_4gram", frac_chars_top_4gram},
        {"frac_chars_dup_5gram", frac_chars_dup_5gram},
        {"frac_chars_dup_6gram", frac_chars_dup_6gram},
        {"frac_chars_dup_7gram", frac_chars_dup_7gram},
        {"frac_chars_dup_8gram", frac_chars_dup_8gram},
        {"frac_chars_dup_9gram", frac_chars_dup_9gram},
        {"frac_chars_dup_10gram", frac_chars_dup_10gram},
        {"ldnoobw_hits", ldnoobw_hits},
        {"word_count", word_count},
        {"symbol_word_ratio", symbol_word_ratio},
        {"has_lorem_ipsum", has_lorem_ipsum ? 1.0 : 0.0},
        {"frac_lines_ellipsis_end", frac_lines_ellipsis_end},
        {"has_curly_bracket", has_curly_bracket ? 1.0 : 0.0},
        {"avg_word_length", avg_word_length},
        {"has_license_string", has_license_string ? 1.0 : 0.0},
        {"has_pii", has_pii ? 1.0 : 0.0},
    };
}

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {
        "num_lines",
        "doc_chars",
        "frac_lines_bullet_start",
        "frac_lines_terminal_punct",
        "num_sentences",
        "frac_words_no_alpha",
        "frac_words_with_newline",
        "frac_short_lines",
        "frac_stop_words",
        "frac_chars_top_2gram",
        "frac_chars_top_3gram",
        "frac_chars_top_4gram",
        "frac_chars_dup_5gram",
        "frac_chars_dup_6gram",
        "frac_chars_dup_7gram",
        "frac_chars_dup_8gram",
        "frac_chars_dup_9gram",
        "frac_chars_dup_10gram",
        "ldnoobw_hits",
        "word_count",
        "symbol_word_ratio",
        "has_lorem_ipsum",
        "frac_lines_ellipsis_end",
        "has_curly_bracket",
        "avg_word_length",
        "has_license_string",
        "has_pii",
    };
    return names;
}

DocMetrics compute_metrics(const std::string& text, const std::string& lang,
                           const HeuristicResources& res) {
    DocMetrics m;
    const std::vector<std::string> lines = split_lines(text);
    const std::vector<std::string> words = tokenize_words(text, lang);
    m.num_lines = static_cast<double>(lines.size());
    m.doc_chars = static_cast<double>(utf8_length(text));
    m.num_sentences = static_cast<double>(split_sentences(text, lang).size());
    m.word_count = static_cast<double>(words.size());

    if (!lines.empty()) {
        std::size_t bullet = 0, terminal = 0, short_lines = 0, ellipsis = 0;
        for (const std::string& line : lines) {
            if (is_bullet_cp(first_cp(line))) ++bullet;
            if (is_terminal_punct_cp(last_cp(line))) ++terminal;
            if (utf8_length(line) < res.short_line_chars) ++short_lines;
            if (ends_with(line, "\xE2\x80\xA6") || ends_with(line, "...")) ++ellipsis;
        }
        const double n = static_cast<double>(lines.size());
        m.frac_lines_bullet_start = bullet / n;
        m.frac_lines_terminal_punct = terminal / n;
        m.frac_short_lines = short_lines / n;
        m.frac_lines_ellipsis_end = ellipsis / n;
    }

    if (!words.empty()) {
        const auto& stop = lang_list(res.stopwords, lang);
        const auto& bad = lang_list(res.badwords, lang);
        std::vector<std::size_t> word_chars(words.size());
        std::size_t no_alpha = 0, stop_hits = 0, bad_hits = 0, total_chars = 0;
        for (std::size_t i = 0; i < words.size(); ++i) {
            word_chars[i] = utf8_length(words[i]);
            total_chars += word_chars[i];
            bool alpha = false;
            std::size_t pos = 0;
            while (pos < words[i].size()) {
                if (is_alpha_cp(utf8_next(words[i], pos))) {
                    alpha = true;
                    break;
                }
            }
            if (!alpha) ++no_alpha;
            const std::string norm = normalize_token(words[i]);
            if (!norm.empty()) {
                if (stop.count(norm)) ++stop_hits;
                if (bad.count(norm)) ++bad_hits;
            }
        }
        const double n = static_cast<double>(words.size());
        m.frac_words_no_alpha = no_alpha / n;
        m.frac_stop_words = stop_hits / n;
        m.ldnoobw_hits = static_cast<double>(bad_hits);
        m.avg_word_length = static_cast<double>(total_chars) / n;

        const std::size_t symbols = count_substring(text, "#") +
                                    count_substring(text, "\xE2\x80\xA6") +
                                    count_substring(text, "...");
        m.symbol_word_ratio = static_cast<double>(symbols) / n;

        m.frac_chars_top_2gram = top_ngram_fraction(words, word_chars, 2, m.doc_chars);
        m.frac_chars_top_3gram = top_ngram_fraction(words, word_chars, 3, m.doc_chars);
        m.frac_chars_top_4gram = top_ngram_fraction(words, word_chars, 4, m.doc_chars);
        m.frac_chars_dup_5gram = dup_ngram_fraction(words, word_chars, 5, m.doc_chars);
        m.frac_chars_dup_6gram = dup_ngram_fraction(words, word_chars, 6, m.doc_chars);
        m.frac_chars_dup_7gram = dup_ngram_fraction(words, word_chars, 7, m.doc_chars);
        m.frac_chars_dup_8gram = dup_ngram_fraction(words, word_chars, 8, m.doc_chars);
        m.frac_chars_dup_9gram = dup_ngram_fraction(words, word_chars, 9, m.doc_chars);
        m.frac_chars_dup_10gram = dup_ngram_fraction(words, word_chars, 10, m.doc_chars);
    }

    const std::vector<std::string> segments = raw_segments(text);
    if (!segments.empty()) {
        std::size_t with_newline = 0;
        for (const std::string& seg : segments) {
            if (seg.find('\n') != std::string::npos) ++with_newline;
        }
        m.frac_words_with_newline =
            static_cast<double>(with_newline) / static_cast<double>(segments.size());
    }

    m.has_lorem_ipsum = contains_ci(text, "lorem ipsum");
    m.has_curly_bracket =
        text.find('{') != std::string::npos || text.find('}') != std::string::npos;
    m.has_license_string = detect_license(text, res.license_phrases);
    m.has_pii = detect_pii(text);
    return m;
}

std::vector<PiiSpan> detect_pii_spans(std::string_view text) {
    std::vector<PiiSpan> spans;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '@') {
            std::size_t begin = 0, end = 0;
            if (match_email(text, i, begin, end)) {
                spans.push_back({"email", begin, end});
                i = end - 1;
            }
        }
    }
    // Mask email bytes so their digit runs don't double as phone numbers.
    std::string masked(text);
    for (const auto& span : spans) {
        std::fill(masked.begin() + static_cast<std::ptrdiff_t>(span.begin),
                  masked.begin() + static_cast<std::ptrdiff_t>(span.end), 'x');
    }
    for (std::size_t i = 0; i < masked.size(); ++i) {
        const char c = masked[i];
        const bool start = (c == '+' && i + 1 < masked.size() && is_digit(masked[i + 1])) ||
                           is_digit(c) || (c == '(' && i + 1 < masked.size());
        if (!start) continue;
        if (i > 0 && (is_digit(masked[i - 1]) || masked[i - 1] == '+')) continue;
        // Identifier-glued digits ("v1.2.3") are not phone candidates, but an
        // opening paren or '+' marks a fresh start.
        if (i > 0 && c != '+' && c != '(') {
            const char p = masked[i - 1];
            if ((p >= 'a' && p <= 'z') || (p >= 'A' && p <= 'Z')) continue;
            // Inside a dotted number ("1.2.3.4000"): the full candidate was
            // already judged at its first digit.
            if (p == '.' && i > 1 && is_digit(masked[i - 2])) continue;
        }
        std::size_t end = 0;
        if (match_ipv4(masked, i, end)) {
            spans.push_back({"ipv4", i, end});
            i = end - 1;
            continue;
        }
        if (match_phone(masked, i, end)) {
            spans.push_back({"phone", i, end});
            i = end - 1;
        }
    }
    std::sort(spans.begin(), spans.end(),
              [](const PiiSpan& a, const PiiSpan& b) { return a.begin < b.begin; });
    return spans;
}

bool detect_pii(std::string_view text) { return !detect_pii_spans(text).empty(); }

bool detect_license(std::string_view text, const std::vector<std::string>& phrases) {
    for (const std::string& phrase : phrases) {
        if (contains_ci(text, phrase)) return true;
    }
    return false;
}

bool Rule::passes(double metric_value) const {
    switch (op) {
        case CmpOp::ge: return metric_value >= value;
        case CmpOp::le: return metric_value <= value;
        case CmpOp::gt: return metric_value > value;
        case CmpOp::lt: return metric_value < value;
        case CmpOp::eq: return metric_value == value;
        case CmpOp::range: return metric_value >= value && metric_value <= value2;
    }
    return false;
}

ThresholdConfig ThresholdConfig::defaults() {
    const std::vector<Rule> english = {
        {"num_lines", CmpOp::ge, 5, 0},
        {"doc_chars", CmpOp::ge, 200, 0},
        {"frac_lines_bullet_start", CmpOp::le, 0.9, 0},
        {"frac_lines_terminal_punct", CmpOp::gt, 0.12, 0},
        {"num_sentences", CmpOp::ge, 5, 0},
        {"frac_words_no_alpha", CmpOp::le, 0.2, 0},
        {"frac_words_with_newline", CmpOp::le, 0.3, 0},
        {"frac_short_lines", CmpOp::lt, 0.67, 0},
        {"frac_stop_words", CmpOp::ge, 0.0, 0},
        {"frac_chars_top_2gram", CmpOp::le, 0.2, 0},
        {"frac_chars_top_3gram", CmpOp::le, 0.18, 0},
        {"frac_chars_top_4gram", CmpOp::le, 0.16, 0},
        {"frac_chars_dup_5gram", CmpOp::le, 0.15, 0},
        {"frac_chars_dup_6gram", CmpOp::le, 0.14, 0},
        {"frac_chars_dup_7gram", CmpOp::le, 0.13, 0},
        {"frac_chars_dup_8gram", CmpOp::le, 0.12, 0},
        {"frac_chars_dup_9gram", CmpOp::le, 0.11, 0},
        {"frac_chars_dup_10gram", CmpOp::le, 0.1, 0},
        {"ldnoobw_hits", CmpOp::eq, 0, 0},
        {"word_count", CmpOp::range, 50, 100000},
        {"symbol_word_ratio", CmpOp::le, 0.1, 0},
        {"has_lorem_ipsum", CmpOp::eq, 0, 0},
        {"frac_lines_ellipsis_end", CmpOp::le, 0.3, 0},
        {"has_curly_bracket", CmpOp::eq, 0, 0},
        {"avg_word_length", CmpOp::range, 3, 10},
        {"has_license_string", CmpOp::eq, 0, 0},
        {"has_pii", CmpOp::eq, 0, 0},
    };
    ThresholdConfig cfg;
    cfg.per_lang["en"] = english;
    cfg.per_lang["ko"] = english;
    // Per-character tokenization makes stop-word and word-length rules
    // meaningless for unsegmented scripts, and without spaces nearly every
    // raw segment spans a line break, so that rule goes too.
    std::vector<Rule> no_space;
    for (const Rule& rule : english) {
        if (rule.metric == "frac_stop_words" || rule.metric == "avg_word_length" ||
            rule.metric == "frac_words_with_newline") {
            continue;
        }
        no_space.push_back(rule);
    }
    cfg.per_lang["ja"] = no_space;
    cfg.per_lang["th"] = no_space;
    return cfg;
}

void ThresholdConfig::apply_override(const std::string& lang, const std::string& metric,
                                     const std::string& op, double value, double value2) {
    const auto& names = metric_names();
    if (std::find(names.begin(), names.end(), metric) == names.end()) {
        throw ConfigError("unknown_metric", "unknown heuristic metric: " + metric);
    }
    CmpOp parsed;
    if (op == "ge") parsed = CmpOp::ge;
    else if (op == "le") parsed = CmpOp::le;
    else if (op == "gt") parsed = CmpOp::gt;
    else if (op == "lt") parsed = CmpOp::lt;
    else if (op == "eq") parsed = CmpOp::eq;
    else if (op == "range") parsed = CmpOp::range;
    else throw ConfigError("unknown_op", "unknown threshold op: " + op);

    auto it = per_lang.find(lang);
    if (it == per_lang.end()) {
        it = per_lang.emplace(lang, defaults().per_lang.at("en")).first;
    }
    const Rule rule{metric, parsed, value, value2};
    for (Rule& existing : it->second) {
        if (existing.metric == metric) {
            existing = rule;
            return;
        }
    }
    it->second.push_back(rule);
}

FilterOutcome apply_thresholds(const std::map<std::string, double>& metrics,
                               const std::string& lang, const ThresholdConfig& cfg) {
    const auto it = cfg.per_lang.find(lang);
    if (it == cfg.per_lang.end()) {
        throw Error("no_thresholds_for_lang", "no heuristic thresholds for: " + lang);
    }
    FilterOutcome outcome = FilterOutcome::keep("heuristics");
    for (const Rule& rule : it->second) {
        const auto found = metrics.find(rule.metric);
        const bool ok = found != metrics.end() && rule.passes(found->second);
        if (!ok) {
            outcome.kept = false;
            outcome.reasons.push_back(rule.metric);
        }
    }
    return outcome;
}

Document apply_heuristics(Document doc, const HeuristicResources& res,
                          const ThresholdConfig& cfg) {
    doc.metrics = compute_metrics(doc.text, doc.lang, res).as_map();
    doc.filter = apply_thresholds(doc.metrics, doc.lang, cfg);
    return doc;
}

}  // namespace curate
