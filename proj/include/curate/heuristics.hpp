#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "curate/document.hpp"

namespace curate {

// Word lists and knobs used by metric computation. Lists are keyed by
// language code; a missing language just means the metric reads zero.
struct HeuristicResources {
    std::map<std::string, std::set<std::string>> stopwords;
    std::map<std::string, std::set<std::string>> badwords;
    std::vector<std::string> license_phrases;  // stored lowercased
    std::size_t short_line_chars = 30;

    // Reads stopwords.<lang>.txt, badwords.<lang>.txt, license_phrases.txt
    // from dir. Missing files are fine; "#" starts a comment line.
    static HeuristicResources load(const std::string& dir);
};

// The full per-document metadata vector. Fractions are of lines/words/chars
// as named; booleans are stored as 0/1 in as_map().
struct DocMetrics {
    double num_lines = 0;
    double doc_chars = 0;
    double frac_lines_bullet_start = 0;
    double frac_lines_terminal_punct = 0;
    double num_sentences = 0;
    double frac_words_no_alpha = 0;
    double frac_words_with_newline = 0;
    double frac_short_lines = 0;
    double frac_stop_words = 0;
    double frac_chars_top_2gram = 0;
    double frac_chars_top_3gram = 0;
    double frac_chars_top_4gram = 0;
    double frac_chars_dup_5gram = 0;
    double frac_chars_dup_6gram = 0;
    double frac_chars_dup_7gram = 0;
    double frac_chars_dup_8gram = 0;
    double frac_chars_dup_9gram = 0;
    double frac_chars_dup_10gram = 0;
    double ldnoobw_hits = 0;
    double word_count = 0;
    double symbol_word_ratio = 0;
    bool has_lorem_ipsum = false;
    double frac_lines_ellipsis_end = 0;
    bool has_curly_bracket = false;
    double avg_word_length = 0;
    bool has_license_string = false;
    bool has_pii = false;

    std::map<std::string, double> as_map() const;
};

// Canonical metric names, in reporting order.
const std::vector<std::string>& metric_names();

DocMetrics compute_metrics(const std::string& text, const std::string& lang,
                           const HeuristicResources& res);

struct PiiSpan {
    std::string kind;  // "email" | "phone" | "ipv4"
    std::size_t begin = 0;  // byte offsets into the text
    std::size_t end = 0;
};

std::vector<PiiSpan> detect_pii_spans(std::string_view text);
bool detect_pii(std::string_view text);

bool detect_license(std::string_view text, const std::vector<std::string>& phrases);

enum class CmpOp { ge, le, gt, lt, eq, range };

struct Rule {
    std::string metric;
    CmpOp op = CmpOp::ge;
    double value = 0;
    double value2 = 0;  // upper bound, range only

    bool passes(double metric_value) const;
};

// Per-language rule sets, kept in canonical metric order so reported
// reasons are stable.
struct ThresholdConfig {
    std::map<std::string, std::vector<Rule>> per_lang;

    // English defaults; ko clones them; ja/th drop the stop-word and
    // word-length rules (tokenization is per-character there).
    static ThresholdConfig defaults();

    // Replaces (or adds) one metric's rule for a language. A language the
    // config has never seen starts from the English rule set. Unknown
    // metric or op names raise ConfigError.
    void apply_override(const std::string& lang, const std::string& metric,
                        const std::string& op, double value, double value2 = 0);
};

// Evaluates every rule (no short-circuit); reasons name each failed metric.
// Unknown language raises Error("no_thresholds_for_lang").
FilterOutcome apply_thresholds(const std::map<std::string, double>& metrics,
                               const std::string& lang, const ThresholdConfig& cfg);

// compute_metrics + apply_thresholds, stamped onto the document.
Document apply_heuristics(Document doc, const HeuristicResources& res,
                          const ThresholdConfig& cfg);

}  // namespace curate
