#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "curate/classifier.hpp"
#include "curate/document.hpp"

namespace curate {

// Backoff n-gram language models with ARPA round-tripping, used in pairs: a
// "good" model trained on clean reference text and a "bad" model trained on
// junk, whose perplexities label classifier training data.
//
// Conventions (tests freeze these):
// - training lines and scored text tokenize script-aware (CJK/Thai chars
//   stand alone), no case folding
// - order >= 2 pads one <s> (context only, never predicted) and predicts a
//   closing </s>; order 1 uses no markers at all
// - perplexity = 10^(-log10_prob / tokens), tokens counting </s> but not <s>
enum class Smoothing { kneser_ney, add_k };

struct LmConfig {
    int order = 3;  // 1..5
    Smoothing smoothing = Smoothing::kneser_ney;
    double add_k = 0.5;

    void validate() const;  // ConfigError "bad_lm_config"
};

struct NgramEntry {
    double log10_prob = 0.0;
    double log10_bow = 0.0;  // log10 backoff weight; 0 below means "weight 1"
};

struct NgramModel {
    static constexpr std::string_view kBos = "<s>";
    static constexpr std::string_view kEos = "</s>";
    static constexpr std::string_view kUnk = "<unk>";
    // Tokens absent from the model (no <unk> entry to fall back on) score
    // this, mirroring the ARPA convention for unusable entries.
    static constexpr double kFloorLog10 = -99.0;

    int order = 0;
    std::vector<std::string> vocab;  // sorted; index == token id
    std::map<std::string, std::uint32_t, std::less<>> token_ids;
    // tables[j] holds (j+1)-grams as id sequences.
    std::vector<std::map<std::vector<std::uint32_t>, NgramEntry>> tables;
    std::map<std::string, std::string> metadata;

    bool has_token(std::string_view token) const;
    std::uint32_t id_of(std::string_view token) const;  // Error "unknown_token"
    const NgramEntry* find(const std::vector<std::uint32_t>& gram) const;

    // Backoff-walk conditional: longest stored (context, word) gram wins,
    // missing levels multiply in their context's backoff weight.
    double log10_cond(const std::vector<std::uint32_t>& context,
                      std::uint32_t word) const;
};

// Trains on one sentence per line. Kneser-Ney estimates per-order discounts
// from count-of-counts and falls back to add-k = 0.5 (recorded in
// metadata["smoothing"] / metadata["fallback_reason"]) when the corpus is
// under 1000 tokens or the discounts degenerate. Error "empty_corpus" when
// no line yields a token.
NgramModel train_lm(const std::vector<std::string>& sentences,
                    const LmConfig& config);

// Standard ARPA text: \data\ header with per-order counts, \N-grams:
// sections of log10-prob TAB gram (TAB log10-backoff below the top order),
// \end\. Deterministic bytes for a given model.
void write_arpa(const NgramModel& model, const std::string& path);

// Error "arpa_parse_error" carries the offending line number.
NgramModel read_arpa(const std::string& path);

struct PerplexityResult {
    double log10_total = 0.0;
    double log10_per_token = 0.0;
    double perplexity = 0.0;
    std::size_t tokens = 0;
};

// Error "empty_text" when nothing tokenizes.
PerplexityResult perplexity(const NgramModel& model, std::string_view text,
                            std::string_view lang = "en");

struct LabelingRule {
    double good_ppl_max = 300.0;
    double bad_ppl_min = 600.0;
    enum class Mode { both, ratio };
    Mode mode = Mode::both;
    double ratio_min = 1.5;

    void validate() const;  // ConfigError "bad_labeling_rule"
};

struct LabelReport {
    std::vector<LabeledExample> examples;  // input order, gaps removed
    std::size_t positives = 0;
    std::size_t negatives = 0;
    std::size_t unlabeled = 0;  // disagreements and empty texts
};

// Scores each document under both models and keeps the confident ones:
// "both" mode wants good-ppl <= good_ppl_max AND bad-ppl >= bad_ppl_min for
// a positive (the mirrored pair for a negative); "ratio" mode compares
// bad/good against ratio_min. Everything else is counted unlabeled.
LabelReport label_documents(const NgramModel& good, const NgramModel& bad,
                            const std::vector<Document>& docs,
                            const LabelingRule& rule, int threads = 1);

}  // namespace curate
