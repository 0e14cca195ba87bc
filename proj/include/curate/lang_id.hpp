#pragma once

#include <cstddef>
#include <set>
#include <string>

#include "curate/classifier.hpp"
#include "curate/document.hpp"

namespace curate {

struct LangIdConfig {
    std::set<std::string> target_langs = {"en", "ja", "ko", "th"};
    double min_score = 0.65;
    std::size_t sample_chars = 4000;  // classify on a prefix for speed
};

// Default model shape for language ID: char 1-3 grams, 2^18 buckets.
ModelShape lang_id_shape();

// Writes lang + lang_score from the classifier's top label, computed on the
// first sample_chars codepoints with newlines flattened to spaces. Empty
// text is dropped with reason "empty_text" and lang stays empty.
Document identify(const ClassifierModel& model, Document doc, const LangIdConfig& cfg);

// Kept iff lang is a target and the score clears min_score.
FilterOutcome filter_language(const Document& doc, const LangIdConfig& cfg);

}  // namespace curate
