#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "curate/classifier.hpp"
#include "curate/document.hpp"
#include "curate/hash.hpp"

namespace curate::testing {

// Deterministic synthetic corpora: four languages (en, ko, ja, th), four
// topic domains (finance, law, medical, other). Generated documents are
// designed to clear every default heuristic threshold, so tests that want
// a failing document must break one property on purpose.
namespace fixtures {

// One sentence, terminal-punctuated. `domain` in {finance, law, medical, other}.
std::string sentence(std::string_view lang, std::string_view domain, Rng& rng);

// `lines` newline-separated lines, each of `sentences_per_line` sentences.
std::string document_text(std::string_view lang, std::string_view domain, Rng& rng,
                          int lines = 8, int sentences_per_line = 2);

// Labeled text for the language-ID model, round-robin over all four languages.
std::vector<LabeledExample> lang_examples(std::size_t per_lang, std::uint64_t seed);

// Labeled text for the domain classifier (English + Korean mixed).
std::vector<LabeledExample> domain_examples(std::size_t per_domain, std::uint64_t seed);

// Low-quality text: spam fragments, repeated shouting, keyboard noise.
std::string spam_text(Rng& rng);

// Navigation/footer lines that repeat across pages of a site.
const std::vector<std::string>& boilerplate_lines(std::string_view lang);

// A pipeline-ready document around document_text.
Document make_document(const std::string& id, const std::string& url,
                       std::string_view lang, std::string_view domain, Rng& rng,
                       int lines = 8);

}  // namespace fixtures

}  // namespace curate::testing
