#include "curate/lang_id.hpp"

#include "curate/text.hpp"

namespace curate {

ModelShape lang_id_shape() {
    ModelShape shape;
    shape.kind = FeatureKind::chars;
    shape.ngram_min = 1;
    shape.ngram_max = 3;
    shape.bucket_count = 1u << 18;
    shape.hash_seed = 0;
    return shape;
}

Document identify(const ClassifierModel& model, Document doc, const LangIdConfig& cfg) {
    if (doc.text.empty()) {
        doc.filter = FilterOutcome::drop("langid", "empty_text");
        return doc;
    }
    std::string sample;
    sample.reserve(std::min(doc.text.size(), cfg.sample_chars * 4));
    std::size_t pos = 0;
    std::size_t chars = 0;
    while (pos < doc.text.size() && chars < cfg.sample_chars) {
        const std::size_t start = pos;
        const char32_t cp = utf8_next(doc.text, pos);
        if (cp == U'\n' || cp == U'\r') {
            sample.push_back(' ');
        } else {
            sample.append(doc.text, start, pos - start);
        }
        ++chars;
    }
    const auto scores = predict(model, sample);
    doc.lang = scores[0].first;
    doc.lang_score = scores[0].second;
    return doc;
}

FilterOutcome filter_language(const Document& doc, const LangIdConfig& cfg) {
    if (!cfg.target_langs.count(doc.lang)) {
        return FilterOutcome::drop("langid", "lang_not_target");
    }
    if (doc.lang_score < cfg.min_score) {
        return FilterOutcome::drop("langid", "lang_low_confidence");
    }
    return FilterOutcome::keep("langid");
}

}  // namespace curate
