#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace curate {

enum class FeatureKind : std::uint8_t { word = 0, chars = 1 };

struct ModelShape {
    FeatureKind kind = FeatureKind::word;
    int ngram_min = 1;
    int ngram_max = 2;
    std::size_t bucket_count = 1u << 20;
    std::uint64_t hash_seed = 0;
};

// Hashed bag-of-n-grams linear model. No hidden layer: the mean feature
// embedding is just the normalized bucket-count vector, so scoring is
// softmax(x . W + b) — multinomial logistic regression.
struct ClassifierModel {
    ModelShape shape;
    std::vector<std::string> labels;  // sorted; row-major weight columns
    std::vector<float> bias;          // [labels]
    std::vector<float> weights;       // [bucket_count * labels]
    std::uint8_t version = 1;

    float weight_at(std::size_t bucket, std::size_t label) const {
        return weights[bucket * labels.size() + label];
    }
};

struct LabeledExample {
    std::string text;
    std::string label;
};

struct TrainConfig {
    int epochs = 5;
    double learning_rate = 0.1;  // linearly decayed to 0
    std::uint64_t seed = 0;
    double holdout_fraction = 0.1;
};

struct TrainResult {
    ClassifierModel model;
    double holdout_accuracy = 0.0;
    std::size_t holdout_size = 0;
};

// Sorted (bucket, count) pairs. Word n-grams join tokens with a single
// space; char n-grams run over codepoints of the raw text, spaces included.
std::vector<std::pair<std::uint32_t, float>> featurize(std::string_view text,
                                                       const ModelShape& shape);

// Shuffled SGD, deterministic for a given (examples, shape, config).
TrainResult train(const std::vector<LabeledExample>& examples, const ModelShape& shape,
                  const TrainConfig& config);

// (label, probability) sorted by probability descending, label order as
// tiebreak. Probabilities sum to 1 within 1e-6.
std::vector<std::pair<std::string, double>> predict(const ClassifierModel& model,
                                                    std::string_view text);

void save_model(const ClassifierModel& model, const std::string& path);
ClassifierModel load_model(const std::string& path);

// JSONL of {"text": ..., "label": ...}, one example per line.
std::vector<LabeledExample> read_labeled_examples(const std::string& path);
void write_labeled_examples(const std::string& path,
                            const std::vector<LabeledExample>& examples);

}  // namespace curate
