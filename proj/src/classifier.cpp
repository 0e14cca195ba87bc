#include "curate/classifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "curate/errors.hpp"
#include "curate/gzip.hpp"
#include "curate/hash.hpp"
#include "curate/text.hpp"

namespace curate {

namespace {

constexpr char kMagic[5] = {'L', 'P', 'C', 'L', 'S'};
constexpr std::uint8_t kFormatVersion = 1;

void hash_into(std::string_view gram, const ModelShape& shape,
               std::map<std::uint32_t, float>& counts) {
    std::uint64_t h = fnv1a64(gram, shape.hash_seed);
    counts[static_cast<std::uint32_t>(h % shape.bucket_count)] += 1.0f;
}

// Softmax of x . W + bias over the model labels. `x` holds normalized counts.
std::vector<double> score(const ClassifierModel& model,
                          const std::vector<std::pair<std::uint32_t, float>>& features) {
    const std::size_t L = model.labels.size();
    std::vector<double> z(model.bias.begin(), model.bias.end());
    float total = 0.0f;
    for (const auto& [bucket, count] : features) total += count;
    if (total > 0.0f) {
        for (const auto& [bucket, count] : features) {
            const float x = count / total;
            const float* row = model.weights.data() + static_cast<std::size_t>(bucket) * L;
            for (std::size_t l = 0; l < L; ++l) z[l] += static_cast<double>(x) * row[l];
        }
    }
    double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - zmax);
        sum += v;
    }
    for (double& v : z) v /= sum;
    return z;
}

// --- little-endian encode/decode ------------------------------------------

void put_u8(std::string& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (i * 8)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (i * 8)) & 0xff));
}

void put_f32(std::string& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

struct ByteCursor {
    std::string_view data;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > data.size()) {
            throw Error("corrupt_model", "model file truncated");
        }
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data[pos++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos++])) << (i * 8);
        }
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos++])) << (i * 8);
        }
        return v;
    }
    float f32() { return std::bit_cast<float>(u32()); }
    std::string str(std::size_t n) {
        need(n);
        std::string s(data.substr(pos, n));
        pos += n;
        return s;
    }
};

}  // namespace

std::vector<std::pair<std::uint32_t, float>> featurize(std::string_view text,
                                                       const ModelShape& shape) {
    std::map<std::uint32_t, float> counts;
    if (shape.kind == FeatureKind::word) {
        const std::vector<std::string> tokens = tokenize_words_script_aware(text);
        for (int n = shape.ngram_min; n <= shape.ngram_max; ++n) {
            if (n <= 0 || tokens.size() < static_cast<std::size_t>(n)) continue;
            for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
                std::string gram = tokens[i];
                for (int k = 1; k < n; ++k) {
                    gram.push_back(' ');
                    gram += tokens[i + k];
                }
                hash_into(gram, shape, counts);
            }
        }
    } else {
        // Codepoint boundaries once, then every n-gram is a byte slice.
        std::vector<std::size_t> starts;
        std::size_t pos = 0;
        while (pos < text.size()) {
            starts.push_back(pos);
            utf8_next(text, pos);
        }
        starts.push_back(text.size());
        const std::size_t cps = starts.size() - 1;
        for (int n = shape.ngram_min; n <= shape.ngram_max; ++n) {
            if (n <= 0 || cps < static_cast<std::size_t>(n)) continue;
            for (std::size_t i = 0; i + n <= cps; ++i) {
                hash_into(text.substr(starts[i], starts[i + n] - starts[i]), shape, counts);
            }
        }
    }
    return {counts.begin(), counts.end()};
}

TrainResult train(const std::vector<LabeledExample>& examples, const ModelShape& shape,
                  const TrainConfig& config) {
    std::set<std::string> label_set;
    for (const auto& ex : examples) label_set.insert(ex.label);
    if (label_set.size() < 2) {
        throw Error("degenerate_labels", "training needs at least 2 distinct labels, got " +
                                             std::to_string(label_set.size()));
    }
    if (examples.size() < 10) {
        throw Error("too_few_examples", "training needs at least 10 examples, got " +
                                            std::to_string(examples.size()));
    }

    TrainResult result;
    ClassifierModel& model = result.model;
    model.shape = shape;
    model.labels.assign(label_set.begin(), label_set.end());
    const std::size_t L = model.labels.size();
    model.bias.assign(L, 0.0f);
    model.weights.assign(shape.bucket_count * L, 0.0f);

    std::map<std::string, std::size_t> label_index;
    for (std::size_t l = 0; l < L; ++l) label_index[model.labels[l]] = l;

    // Featurize once up front; SGD touches sparse rows only.
    struct Prepared {
        std::vector<std::pair<std::uint32_t, float>> features;
        std::size_t label;
    };
    std::vector<Prepared> prepared(examples.size());
    for (std::size_t i = 0; i < examples.size(); ++i) {
        prepared[i].features = featurize(examples[i].text, shape);
        prepared[i].label = label_index[examples[i].label];
    }

    // Deterministic split: shuffle indices, first chunk becomes the holdout.
    std::vector<std::size_t> order(prepared.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(config.seed);
    rng.shuffle(order);
    const std::size_t holdout = static_cast<std::size_t>(
        static_cast<double>(order.size()) * config.holdout_fraction);
    std::vector<std::size_t> eval(order.begin(), order.begin() + holdout);
    std::vector<std::size_t> tr(order.begin() + holdout, order.end());
    if (tr.empty()) throw Error("too_few_examples", "holdout fraction leaves no training data");

    const std::size_t total_steps = static_cast<std::size_t>(config.epochs) * tr.size();
    std::size_t step = 0;
    std::vector<double> probs(L);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(tr);
        for (std::size_t idx : tr) {
            const Prepared& ex = prepared[idx];
            const double lr =
                config.learning_rate *
                (1.0 - static_cast<double>(step) / static_cast<double>(total_steps));
            ++step;

            // Forward.
            for (std::size_t l = 0; l < L; ++l) probs[l] = model.bias[l];
            float total = 0.0f;
            for (const auto& [bucket, count] : ex.features) total += count;
            if (total > 0.0f) {
                for (const auto& [bucket, count] : ex.features) {
                    const float x = count / total;
                    const float* row =
                        model.weights.data() + static_cast<std::size_t>(bucket) * L;
                    for (std::size_t l = 0; l < L; ++l) {
                        probs[l] += static_cast<double>(x) * row[l];
                    }
                }
            }
            double zmax = *std::max_element(probs.begin(), probs.end());
            double sum = 0.0;
            for (double& v : probs) {
                v = std::exp(v - zmax);
                sum += v;
            }
            for (double& v : probs) v /= sum;

            // Backward: dz = p - onehot(y).
            for (std::size_t l = 0; l < L; ++l) {
                const double dz = probs[l] - (l == ex.label ? 1.0 : 0.0);
                model.bias[l] -= static_cast<float>(lr * dz);
            }
            if (total > 0.0f) {
                for (const auto& [bucket, count] : ex.features) {
                    const float x = count / total;
                    float* row = model.weights.data() + static_cast<std::size_t>(bucket) * L;
                    for (std::size_t l = 0; l < L; ++l) {
                        const double dz = probs[l] - (l == ex.label ? 1.0 : 0.0);
                        row[l] -= static_cast<float>(lr * dz * x);
                    }
                }
            }
        }
    }

    result.holdout_size = eval.size();
    if (eval.empty()) {
        result.holdout_accuracy = 1.0;  // vacuous
    } else {
        std::size_t correct = 0;
        for (std::size_t idx : eval) {
            const std::vector<double> p = score(model, prepared[idx].features);
            const std::size_t top =
                static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
            if (top == prepared[idx].label) ++correct;
        }
        result.holdout_accuracy =
            static_cast<double>(correct) / static_cast<double>(eval.size());
    }
    return result;
}

std::vector<std::pair<std::string, double>> predict(const ClassifierModel& model,
                                                    std::string_view text) {
    const std::vector<double> p = score(model, featurize(text, model.shape));
    std::vector<std::pair<std::string, double>> out;
    out.reserve(p.size());
    for (std::size_t l = 0; l < p.size(); ++l) out.emplace_back(model.labels[l], p[l]);
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
}

void save_model(const ClassifierModel& model, const std::string& path) {
    std::string bytes;
    bytes.reserve(64 + model.weights.size() * 4);
    bytes.append(kMagic, sizeof(kMagic));
    put_u8(bytes, kFormatVersion);
    put_u8(bytes, static_cast<std::uint8_t>(model.shape.kind));
    put_u32(bytes, static_cast<std::uint32_t>(model.shape.ngram_min));
    put_u32(bytes, static_cast<std::uint32_t>(model.shape.ngram_max));
    put_u64(bytes, model.shape.bucket_count);
    put_u32(bytes, static_cast<std::uint32_t>(model.labels.size()));
    for (const std::string& label : model.labels) {
        put_u32(bytes, static_cast<std::uint32_t>(label.size()));
        bytes += label;
    }
    put_u64(bytes, model.shape.hash_seed);
    for (float b : model.bias) put_f32(bytes, b);
    for (float w : model.weights) put_f32(bytes, w);
    write_file_atomic(path, bytes);
}

ClassifierModel load_model(const std::string& path) {
    const std::string bytes = read_file(path);
    if (bytes.size() < 6 || bytes.compare(0, 5, kMagic, 5) != 0) {
        throw Error("unrecognized_model", "bad magic in " + path);
    }
    ByteCursor cur{bytes, 5};
    const std::uint8_t version = cur.u8();
    if (version != kFormatVersion) {
        throw Error("unrecognized_model",
                    "unsupported model version " + std::to_string(version));
    }
    ClassifierModel model;
    model.version = version;
    const std::uint8_t kind = cur.u8();
    if (kind > 1) throw Error("corrupt_model", "bad feature kind");
    model.shape.kind = static_cast<FeatureKind>(kind);
    model.shape.ngram_min = static_cast<int>(cur.u32());
    model.shape.ngram_max = static_cast<int>(cur.u32());
    model.shape.bucket_count = cur.u64();
    if (model.shape.bucket_count == 0 || model.shape.bucket_count > (1ull << 30)) {
        throw Error("corrupt_model", "implausible bucket count");
    }
    const std::uint32_t label_count = cur.u32();
    if (label_count < 2 || label_count > 4096) {
        throw Error("corrupt_model", "implausible label count");
    }
    model.labels.reserve(label_count);
    for (std::uint32_t i = 0; i < label_count; ++i) {
        const std::uint32_t len = cur.u32();
        if (len > 4096) throw Error("corrupt_model", "implausible label length");
        model.labels.push_back(cur.str(len));
    }
    model.shape.hash_seed = cur.u64();
    model.bias.resize(label_count);
    for (std::uint32_t l = 0; l < label_count; ++l) model.bias[l] = cur.f32();
    const std::size_t weight_count = model.shape.bucket_count * label_count;
    cur.need(weight_count * 4);
    model.weights.resize(weight_count);
    for (std::size_t i = 0; i < weight_count; ++i) model.weights[i] = cur.f32();
    if (cur.pos != bytes.size()) {
        throw Error("corrupt_model", "trailing bytes in " + path);
    }
    return model;
}

std::vector<LabeledExample> read_labeled_examples(const std::string& path) {
    std::vector<LabeledExample> out;
    InputFile in(path);
    std::string line;
    while (in.read_line(line)) {
        std::string_view body = trim_view(line);
        if (body.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
        if (j.is_discarded() || !j.is_object()) continue;
        LabeledExample ex;
        ex.text = j.value("text", "");
        ex.label = j.value("label", "");
        if (!ex.label.empty()) out.push_back(std::move(ex));
    }
    return out;
}

void write_labeled_examples(const std::string& path,
                            const std::vector<LabeledExample>& examples) {
    OutputFile out(path);
    for (const auto& ex : examples) {
        nlohmann::json j{{"text", ex.text}, {"label", ex.label}};
        std::string line = j.dump();
        line.push_back('\n');
        out.write(line);
    }
    out.close();
}

}  // namespace curate
