#include "curate/minhash.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <unordered_map>

#include "binio.hpp"
#include "curate/errors.hpp"
#include "curate/hash.hpp"
#include "curate/text.hpp"

namespace curate {

namespace {

constexpr std::uint64_t kNoValue = std::numeric_limits<std::uint64_t>::max();

// One salt per permutation, derived from the seed alone so every document
// sees the same functions. Each permutation is the splitmix64 step applied
// to shingle ^ salt: bijective on 64 bits with strong mixing, so minima
// behave like an unbiased sample.
struct Permutations {
    std::vector<std::uint64_t> salt;

    Permutations(int k, std::uint64_t seed) : salt(k) {
        Rng rng(seed);
        for (int i = 0; i < k; ++i) salt[i] = rng.next();
    }

    std::uint64_t apply(int i, std::uint64_t shingle_hash) const {
        std::uint64_t state = shingle_hash ^ salt[static_cast<std::size_t>(i)];
        return splitmix64_next(state);
    }
};

std::uint64_t band_hash(const MinHashSignature& sig, int band, int rows) {
    std::uint64_t h = static_cast<std::uint64_t>(band);
    for (int row = 0; row < rows; ++row) {
        h = fnv1a64_u64(sig.values[static_cast<std::size_t>(band) * rows + row], h);
    }
    return h;
}

struct UnionFind {
    std::vector<std::uint32_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::uint32_t x, std::uint32_t y) {
        x = find(x);
        y = find(y);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
};

}  // namespace

void LshParams::validate() const {
    if (shingle_words < 1 || num_perms < 1 || bands < 1 || rows < 1 ||
        bands * rows != num_perms) {
        throw ConfigError("bad_lsh_params",
                          "need shingle_words >= 1 and bands * rows == num_perms");
    }
    if (jaccard_threshold < 0.0 || jaccard_threshold > 1.0) {
        throw ConfigError("bad_lsh_params", "jaccard_threshold must be in [0, 1]");
    }
}

double LshParams::implied_threshold() const {
    return std::pow(1.0 / bands, 1.0 / rows);
}

std::vector<std::uint64_t> shingle(const std::vector<std::string>& words, int n) {
    std::vector<std::uint64_t> out;
    if (n < 1 || words.size() < static_cast<std::size_t>(n)) return out;
    out.reserve(words.size() - n + 1);
    std::string window;
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
        window.clear();
        for (int j = 0; j < n; ++j) {
            if (j > 0) window.push_back(' ');
            window += ascii_lower(words[i + j]);
        }
        out.push_back(fnv1a64(window));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint64_t> shingle_text(std::string_view text, int n) {
    return shingle(tokenize_words_script_aware(text), n);
}

MinHashSignature signature(std::string doc_id,
                           const std::vector<std::uint64_t>& shingles,
                           const LshParams& params) {
    params.validate();
    MinHashSignature sig;
    sig.doc_id = std::move(doc_id);
    sig.shingle_count = static_cast<std::uint32_t>(shingles.size());
    sig.values.assign(static_cast<std::size_t>(params.num_perms), kNoValue);
    static thread_local std::uint64_t cached_seed = 0;
    static thread_local int cached_k = 0;
    static thread_local std::unique_ptr<Permutations> cached;
    if (!cached || cached_seed != params.seed || cached_k != params.num_perms) {
        cached = std::make_unique<Permutations>(params.num_perms, params.seed);
        cached_seed = params.seed;
        cached_k = params.num_perms;
    }
    for (std::uint64_t s : shingles) {
        for (int i = 0; i < params.num_perms; ++i) {
            const std::uint64_t v = cached->apply(i, s);
            if (v < sig.values[static_cast<std::size_t>(i)]) {
                sig.values[static_cast<std::size_t>(i)] = v;
            }
        }
    }
    return sig;
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
    if (!a.usable() || !b.usable() || a.values.size() != b.values.size() ||
        a.values.empty()) {
        return 0.0;
    }
    std::size_t matches = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.values[i] == b.values[i]) ++matches;
    }
    return static_cast<double>(matches) / static_cast<double>(a.values.size());
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> lsh_candidates(
    const std::vector<MinHashSignature>& signatures, const LshParams& params,
    int partitions) {
    params.validate();
    if (partitions < 1) {
        throw ConfigError("bad_partitions", "partitions must be >= 1");
    }
    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> postings;
    for (int part = 0; part < partitions; ++part) {
        postings.clear();
        for (std::size_t i = 0; i < signatures.size(); ++i) {
            if (!signatures[i].usable()) continue;
            for (int band = 0; band < params.bands; ++band) {
                const std::uint64_t h = band_hash(signatures[i], band, params.rows);
                if (h % static_cast<std::uint64_t>(partitions) !=
                    static_cast<std::uint64_t>(part)) {
                    continue;
                }
                postings[h].push_back(static_cast<std::uint32_t>(i));
            }
        }
        for (const auto& [h, bucket] : postings) {
            for (std::size_t x = 0; x < bucket.size(); ++x) {
                for (std::size_t y = x + 1; y < bucket.size(); ++y) {
                    if (bucket[x] != bucket[y]) {
                        pairs.emplace(std::min(bucket[x], bucket[y]),
                                      std::max(bucket[x], bucket[y]));
                    }
                }
            }
        }
    }
    return {pairs.begin(), pairs.end()};
}

std::vector<DupCluster> cluster_and_resolve(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& candidates,
    const std::vector<MinHashSignature>& signatures,
    const std::map<std::string, std::size_t>& text_chars,
    const LshParams& params) {
    params.validate();
    UnionFind uf(signatures.size());
    for (const auto& [i, j] : candidates) {
        if (estimate_jaccard(signatures[i], signatures[j]) >=
            params.jaccard_threshold) {
            uf.unite(i, j);
        }
    }

    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> groups;
    for (std::uint32_t i = 0; i < signatures.size(); ++i) {
        groups[uf.find(i)].push_back(i);
    }

    const auto chars_of = [&](const std::string& id) -> std::size_t {
        auto it = text_chars.find(id);
        return it == text_chars.end() ? 0 : it->second;
    };

    std::vector<DupCluster> clusters;
    for (const auto& [root, members] : groups) {
        if (members.size() < 2) continue;
        DupCluster cluster;
        for (std::uint32_t i : members) cluster.members.push_back(signatures[i].doc_id);
        std::sort(cluster.members.begin(), cluster.members.end());
        cluster.kept = cluster.members.front();
        for (const std::string& id : cluster.members) {
            if (chars_of(id) > chars_of(cluster.kept)) cluster.kept = id;
        }
        clusters.push_back(std::move(cluster));
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const DupCluster& a, const DupCluster& b) { return a.kept < b.kept; });
    return clusters;
}

std::vector<Document> dedup_documents(std::vector<Document> docs,
                                      const LshParams& params, int threads,
                                      int partitions) {
    params.validate();
    std::vector<MinHashSignature> signatures(docs.size());
#ifdef _OPENMP
#pragma omp parallel for num_threads(std::max(1, threads)) schedule(static)
#endif
    for (std::size_t i = 0; i < docs.size(); ++i) {
        signatures[i] =
            signature(docs[i].id, shingle_text(docs[i].text, params.shingle_words),
                      params);
    }
    (void)threads;

    std::map<std::string, std::size_t> text_chars;
    for (const Document& doc : docs) text_chars[doc.id] = utf8_length(doc.text);

    const auto candidates = lsh_candidates(signatures, params, partitions);
    const auto clusters = cluster_and_resolve(candidates, signatures, text_chars, params);

    std::unordered_map<std::string, const DupCluster*> cluster_of;
    for (const DupCluster& cluster : clusters) {
        for (const std::string& id : cluster.members) cluster_of[id] = &cluster;
    }

    for (std::size_t i = 0; i < docs.size(); ++i) {
        Document& doc = docs[i];
        auto it = cluster_of.find(doc.id);
        if (it != cluster_of.end() && it->second->kept != doc.id) {
            doc.filter = FilterOutcome::drop("dedup", "near_duplicate_of:" + it->second->kept);
        } else {
            doc.filter = FilterOutcome::keep("dedup");
            if (!signatures[i].usable()) {
                doc.extra["dedup_flag"] = "too_short_for_minhash";
            }
        }
    }
    return docs;
}

// --- signature spill ---------------------------------------------------------

namespace {
constexpr char kSigMagic[4] = {'M', 'H', 'S', 'G'};
constexpr std::uint32_t kSigVersion = 1;
}  // namespace

void write_signatures(const std::string& path,
                      const std::vector<MinHashSignature>& signatures) {
    const std::string tmp = path + ".tmp";
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("spill_io", "cannot write signature file " + path);
    out.write(kSigMagic, 4);
    binio::put_u32(out, kSigVersion);
    for (const MinHashSignature& sig : signatures) {
        binio::put_u32(out, static_cast<std::uint32_t>(sig.doc_id.size()));
        out.write(sig.doc_id.data(), static_cast<std::streamsize>(sig.doc_id.size()));
        binio::put_u32(out, sig.shingle_count);
        binio::put_u32(out, static_cast<std::uint32_t>(sig.values.size()));
        for (std::uint64_t v : sig.values) binio::put_u64(out, v);
    }
    out.close();
    if (!out) throw Error("spill_io", "failed writing signature file " + path);
    std::filesystem::rename(tmp, path);
}

std::vector<MinHashSignature> read_signatures(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("spill_io", "cannot open signature file " + path);
    char magic[4];
    std::uint32_t version = 0;
    if (!in.read(magic, 4) || !binio::get_u32(in, version) ||
        !std::equal(magic, magic + 4, kSigMagic) || version != kSigVersion) {
        throw Error("corrupt_spill", "bad signature header in " + path);
    }
    std::vector<MinHashSignature> signatures;
    std::uint32_t id_len = 0;
    while (binio::get_u32(in, id_len)) {
        MinHashSignature sig;
        sig.doc_id.resize(id_len);
        if (id_len > 0 &&
            !in.read(sig.doc_id.data(), static_cast<std::streamsize>(id_len))) {
            throw Error("corrupt_spill", "truncated signature file " + path);
        }
        std::uint32_t k = 0;
        if (!binio::get_u32(in, sig.shingle_count) || !binio::get_u32(in, k)) {
            throw Error("corrupt_spill", "truncated signature file " + path);
        }
        sig.values.resize(k);
        for (std::uint32_t i = 0; i < k; ++i) {
            if (!binio::get_u64(in, sig.values[i])) {
                throw Error("corrupt_spill", "truncated signature file " + path);
            }
        }
        signatures.push_back(std::move(sig));
    }
    return signatures;
}

}  // namespace curate
