#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curate/document.hpp"

namespace curate {

// Document-level near-duplicate removal: MinHash signatures, banded LSH for
// candidate pairs, union-find clustering, one survivor per cluster. Runs
// independently per dump.
struct LshParams {
    int shingle_words = 5;
    int num_perms = 128;   // k
    int bands = 16;        // b
    int rows = 8;          // r; b * r must equal k
    double jaccard_threshold = 0.7;
    std::uint64_t seed = 0;

    // ConfigError "bad_lsh_params" unless b * r == k and everything is > 0.
    void validate() const;

    // Jaccard where one-band collision odds reach 50%: (1/b)^(1/r),
    // about 0.707 at the defaults.
    double implied_threshold() const;
};

struct MinHashSignature {
    std::string doc_id;
    std::vector<std::uint64_t> values;  // always exactly k entries
    std::uint32_t shingle_count = 0;

    // Zero shingles leaves the all-max sentinel; such documents skip dedup.
    bool usable() const { return shingle_count > 0; }
};

// Hashes of every n-word window after ASCII lowercasing, sorted and
// deduplicated. Fewer than n words yields an empty set.
std::vector<std::uint64_t> shingle(const std::vector<std::string>& words, int n);

// shingle() over script-aware tokens of the text, so no-space scripts
// shingle per character.
std::vector<std::uint64_t> shingle_text(std::string_view text, int n);

// k seeded 64-bit permutations (splitmix64 mix of shingle ^ salt_i); value i
// is the minimum of permutation i over all shingles.
MinHashSignature signature(std::string doc_id,
                           const std::vector<std::uint64_t>& shingles,
                           const LshParams& params);

// Fraction of matching positions; 0 when either signature is unusable.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

// Unordered index pairs colliding on at least one band, each emitted once,
// sorted. Posting lists are processed in `partitions` passes keyed by
// band-hash range so memory stays bounded; the pair set is identical for
// any partition count.
std::vector<std::pair<std::uint32_t, std::uint32_t>> lsh_candidates(
    const std::vector<MinHashSignature>& signatures, const LshParams& params,
    int partitions = 1);

struct DupCluster {
    std::vector<std::string> members;  // sorted doc ids, size >= 2
    std::string kept;                  // longest text, ties to smallest id
};

// Verifies candidates by estimated Jaccard, unions the survivors into
// clusters, and picks each cluster's keeper. text_chars maps doc_id to
// codepoint length for the survivor rule.
std::vector<DupCluster> cluster_and_resolve(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& candidates,
    const std::vector<MinHashSignature>& signatures,
    const std::map<std::string, std::size_t>& text_chars,
    const LshParams& params);

// The whole stage for one dump: signatures (parallel over documents),
// candidates, clusters, then keep/drop marks. Non-survivors drop with
// "near_duplicate_of:<kept id>"; documents too short to shingle keep a
// "too_short_for_minhash" note in extra.
std::vector<Document> dedup_documents(std::vector<Document> docs,
                                      const LshParams& params, int threads = 1,
                                      int partitions = 1);

// Binary signature spill: length-prefixed doc_id, shingle_count, k, then k
// little-endian values per record.
void write_signatures(const std::string& path,
                      const std::vector<MinHashSignature>& signatures);
std::vector<MinHashSignature> read_signatures(const std::string& path);

}  // namespace curate
