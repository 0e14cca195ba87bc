#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "curate/document.hpp"

namespace curate {

// Line-level dedup runs in two passes over shards that are partitioned by
// registered domain: pass 1 counts, per domain group, how many distinct
// documents contain each line; pass 2 strips the lines that recur across
// too many pages of the same site ("Leave a Comment" and friends).
struct LineDedupPolicy {
    int max_doc_frequency = 5;    // in more docs than this -> boilerplate
    int min_line_chars = 10;      // shorter lines are removable at 2 docs
    int min_remaining_chars = 200;  // drop the document below this
};

// Fingerprint of a line after fixed normalization (trim + ASCII lowercase).
std::uint64_t line_fingerprint(std::string_view line);

// Removal rule for a line of `line_chars` codepoints seen by `count`
// distinct documents of one group.
bool line_flagged(std::size_t line_chars, std::uint32_t count,
                  const LineDedupPolicy& policy);

// fingerprint -> distinct-document count for one domain group. Partial
// tables built from disjoint document sets merge by summing.
class LineCountTable {
public:
    LineCountTable() = default;
    explicit LineCountTable(std::string group) : group_(std::move(group)) {}

    const std::string& group() const { return group_; }
    const std::unordered_map<std::uint64_t, std::uint32_t>& counts() const {
        return counts_;
    }
    std::size_t size() const { return counts_.size(); }

    std::uint32_t count(std::uint64_t fingerprint) const;

    // Each distinct line of the document adds 1. Error "wrong_group" if the
    // document belongs to a different domain group.
    void add_document(const Document& doc);

    // Sums counts. The two tables must cover disjoint documents of the same
    // group; error "wrong_group" on a group mismatch.
    void merge(const LineCountTable& other);

    // Unchecked primitives for callers that manage grouping themselves.
    void add_fingerprint_once(std::uint64_t fingerprint) { ++counts_[fingerprint]; }
    void set_count(std::uint64_t fingerprint, std::uint32_t count) {
        counts_[fingerprint] = count;
    }

private:
    std::string group_;
    std::unordered_map<std::uint64_t, std::uint32_t> counts_;
};

// Pass 1. Groups documents by domain_key. threads <= 1 runs the serial
// reference loop; more threads build per-chunk partial tables in parallel
// and merge them, which lands on identical tables.
std::map<std::string, LineCountTable> build_line_counts(
    const std::vector<Document>& docs, int threads = 1);

// Pass 2 for one document. Every occurrence of a flagged line goes; the
// survivors keep their order. Drops the document ("line_dedup_empty") when
// fewer than min_remaining_chars codepoints survive. Error "wrong_group"
// when the table is for a different domain group.
Document apply_line_dedup(Document doc, const LineCountTable& table,
                          const LineDedupPolicy& policy);

// Pass 2 for a batch; looks up each document's group table (a missing group
// counts nothing and removes nothing). Parallel over documents.
std::vector<Document> apply_line_dedup(
    std::vector<Document> docs,
    const std::map<std::string, LineCountTable>& tables,
    const LineDedupPolicy& policy, int threads = 1);

// --- partial-table spill files -------------------------------------------

// Binary file of (group, fingerprint, count) triples sorted by group then
// fingerprint. Partial tables spill here when memory runs out; spills merge
// back via k-way streams.
void write_spill(const std::string& path,
                 const std::map<std::string, LineCountTable>& tables);
std::map<std::string, LineCountTable> read_spill(const std::string& path);

// Streaming k-way merge; counts of equal (group, fingerprint) keys sum.
void merge_spills(const std::vector<std::string>& inputs,
                  const std::string& output);

// add() documents and collect the per-group tables from finalize(); spills
// partial tables under spill_dir whenever the in-memory entry count would
// top max_table_mb and k-way merges the spills at the end.
class SpillingLineCounter {
public:
    SpillingLineCounter(std::string spill_dir, std::size_t max_table_mb);

    void add(const Document& doc);
    std::map<std::string, LineCountTable> finalize();

    std::size_t spill_files() const { return spill_paths_.size(); }

private:
    void spill();

    std::string spill_dir_;
    std::size_t entry_budget_ = 0;
    std::size_t entries_ = 0;
    std::map<std::string, LineCountTable> tables_;
    std::vector<std::string> spill_paths_;
};

// --- random-bucket baseline ------------------------------------------------

// Removal and table-size numbers for domain grouping next to the baseline
// that scatters line occurrences into random buckets and counts within each
// bucket. One global bucket removes a superset of what domain grouping
// removes; one bucket per occurrence removes nothing.
struct BucketingReport {
    std::size_t bucket_count = 0;
    std::uint64_t bucket_lines_removed = 0;  // occurrences, across all docs
    std::size_t bucket_peak_table = 0;       // largest per-bucket table
    std::uint64_t domain_lines_removed = 0;
    std::size_t domain_peak_table = 0;
};

BucketingReport compare_random_bucketing(const std::vector<Document>& docs,
                                         std::size_t bucket_count,
                                         const LineDedupPolicy& policy,
                                         std::uint64_t seed = 0);

}  // namespace curate
