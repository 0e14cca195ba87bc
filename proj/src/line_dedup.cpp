#include "curate/line_dedup.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <queue>
#include <tuple>
#include <utility>

#include "binio.hpp"
#include "curate/errors.hpp"
#include "curate/hash.hpp"
#include "curate/text.hpp"

namespace curate {

namespace {

std::string normalize_line(std::string_view line) {
    return ascii_lower(trim_view(line));
}

// Distinct (fingerprint, codepoint length) pairs of a document's lines.
std::vector<std::pair<std::uint64_t, std::size_t>> distinct_lines(
    const Document& doc) {
    std::vector<std::pair<std::uint64_t, std::size_t>> out;
    for (const std::string& line : split_lines(doc.text)) {
        const std::string norm = normalize_line(line);
        out.emplace_back(fnv1a64(norm), utf8_length(norm));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::uint64_t line_fingerprint(std::string_view line) {
    return fnv1a64(normalize_line(line));
}

bool line_flagged(std::size_t line_chars, std::uint32_t count,
                  const LineDedupPolicy& policy) {
    if (count > static_cast<std::uint32_t>(policy.max_doc_frequency)) return true;
    return line_chars < static_cast<std::size_t>(policy.min_line_chars) &&
           count >= 2;
}

std::uint32_t LineCountTable::count(std::uint64_t fingerprint) const {
    auto it = counts_.find(fingerprint);
    return it == counts_.end() ? 0 : it->second;
}

void LineCountTable::add_document(const Document& doc) {
    if (doc.domain_key != group_) {
        throw Error("wrong_group", "document " + doc.id + " belongs to group '" +
                                       doc.domain_key + "', table is '" + group_ + "'");
    }
    for (const auto& [fp, len] : distinct_lines(doc)) {
        (void)len;
        ++counts_[fp];
    }
}

void LineCountTable::merge(const LineCountTable& other) {
    if (other.group_ != group_) {
        throw Error("wrong_group", "cannot merge table for group '" + other.group_ +
                                       "' into '" + group_ + "'");
    }
    for (const auto& [fp, count] : other.counts_) counts_[fp] += count;
}

std::map<std::string, LineCountTable> build_line_counts(
    const std::vector<Document>& docs, int threads) {
    const auto build_range = [&](std::size_t begin, std::size_t end) {
        std::map<std::string, LineCountTable> tables;
        for (std::size_t i = begin; i < end; ++i) {
            auto [it, inserted] =
                tables.try_emplace(docs[i].domain_key, docs[i].domain_key);
            (void)inserted;
            it->second.add_document(docs[i]);
        }
        return tables;
    };

    if (threads <= 1 || docs.size() < 2) return build_range(0, docs.size());

    const std::size_t chunks =
        std::min<std::size_t>(static_cast<std::size_t>(threads), docs.size());
    std::vector<std::map<std::string, LineCountTable>> partials(chunks);
#ifdef _OPENMP
#pragma omp parallel for num_threads(static_cast<int>(chunks)) schedule(static)
#endif
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = docs.size() * c / chunks;
        const std::size_t end = docs.size() * (c + 1) / chunks;
        partials[c] = build_range(begin, end);
    }

    // Partials cover disjoint documents, so the merge just sums.
    std::map<std::string, LineCountTable> tables = std::move(partials[0]);
    for (std::size_t c = 1; c < chunks; ++c) {
        for (auto& [group, partial] : partials[c]) {
            auto [it, inserted] = tables.try_emplace(group, group);
            (void)inserted;
            it->second.merge(partial);
        }
    }
    return tables;
}

Document apply_line_dedup(Document doc, const LineCountTable& table,
                          const LineDedupPolicy& policy) {
    if (doc.domain_key != table.group()) {
        throw Error("wrong_group", "document " + doc.id + " belongs to group '" +
                                       doc.domain_key + "', table is '" +
                                       table.group() + "'");
    }
    std::string rebuilt;
    for (const std::string& line : split_lines(doc.text)) {
        const std::string norm = normalize_line(line);
        if (line_flagged(utf8_length(norm), table.count(fnv1a64(norm)), policy)) {
            continue;
        }
        if (!rebuilt.empty()) rebuilt.push_back('\n');
        rebuilt += line;
    }
    const std::size_t remaining = utf8_length(rebuilt);
    doc.text = std::move(rebuilt);
    if (remaining < static_cast<std::size_t>(policy.min_remaining_chars)) {
        doc.filter = FilterOutcome::drop("linededup", "line_dedup_empty");
    } else {
        doc.filter = FilterOutcome::keep("linededup");
    }
    return doc;
}

std::vector<Document> apply_line_dedup(
    std::vector<Document> docs,
    const std::map<std::string, LineCountTable>& tables,
    const LineDedupPolicy& policy, int threads) {
    const auto table_for = [&](const Document& doc) -> const LineCountTable* {
        auto it = tables.find(doc.domain_key);
        return it == tables.end() ? nullptr : &it->second;
    };
    const auto apply_one = [&](Document& doc) {
        const LineCountTable* table = table_for(doc);
        if (table == nullptr) {
            LineCountTable blank(doc.domain_key);
            doc = apply_line_dedup(std::move(doc), blank, policy);
        } else {
            doc = apply_line_dedup(std::move(doc), *table, policy);
        }
    };

    if (threads <= 1) {
        for (Document& doc : docs) apply_one(doc);
        return docs;
    }
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(static)
#endif
    for (std::size_t i = 0; i < docs.size(); ++i) apply_one(docs[i]);
    return docs;
}

// --- spill files -----------------------------------------------------------

namespace {

constexpr char kSpillMagic[4] = {'L', 'D', 'S', 'P'};
constexpr std::uint32_t kSpillVersion = 1;

using binio::get_u32;
using binio::get_u64;
using binio::put_u32;
using binio::put_u64;

struct SpillEntry {
    std::string group;
    std::uint64_t fingerprint = 0;
    std::uint32_t count = 0;
};

void write_entry(std::ostream& out, const SpillEntry& e) {
    put_u32(out, static_cast<std::uint32_t>(e.group.size()));
    out.write(e.group.data(), static_cast<std::streamsize>(e.group.size()));
    put_u64(out, e.fingerprint);
    put_u32(out, e.count);
}

// Sequential reader over one spill file.
class SpillReader {
public:
    explicit SpillReader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
        if (!in_) throw Error("spill_io", "cannot open spill file " + path);
        char magic[4];
        std::uint32_t version = 0;
        if (!in_.read(magic, 4) || !get_u32(in_, version) ||
            !std::equal(magic, magic + 4, kSpillMagic) || version != kSpillVersion) {
            throw Error("corrupt_spill", "bad spill header in " + path);
        }
    }

    bool next(SpillEntry& e) {
        std::uint32_t group_len = 0;
        if (!get_u32(in_, group_len)) {
            if (in_.eof()) return false;
            throw Error("corrupt_spill", "truncated spill file " + path_);
        }
        e.group.resize(group_len);
        if (group_len > 0 &&
            !in_.read(e.group.data(), static_cast<std::streamsize>(group_len))) {
            throw Error("corrupt_spill", "truncated spill file " + path_);
        }
        if (!get_u64(in_, e.fingerprint) || !get_u32(in_, e.count)) {
            throw Error("corrupt_spill", "truncated spill file " + path_);
        }
        return true;
    }

private:
    std::string path_;
    std::ifstream in_;
};

class SpillWriter {
public:
    explicit SpillWriter(std::string path)
        : path_(std::move(path)), tmp_(path_ + ".tmp"), out_(tmp_, std::ios::binary) {
        if (!out_) throw Error("spill_io", "cannot write spill file " + path_);
        out_.write(kSpillMagic, 4);
        put_u32(out_, kSpillVersion);
    }

    void write(const SpillEntry& e) { write_entry(out_, e); }

    void close() {
        out_.close();
        if (!out_) throw Error("spill_io", "failed writing spill file " + path_);
        std::filesystem::rename(tmp_, path_);
    }

private:
    std::string path_;
    std::string tmp_;
    std::ofstream out_;
};

}  // namespace

void write_spill(const std::string& path,
                 const std::map<std::string, LineCountTable>& tables) {
    SpillWriter writer(path);
    for (const auto& [group, table] : tables) {
        std::vector<std::pair<std::uint64_t, std::uint32_t>> rows(
            table.counts().begin(), table.counts().end());
        std::sort(rows.begin(), rows.end());
        for (const auto& [fp, count] : rows) writer.write({group, fp, count});
    }
    writer.close();
}

std::map<std::string, LineCountTable> read_spill(const std::string& path) {
    SpillReader reader(path);
    std::map<std::string, LineCountTable> tables;
    SpillEntry e;
    while (reader.next(e)) {
        auto [it, inserted] = tables.try_emplace(e.group, e.group);
        (void)inserted;
        it->second.set_count(e.fingerprint, e.count);
    }
    return tables;
}

void merge_spills(const std::vector<std::string>& inputs,
                  const std::string& output) {
    struct Head {
        SpillEntry entry;
        std::size_t stream;
    };
    const auto later = [](const Head& a, const Head& b) {
        return std::tie(a.entry.group, a.entry.fingerprint) >
               std::tie(b.entry.group, b.entry.fingerprint);
    };
    std::priority_queue<Head, std::vector<Head>, decltype(later)> heads(later);

    std::vector<std::unique_ptr<SpillReader>> readers;
    readers.reserve(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        readers.push_back(std::make_unique<SpillReader>(inputs[i]));
        SpillEntry e;
        if (readers.back()->next(e)) heads.push({std::move(e), i});
    }

    SpillWriter writer(output);
    while (!heads.empty()) {
        SpillEntry merged = heads.top().entry;
        std::uint64_t total = 0;
        while (!heads.empty() && heads.top().entry.group == merged.group &&
               heads.top().entry.fingerprint == merged.fingerprint) {
            Head head = heads.top();
            heads.pop();
            total += head.entry.count;
            SpillEntry e;
            if (readers[head.stream]->next(e)) heads.push({std::move(e), head.stream});
        }
        merged.count = static_cast<std::uint32_t>(
            std::min<std::uint64_t>(total, 0xffffffffull));
        writer.write(merged);
    }
    writer.close();
}

// --- spilling counter --------------------------------------------------------

namespace {
// Rough per-entry footprint of the in-memory hash tables; used only to turn
// the MB budget into an entry budget.
constexpr std::size_t kBytesPerEntry = 64;
}  // namespace

SpillingLineCounter::SpillingLineCounter(std::string spill_dir,
                                         std::size_t max_table_mb)
    : spill_dir_(std::move(spill_dir)) {
    entry_budget_ = std::max<std::size_t>(1, max_table_mb * 1024 * 1024 / kBytesPerEntry);
    std::filesystem::create_directories(spill_dir_);
}

void SpillingLineCounter::add(const Document& doc) {
    auto [it, inserted] = tables_.try_emplace(doc.domain_key, doc.domain_key);
    (void)inserted;
    const std::size_t before = it->second.size();
    it->second.add_document(doc);
    entries_ += it->second.size() - before;
    if (entries_ > entry_budget_) spill();
}

void SpillingLineCounter::spill() {
    if (tables_.empty()) return;
    const std::string path =
        (std::filesystem::path(spill_dir_) /
         ("partial-" + std::to_string(spill_paths_.size()) + ".spill"))
            .string();
    write_spill(path, tables_);
    spill_paths_.push_back(path);
    tables_.clear();
    entries_ = 0;
}

std::map<std::string, LineCountTable> SpillingLineCounter::finalize() {
    if (spill_paths_.empty()) return std::move(tables_);
    spill();
    const std::string merged =
        (std::filesystem::path(spill_dir_) / "merged.spill").string();
    merge_spills(spill_paths_, merged);
    for (const std::string& path : spill_paths_) std::filesystem::remove(path);
    spill_paths_.clear();
    auto tables = read_spill(merged);
    std::filesystem::remove(merged);
    return tables;
}

// --- random-bucket baseline ---------------------------------------------------

BucketingReport compare_random_bucketing(const std::vector<Document>& docs,
                                         std::size_t bucket_count,
                                         const LineDedupPolicy& policy,
                                         std::uint64_t seed) {
    if (bucket_count < 1) {
        throw ConfigError("bad_bucket_count", "bucket_count must be >= 1");
    }
    BucketingReport report;
    report.bucket_count = bucket_count;

    // Domain-grouped side: the real pipeline.
    {
        const auto tables = build_line_counts(docs);
        for (const auto& [group, table] : tables) {
            report.domain_peak_table = std::max(report.domain_peak_table, table.size());
        }
        for (const Document& doc : docs) {
            const LineCountTable& table = tables.at(doc.domain_key);
            for (const std::string& line : split_lines(doc.text)) {
                const std::string norm = normalize_line(line);
                if (line_flagged(utf8_length(norm), table.count(fnv1a64(norm)),
                                 policy)) {
                    ++report.domain_lines_removed;
                }
            }
        }
    }

    // Baseline: scatter every line occurrence into a random bucket and run
    // the same two passes with buckets as the groups. One bucket degenerates
    // to global counting; one bucket per occurrence counts everything once.
    struct Occurrence {
        std::uint32_t doc = 0;
        std::uint64_t fingerprint = 0;
        std::uint32_t chars = 0;
    };
    std::vector<Occurrence> occurrences;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (const std::string& line : split_lines(docs[d].text)) {
            const std::string norm = normalize_line(line);
            occurrences.push_back({static_cast<std::uint32_t>(d), fnv1a64(norm),
                                   static_cast<std::uint32_t>(utf8_length(norm))});
        }
    }

    std::vector<std::size_t> position(occurrences.size());
    for (std::size_t i = 0; i < position.size(); ++i) position[i] = i;
    Rng rng(seed);
    rng.shuffle(position);
    std::vector<std::size_t> bucket_of(occurrences.size());
    for (std::size_t i = 0; i < occurrences.size(); ++i) {
        bucket_of[i] = position[i] % bucket_count;
    }

    // Pass 1 per bucket: distinct documents per fingerprint. Occurrences are
    // visited in document order, so a (bucket, fingerprint) pair sees doc ids
    // non-decreasing and "new doc" is a simple last-id check.
    struct Cell {
        std::uint32_t count = 0;
        std::uint32_t last_doc = 0;
        bool seen = false;
    };
    std::unordered_map<std::uint64_t, std::unordered_map<std::uint64_t, Cell>> buckets;
    for (std::size_t i = 0; i < occurrences.size(); ++i) {
        Cell& cell = buckets[bucket_of[i]][occurrences[i].fingerprint];
        if (!cell.seen || cell.last_doc != occurrences[i].doc) {
            ++cell.count;
            cell.last_doc = occurrences[i].doc;
            cell.seen = true;
        }
    }
    for (const auto& [bucket, table] : buckets) {
        report.bucket_peak_table = std::max(report.bucket_peak_table, table.size());
    }

    // Pass 2: each occurrence consults its own bucket.
    for (std::size_t i = 0; i < occurrences.size(); ++i) {
        const Cell& cell = buckets[bucket_of[i]][occurrences[i].fingerprint];
        if (line_flagged(occurrences[i].chars, cell.count, policy)) {
            ++report.bucket_lines_removed;
        }
    }
    return report;
}

}  // namespace curate
