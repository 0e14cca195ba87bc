#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace curate {

// Audit trail for a stage decision. kept == true iff reasons is empty.
struct FilterOutcome {
    std::string stage;
    bool kept = true;
    std::vector<std::string> reasons;

    static FilterOutcome keep(std::string stage) { return {std::move(stage), true, {}}; }
    static FilterOutcome drop(std::string stage, std::string reason) {
        return {std::move(stage), false, {std::move(reason)}};
    }

    bool operator==(const FilterOutcome&) const = default;
};

// One web page flowing through the pipeline. Optional fields stay absent
// until the owning stage fills them in.
struct Document {
    std::string id;          // dump id + warc path + record offset
    std::string url;
    std::string domain_key;  // registered domain (eTLD+1)
    std::string dump_id;
    std::string lang;        // ISO 639-1 or empty
    double lang_score = 0.0;
    std::string text;        // lines separated by single '\n', no trailing ws
    std::map<std::string, double> metrics;
    std::optional<double> quality_score;
    std::optional<std::string> domain_label;
    std::optional<double> domain_score;
    std::optional<FilterOutcome> filter;
    nlohmann::json extra;    // unknown fields, preserved on round-trip

    bool operator==(const Document&) const = default;
};

nlohmann::json document_to_json(const Document& doc);
Document document_from_json(const nlohmann::json& j);

std::string document_to_line(const Document& doc);  // one JSON object, no '\n'

// --- JSONL shard I/O -----------------------------------------------------

struct JsonlError {
    std::uint64_t line_number = 0;
    std::string message;
};

// Streaming reader; malformed lines are reported and skipped.
class JsonlReader {
public:
    explicit JsonlReader(const std::string& path);
    ~JsonlReader();

    // Returns false at end of file.
    bool next(Document& doc);

    const std::vector<JsonlError>& errors() const { return errors_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::vector<JsonlError> errors_;
};

// Atomic shard writer (temp file + rename on close).
class JsonlWriter {
public:
    explicit JsonlWriter(const std::string& path);
    ~JsonlWriter();

    void write(const Document& doc);
    void close();

    std::uint64_t docs_written() const { return docs_; }
    std::uint64_t bytes_written() const { return bytes_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::uint64_t docs_ = 0;
    std::uint64_t bytes_ = 0;
};

std::vector<Document> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const std::vector<Document>& docs);

// Shard file name inside a stage directory: 00000.jsonl.gz, 00001.jsonl.gz...
std::string shard_name(std::size_t index);

// --- Wikipedia category selection ----------------------------------------

struct WikiSelectStats {
    std::uint64_t records = 0;
    std::uint64_t emitted = 0;
    std::uint64_t missing_category = 0;
};

// Emits a Document for each record whose categories (lowercased) contain
// any keyword as a substring. Records without a category list are skipped.
std::vector<Document> select_by_category(const std::string& jsonl_path,
                                         const std::vector<std::string>& keywords,
                                         WikiSelectStats* stats = nullptr);

}  // namespace curate
