#include "curate/document.hpp"

#include <array>
#include <cstdio>

#include "curate/errors.hpp"
#include "curate/gzip.hpp"
#include "curate/text.hpp"

namespace curate {

namespace {

using nlohmann::json;

constexpr std::array<const char*, 12> kKnownFields = {
    "id", "url", "domain_key", "dump_id", "lang", "lang_score",
    "text", "metrics", "quality_score", "domain_label", "domain_score", "filter",
};

bool is_known_field(const std::string& key) {
    for (const char* f : kKnownFields) {
        if (key == f) return true;
    }
    return false;
}

}  // namespace

json document_to_json(const Document& doc) {
    json j;
    j["id"] = doc.id;
    j["url"] = doc.url;
    j["domain_key"] = doc.domain_key;
    j["dump_id"] = doc.dump_id;
    j["lang"] = doc.lang;
    j["lang_score"] = doc.lang_score;
    j["text"] = doc.text;
    j["metrics"] = doc.metrics;
    if (doc.quality_score) j["quality_score"] = *doc.quality_score;
    if (doc.domain_label) j["domain_label"] = *doc.domain_label;
    if (doc.domain_score) j["domain_score"] = *doc.domain_score;
    if (doc.filter) {
        j["filter"] = {{"stage", doc.filter->stage},
                       {"kept", doc.filter->kept},
                       {"reasons", doc.filter->reasons}};
    }
    if (doc.extra.is_object()) {
        for (const auto& [key, value] : doc.extra.items()) j[key] = value;
    }
    return j;
}

Document document_from_json(const json& j) {
    if (!j.is_object()) throw Error("bad_document", "document is not a JSON object");
    Document doc;
    doc.id = j.value("id", "");
    doc.url = j.value("url", "");
    doc.domain_key = j.value("domain_key", "");
    doc.dump_id = j.value("dump_id", "");
    doc.lang = j.value("lang", "");
    doc.lang_score = j.value("lang_score", 0.0);
    doc.text = j.value("text", "");
    if (j.contains("metrics")) {
        doc.metrics = j.at("metrics").get<std::map<std::string, double>>();
    }
    if (j.contains("quality_score")) doc.quality_score = j.at("quality_score").get<double>();
    if (j.contains("domain_label")) doc.domain_label = j.at("domain_label").get<std::string>();
    if (j.contains("domain_score")) doc.domain_score = j.at("domain_score").get<double>();
    if (j.contains("filter")) {
        const json& f = j.at("filter");
        FilterOutcome outcome;
        outcome.stage = f.value("stage", "");
        outcome.kept = f.value("kept", true);
        if (f.contains("reasons")) {
            outcome.reasons = f.at("reasons").get<std::vector<std::string>>();
        }
        doc.filter = std::move(outcome);
    }
    for (const auto& [key, value] : j.items()) {
        if (!is_known_field(key)) doc.extra[key] = value;
    }
    return doc;
}

std::string document_to_line(const Document& doc) {
    return document_to_json(doc).dump();
}

// --- JsonlReader ----------------------------------------------------------

struct JsonlReader::Impl {
    InputFile in;
    std::uint64_t line_number = 0;
    explicit Impl(const std::string& path) : in(path) {}
};

JsonlReader::JsonlReader(const std::string& path) : impl_(new Impl(path)) {}
JsonlReader::~JsonlReader() = default;

bool JsonlReader::next(Document& doc) {
    std::string line;
    while (impl_->in.read_line(line)) {
        ++impl_->line_number;
        std::string_view body = trim_view(line);
        if (body.empty()) continue;
        json j = json::parse(body, nullptr, false);
        if (j.is_discarded()) {
            errors_.push_back({impl_->line_number, "malformed JSON"});
            continue;
        }
        try {
            doc = document_from_json(j);
            return true;
        } catch (const std::exception& e) {
            errors_.push_back({impl_->line_number, e.what()});
        }
    }
    return false;
}

// --- JsonlWriter ----------------------------------------------------------

struct JsonlWriter::Impl {
    OutputFile out;
    explicit Impl(const std::string& path) : out(path) {}
};

JsonlWriter::JsonlWriter(const std::string& path) : impl_(new Impl(path)) {}
JsonlWriter::~JsonlWriter() = default;

void JsonlWriter::write(const Document& doc) {
    std::string line = document_to_line(doc);
    line.push_back('\n');
    impl_->out.write(line);
    ++docs_;
    bytes_ += line.size();
}

void JsonlWriter::close() { impl_->out.close(); }

std::vector<Document> read_jsonl(const std::string& path) {
    JsonlReader reader(path);
    std::vector<Document> docs;
    Document doc;
    while (reader.next(doc)) docs.push_back(std::move(doc));
    return docs;
}

void write_jsonl(const std::string& path, const std::vector<Document>& docs) {
    JsonlWriter writer(path);
    for (const Document& doc : docs) writer.write(doc);
    writer.close();
}

std::string shard_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%05zu.jsonl.gz", index);
    return buf;
}

// --- Wikipedia category selection ------------------------------------------

std::vector<Document> select_by_category(const std::string& jsonl_path,
                                         const std::vector<std::string>& keywords,
                                         WikiSelectStats* stats) {
    WikiSelectStats local;
    std::vector<Document> out;
    InputFile in(jsonl_path);
    std::string line;
    std::uint64_t line_number = 0;
    while (in.read_line(line)) {
        ++line_number;
        std::string_view body = trim_view(line);
        if (body.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
        if (j.is_discarded() || !j.is_object()) continue;
        // Cirrus dumps interleave {"index": ...} action lines; skip them.
        if (j.contains("index") && !j.contains("text")) continue;
        ++local.records;
        if (!j.contains("category") || !j.at("category").is_array()) {
            ++local.missing_category;
            continue;
        }
        bool match = false;
        for (const auto& cat : j.at("category")) {
            if (!cat.is_string()) continue;
            std::string lowered = ascii_lower(cat.get<std::string>());
            for (const std::string& kw : keywords) {
                if (lowered.find(kw) != std::string::npos) {
                    match = true;
                    break;
                }
            }
            if (match) break;
        }
        if (!match) continue;
        Document doc;
        doc.id = "wiki:" + std::to_string(line_number);
        if (j.contains("title") && j.at("title").is_string()) {
            doc.extra["title"] = j.at("title");
        }
        doc.text = j.value("text", "");
        ++local.emitted;
        out.push_back(std::move(doc));
    }
    if (stats) *stats = local;
    return out;
}

}  // namespace curate
