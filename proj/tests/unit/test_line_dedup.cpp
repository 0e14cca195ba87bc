#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "curate/errors.hpp"
#include "curate/hash.hpp"
#include "curate/line_dedup.hpp"
#include "curate/text.hpp"
#include "support/fixtures.hpp"
#include "support/temp_dir.hpp"

using namespace curate;
using curate::testing::TempDir;
namespace fx = curate::testing::fixtures;

namespace {

Document site_doc(const std::string& site, int page, std::string_view lang,
                  Rng& rng, int lines = 8) {
    Document doc = fx::make_document(site + "-" + std::to_string(page),
                                     "https://" + site + "/page" + std::to_string(page),
                                     lang, "other", rng, lines);
    doc.domain_key = site;
    return doc;
}

// Plants `line` into every document, two body lines in.
void plant(std::vector<Document>& docs, const std::string& line) {
    for (Document& doc : docs) {
        std::vector<std::string> lines = split_lines(doc.text);
        lines.insert(lines.begin() + std::min<std::size_t>(2, lines.size()), line);
        std::string text;
        for (const std::string& l : lines) {
            if (!text.empty()) text.push_back('\n');
            text += l;
        }
        doc.text = text;
    }
}

bool same_tables(const std::map<std::string, LineCountTable>& a,
                 const std::map<std::string, LineCountTable>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [group, table] : a) {
        auto it = b.find(group);
        if (it == b.end()) return false;
        if (it->second.group() != table.group()) return false;
        if (it->second.counts() != table.counts()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("fingerprints normalize case and surrounding space") {
    CHECK(line_fingerprint("  Leave a Comment ") == line_fingerprint("leave a comment"));
    CHECK(line_fingerprint("Leave a Comment") == fnv1a64("leave a comment"));
    CHECK(line_fingerprint("leave a comment") != line_fingerprint("leave a comments"));
}

TEST_CASE("flag rule: frequency threshold and the short-line fast path") {
    const LineDedupPolicy policy;  // max 5, short < 10 chars
    CHECK_FALSE(line_flagged(20, 5, policy));
    CHECK(line_flagged(20, 6, policy));
    // 9-codepoint line: removable as soon as two documents carry it.
    CHECK(line_flagged(9, 2, policy));
    CHECK_FALSE(line_flagged(9, 1, policy));
    CHECK_FALSE(line_flagged(10, 2, policy));
}

TEST_CASE("counting is per distinct document") {
    Document doc;
    doc.id = "d1";
    doc.domain_key = "site-a.example";
    doc.text = "Leave a Comment\nsome body text here\nLeave a Comment";
    LineCountTable table("site-a.example");
    table.add_document(doc);
    CHECK(table.count(line_fingerprint("Leave a Comment")) == 1);

    Document other = doc;
    other.id = "d2";
    table.add_document(other);
    CHECK(table.count(line_fingerprint("leave a comment")) == 2);

    Document stranger = doc;
    stranger.domain_key = "site-b.example";
    CHECK_THROWS_WITH_AS(table.add_document(stranger), doctest::Contains("site-b"),
                         Error);
}

TEST_CASE("partial tables merge by summing") {
    const std::uint64_t fp = line_fingerprint("skip to main content");
    LineCountTable left("g");
    LineCountTable right("g");
    left.set_count(fp, 2);
    right.set_count(fp, 3);
    left.merge(right);
    CHECK(left.count(fp) == 5);

    LineCountTable wrong("h");
    CHECK_THROWS_AS(left.merge(wrong), Error);
    try {
        left.merge(wrong);
    } catch (const Error& e) {
        CHECK(e.code() == "wrong_group");
    }
}

TEST_CASE("build_line_counts groups by domain_key") {
    Rng rng(7);
    std::vector<Document> docs;
    for (int p = 0; p < 3; ++p) docs.push_back(site_doc("site-a.example", p, "en", rng));
    for (int p = 0; p < 2; ++p) docs.push_back(site_doc("site-b.example", p, "en", rng));
    plant(docs, "Leave a Comment");

    const auto tables = build_line_counts(docs);
    REQUIRE(tables.size() == 2);
    CHECK(tables.at("site-a.example").count(line_fingerprint("Leave a Comment")) == 3);
    CHECK(tables.at("site-b.example").count(line_fingerprint("Leave a Comment")) == 2);
}

TEST_CASE("boilerplate past the frequency cap is stripped everywhere") {
    Rng rng(11);
    std::vector<Document> docs;
    for (int p = 0; p < 8; ++p) docs.push_back(site_doc("site-a.example", p, "en", rng));
    plant(docs, "Skip to Main Content");
    // A line shared by only two pages stays under the default cap of five.
    for (int p = 0; p < 2; ++p) {
        docs[p].text += "\nEditorial standards and corrections policy explained.";
    }

    const LineDedupPolicy policy;
    const auto tables = build_line_counts(docs);
    const auto deduped = apply_line_dedup(docs, tables, policy);

    REQUIRE(deduped.size() == 8);
    for (const Document& doc : deduped) {
        CHECK(doc.filter->kept);
        CHECK(doc.text.find("Skip to Main Content") == std::string::npos);
    }
    CHECK(deduped[0].text.find("Editorial standards") != std::string::npos);
    CHECK(deduped[1].text.find("Editorial standards") != std::string::npos);
}

TEST_CASE("surviving lines keep their order") {
    std::vector<Document> docs;
    for (int p = 0; p < 6; ++p) {
        Document doc;
        doc.id = "d" + std::to_string(p);
        doc.domain_key = "site-a.example";
        doc.text = "The first unique paragraph for page " + std::to_string(p) +
                   " carries plenty of real content to keep the whole document alive"
                   " and comfortably past the minimum.\n"
                   "Subscribe to our newsletter\n"
                   "The second unique paragraph for page " + std::to_string(p) +
                   " also carries plenty of real content for all of the survivors"
                   " to hold on to after the cut.";
        docs.push_back(doc);
    }
    const auto tables = build_line_counts(docs);
    const Document out =
        apply_line_dedup(docs[3], tables.at("site-a.example"), LineDedupPolicy{});
    const auto lines = split_lines(out.text);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].find("first unique") != std::string::npos);
    CHECK(lines[1].find("second unique") != std::string::npos);
}

TEST_CASE("documents emptied by dedup are dropped") {
    std::vector<Document> docs;
    for (int p = 0; p < 7; ++p) {
        Document doc;
        doc.id = "d" + std::to_string(p);
        doc.domain_key = "site-a.example";
        doc.text = "Copyright notice and cookie banner shared by every single page\n"
                   "tiny tail " + std::to_string(p);
        docs.push_back(doc);
    }
    const auto tables = build_line_counts(docs);
    const auto deduped = apply_line_dedup(docs, tables, LineDedupPolicy{});
    for (const Document& doc : deduped) {
        REQUIRE(doc.filter.has_value());
        CHECK(doc.filter->stage == "linededup");
        CHECK_FALSE(doc.filter->kept);
        CHECK(doc.filter->reasons == std::vector<std::string>{"line_dedup_empty"});
    }
}

TEST_CASE("apply rejects a table from another group") {
    Document doc;
    doc.id = "d";
    doc.domain_key = "site-a.example";
    doc.text = "whatever";
    LineCountTable table("site-b.example");
    try {
        apply_line_dedup(doc, table, LineDedupPolicy{});
        FAIL("expected wrong_group");
    } catch (const Error& e) {
        CHECK(e.code() == "wrong_group");
    }
}

TEST_CASE("parallel build and apply match the serial reference") {
    Rng rng(23);
    std::vector<Document> docs;
    const std::vector<std::string> sites = {"a.example", "b.example", "c.example"};
    for (int p = 0; p < 60; ++p) {
        docs.push_back(site_doc(sites[p % sites.size()], p, p % 2 ? "en" : "ko", rng));
    }
    plant(docs, "Subscribe to our newsletter");

    const auto serial = build_line_counts(docs, 1);
    const auto parallel = build_line_counts(docs, 4);
    CHECK(same_tables(serial, parallel));

    const auto out_serial = apply_line_dedup(docs, serial, LineDedupPolicy{}, 1);
    const auto out_parallel = apply_line_dedup(docs, serial, LineDedupPolicy{}, 4);
    REQUIRE(out_serial.size() == out_parallel.size());
    for (std::size_t i = 0; i < out_serial.size(); ++i) {
        CHECK(out_serial[i] == out_parallel[i]);
    }
}

TEST_CASE("spill files round-trip and merge by summing") {
    TempDir dir;
    Rng rng(31);
    std::vector<Document> docs;
    for (int p = 0; p < 10; ++p) docs.push_back(site_doc("a.example", p, "en", rng));
    for (int p = 0; p < 10; ++p) docs.push_back(site_doc("b.example", p, "en", rng));
    plant(docs, "Leave a Comment");

    const auto tables = build_line_counts(docs);
    const std::string path = dir.file("counts.spill");
    write_spill(path, tables);
    CHECK(same_tables(read_spill(path), tables));

    // Split the corpus, spill both halves, and k-way merge: counts must sum.
    const auto front = build_line_counts({docs.begin(), docs.begin() + 12});
    const auto back = build_line_counts({docs.begin() + 12, docs.end()});
    const std::string p1 = dir.file("front.spill");
    const std::string p2 = dir.file("back.spill");
    write_spill(p1, front);
    write_spill(p2, back);
    const std::string merged = dir.file("merged.spill");
    merge_spills({p1, p2}, merged);
    CHECK(same_tables(read_spill(merged), tables));
}

TEST_CASE("spilling counter stays under budget and reproduces the tables") {
    TempDir dir;
    Rng rng(37);
    std::vector<Document> docs;
    for (int p = 0; p < 24; ++p) {
        docs.push_back(site_doc(p % 2 ? "a.example" : "b.example", p, "en", rng));
    }
    plant(docs, "Skip to Main Content");

    // A zero-MB budget clamps to one table entry, forcing a spill per add.
    SpillingLineCounter counter(dir.file("spills"), 0);
    for (const Document& doc : docs) counter.add(doc);
    CHECK(counter.spill_files() > 1);
    const auto tables = counter.finalize();
    CHECK(same_tables(tables, build_line_counts(docs)));
}

TEST_CASE("random bucketing: one bucket dominates, singleton buckets do nothing") {
    Rng rng(41);
    std::vector<Document> docs;
    for (int p = 0; p < 4; ++p) docs.push_back(site_doc("a.example", p, "en", rng));
    for (int p = 0; p < 4; ++p) docs.push_back(site_doc("b.example", p, "en", rng));
    // Spread across both domains: 4 + 4 pages. Globally 8 > 5 removes it;
    // per-domain counts of 4 stay under the cap.
    plant(docs, "Sponsored content recommended for every reader today");

    const LineDedupPolicy policy;
    const auto global = compare_random_bucketing(docs, 1, policy);
    CHECK(global.domain_lines_removed == 0);
    CHECK(global.bucket_lines_removed == 8);
    CHECK(global.bucket_lines_removed >= global.domain_lines_removed);
    CHECK(global.bucket_peak_table >= global.domain_peak_table);

    std::size_t occurrences = 0;
    for (const Document& doc : docs) occurrences += split_lines(doc.text).size();
    const auto solo = compare_random_bucketing(docs, occurrences, policy);
    CHECK(solo.bucket_lines_removed == 0);
}

TEST_CASE("random bucketing: within-domain duplicates need no global view") {
    Rng rng(43);
    std::vector<Document> docs;
    for (int p = 0; p < 8; ++p) docs.push_back(site_doc("a.example", p, "en", rng));
    for (int p = 0; p < 6; ++p) docs.push_back(site_doc("b.example", p + 8, "en", rng));
    // Each repeated line lives inside a single domain.
    for (int p = 0; p < 8; ++p) docs[p].text += "\nAll about domain A footer navigation";
    for (int p = 8; p < 14; ++p) docs[p].text += "\nDomain B exclusive footer navigation";

    const auto report = compare_random_bucketing(docs, 1, LineDedupPolicy{});
    CHECK(report.domain_lines_removed == report.bucket_lines_removed);
    CHECK(report.domain_lines_removed == 14);
}

TEST_CASE("planted boilerplate tops the removed-line census") {
    Rng rng(47);
    std::vector<Document> docs;
    for (int p = 0; p < 8; ++p) docs.push_back(site_doc("news.example", p, "en", rng));
    for (int p = 0; p < 8; ++p) docs.push_back(site_doc("뉴스.example", p, "ko", rng));
    for (int p = 0; p < 8; ++p) {
        for (const std::string& line : fx::boilerplate_lines("en")) {
            docs[p].text += "\n" + line;
        }
        for (const std::string& line : fx::boilerplate_lines("ko")) {
            docs[p + 8].text += "\n" + line;
        }
    }

    const auto tables = build_line_counts(docs);
    const auto deduped = apply_line_dedup(docs, tables, LineDedupPolicy{});

    // Brute-force census: count, per normalized line, the documents it was
    // removed from.
    std::map<std::string, int> removed;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        std::multiset<std::string> before;
        for (const std::string& line : split_lines(docs[i].text)) {
            before.insert(ascii_lower(trim_view(line)));
        }
        for (const std::string& line : split_lines(deduped[i].text)) {
            before.erase(before.find(ascii_lower(trim_view(line))));
        }
        std::set<std::string> gone(before.begin(), before.end());
        for (const std::string& line : gone) ++removed[line];
    }

    std::set<std::string> planted;
    for (const std::string& line : fx::boilerplate_lines("en")) {
        planted.insert(ascii_lower(trim_view(line)));
    }
    for (const std::string& line : fx::boilerplate_lines("ko")) {
        planted.insert(ascii_lower(trim_view(line)));
    }

    REQUIRE(removed.size() == planted.size());
    for (const auto& [line, count] : removed) {
        CHECK(planted.count(line) == 1);
        CHECK(count == 8);
    }
}
