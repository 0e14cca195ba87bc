#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace curate {

struct ParsedUrl {
    std::string scheme;
    std::string host;  // lowercased, no port/userinfo/brackets, no trailing dot
};

// Absolute URLs only. Returns nullopt for anything unparseable.
std::optional<ParsedUrl> parse_url(std::string_view url);

// Public-suffix snapshot (standard PSL text format). Supports normal,
// wildcard (*.ck) and exception (!www.ck) rules.
class PublicSuffixList {
public:
    static PublicSuffixList from_file(const std::string& path);
    static PublicSuffixList from_text(std::string_view text);

    // eTLD+1 of a hostname; falls back to the full host when no rule
    // matches or the host itself is a public suffix. IP literals pass
    // through unchanged.
    std::string registered_domain(std::string_view host) const;

    std::size_t rule_count() const {
        return exact_.size() + wildcard_.size() + exception_.size();
    }

private:
    std::unordered_set<std::string> exact_;
    std::unordered_set<std::string> wildcard_;   // suffix after "*."
    std::unordered_set<std::string> exception_;  // rule after "!"
};

struct UrlBlocklist {
    std::unordered_set<std::string> blocked_domains;    // registered domains
    std::vector<std::string> blocked_substrings;        // lowercase fragments

    // Newline-delimited entries; '#' comments. Entries containing '/'
    // are URL substrings, the rest are domains.
    static UrlBlocklist from_file(const std::string& path);
    static UrlBlocklist from_text(std::string_view text);
};

// False iff the registered domain is blocked or any blocked substring
// occurs in the lowercased URL. Unparseable URLs are not allowed.
bool url_allowed(std::string_view url, const UrlBlocklist& blocklist,
                 const PublicSuffixList& psl);

// eTLD+1 grouping key. Empty optional when the URL cannot be parsed.
std::optional<std::string> domain_key(std::string_view url, const PublicSuffixList& psl);

}  // namespace curate
