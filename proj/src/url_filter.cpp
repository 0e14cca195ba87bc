#include "curate/url_filter.hpp"

#include <algorithm>
#include <cctype>

#include "curate/gzip.hpp"
#include "curate/text.hpp"

namespace curate {

namespace {

bool valid_scheme(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        unsigned char u = static_cast<unsigned char>(c);
        return std::isalnum(u) || c == '+' || c == '-' || c == '.';
    });
}

std::vector<std::string_view> split_labels(std::string_view host) {
    std::vector<std::string_view> labels;
    std::size_t start = 0;
    while (start <= host.size()) {
        std::size_t dot = host.find('.', start);
        if (dot == std::string_view::npos) {
            labels.push_back(host.substr(start));
            break;
        }
        labels.push_back(host.substr(start, dot - start));
        start = dot + 1;
    }
    return labels;
}

std::string join_from(const std::vector<std::string_view>& labels, std::size_t i) {
    std::string out;
    for (std::size_t k = i; k < labels.size(); ++k) {
        if (k > i) out.push_back('.');
        out.append(labels[k]);
    }
    return out;
}

bool is_ipv4_literal(std::string_view host) {
    int dots = 0;
    for (char c : host) {
        if (c == '.') {
            ++dots;
        } else if (c < '0' || c > '9') {
            return false;
        }
    }
    return dots == 3;
}

}  // namespace

std::optional<ParsedUrl> parse_url(std::string_view url) {
    std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos || scheme_end == 0) return std::nullopt;
    std::string_view scheme = url.substr(0, scheme_end);
    if (!valid_scheme(scheme)) return std::nullopt;

    std::string_view rest = url.substr(scheme_end + 3);
    std::size_t authority_end = rest.find_first_of("/?#");
    std::string_view authority =
        authority_end == std::string_view::npos ? rest : rest.substr(0, authority_end);
    if (authority.empty()) return std::nullopt;

    std::size_t at = authority.rfind('@');
    if (at != std::string_view::npos) authority = authority.substr(at + 1);
    if (authority.empty()) return std::nullopt;

    std::string_view host;
    if (authority.front() == '[') {
        std::size_t close = authority.find(']');
        if (close == std::string_view::npos) return std::nullopt;
        host = authority.substr(1, close - 1);
    } else {
        std::size_t colon = authority.rfind(':');
        host = colon == std::string_view::npos ? authority : authority.substr(0, colon);
    }
    if (host.empty()) return std::nullopt;
    while (!host.empty() && host.back() == '.') host.remove_suffix(1);
    if (host.empty()) return std::nullopt;

    ParsedUrl parsed;
    parsed.scheme = ascii_lower(scheme);
    parsed.host = ascii_lower(host);
    return parsed;
}

PublicSuffixList PublicSuffixList::from_file(const std::string& path) {
    return from_text(read_file(path));
}

PublicSuffixList PublicSuffixList::from_text(std::string_view text) {
    PublicSuffixList psl;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view raw = end == std::string_view::npos
                                   ? text.substr(start)
                                   : text.substr(start, end - start);
        std::string_view line = trim_view(raw);
        if (!line.empty() && line.substr(0, 2) != "//") {
            // Rules end at the first whitespace per the PSL format.
            std::size_t ws = line.find_first_of(" \t");
            if (ws != std::string_view::npos) line = line.substr(0, ws);
            std::string rule = ascii_lower(line);
            if (rule[0] == '!') {
                psl.exception_.insert(rule.substr(1));
            } else if (rule.rfind("*.", 0) == 0) {
                psl.wildcard_.insert(rule.substr(2));
            } else {
                psl.exact_.insert(std::move(rule));
            }
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return psl;
}

std::string PublicSuffixList::registered_domain(std::string_view raw_host) const {
    std::string host = ascii_lower(raw_host);
    if (host.empty() || is_ipv4_literal(host) || host.find(':') != std::string::npos) {
        return host;  // IP literals have no registrable suffix
    }
    const auto labels = split_labels(host);
    // Longest match wins; exceptions beat the wildcard they punch through.
    for (std::size_t i = 0; i < labels.size(); ++i) {
        std::string suffix = join_from(labels, i);
        if (exception_.count(suffix)) {
            // Rule minus its leftmost label is the public suffix, so the
            // exception string itself is the registered domain.
            return suffix;
        }
        bool matched = exact_.count(suffix) > 0;
        if (!matched && i + 1 < labels.size()) {
            matched = wildcard_.count(join_from(labels, i + 1)) > 0;
        }
        if (matched) {
            if (i == 0) return host;  // host is itself a public suffix
            return join_from(labels, i - 1);
        }
    }
    return host;  // unknown suffix
}

UrlBlocklist UrlBlocklist::from_file(const std::string& path) {
    return from_text(read_file(path));
}

UrlBlocklist UrlBlocklist::from_text(std::string_view text) {
    UrlBlocklist list;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view raw = end == std::string_view::npos
                                   ? text.substr(start)
                                   : text.substr(start, end - start);
        std::string_view line = trim_view(raw);
        if (!line.empty() && line[0] != '#') {
            std::string entry = ascii_lower(line);
            if (entry.find('/') != std::string::npos) {
                list.blocked_substrings.push_back(std::move(entry));
            } else {
                list.blocked_domains.insert(std::move(entry));
            }
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return list;
}

bool url_allowed(std::string_view url, const UrlBlocklist& blocklist,
                 const PublicSuffixList& psl) {
    auto parsed = parse_url(url);
    if (!parsed) return false;
    if (!blocklist.blocked_domains.empty()) {
        if (blocklist.blocked_domains.count(psl.registered_domain(parsed->host))) {
            return false;
        }
    }
    if (!blocklist.blocked_substrings.empty()) {
        std::string lowered = ascii_lower(url);
        for (const std::string& fragment : blocklist.blocked_substrings) {
            if (lowered.find(fragment) != std::string::npos) return false;
        }
    }
    return true;
}

std::optional<std::string> domain_key(std::string_view url, const PublicSuffixList& psl) {
    auto parsed = parse_url(url);
    if (!parsed) return std::nullopt;
    return psl.registered_domain(parsed->host);
}

}  // namespace curate
