#pragma once

#include <string>
#include <string_view>

namespace ragcore {

/// Minimal absolute-URI decomposition, enough for crawling and dedup.
struct Uri {
    std::string scheme;
    std::string host;
    int port = -1;  // -1 means "not given"
    std::string path;
    std::string query;
    std::string fragment;

    bool valid() const { return !scheme.empty() && !host.empty(); }
};

Uri parse_uri(std::string_view s);

/// Canonical form used for dedup: lowercase scheme+host, default port elided,
/// fragment stripped, empty path rendered as "/".
std::string normalize_uri(const Uri& u);
std::string normalize_uri(std::string_view s);

/// Resolve `ref` against `base` (rfc3986-style merge with dot-segment removal).
/// Returns an empty string for refs that cannot yield an absolute http(s) URI.
std::string resolve_reference(const Uri& base, std::string_view ref);

}  // namespace ragcore
