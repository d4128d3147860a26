#include "ragcore/uri.hpp"

#include <cctype>
#include <vector>

#include "ragcore/text.hpp"

namespace ragcore {

namespace {

int default_port(const std::string& scheme) {
    if (scheme == "http") return 80;
    if (scheme == "https") return 443;
    return -1;
}

// Collapse "." and ".." segments, keeping a leading slash.
std::string remove_dot_segments(std::string_view path) {
    std::vector<std::string> segs;
    bool trailing_slash = !path.empty() && path.back() == '/';
    std::size_t i = 0;
    while (i < path.size()) {
        while (i < path.size() && path[i] == '/') ++i;
        std::size_t start = i;
        while (i < path.size() && path[i] != '/') ++i;
        std::string seg(path.substr(start, i - start));
        if (seg == "." || seg.empty()) continue;
        if (seg == "..") {
            if (!segs.empty()) segs.pop_back();
        } else {
            segs.push_back(std::move(seg));
        }
    }
    std::string out;
    for (const auto& s : segs) {
        out += '/';
        out += s;
    }
    if (out.empty()) return "/";
    if (trailing_slash) out += '/';
    return out;
}

}  // namespace

Uri parse_uri(std::string_view s) {
    Uri u;
    auto colon = s.find(':');
    if (colon == std::string_view::npos || colon + 2 >= s.size() ||
        s.substr(colon, 3) != "://")
        return u;  // invalid
    std::string scheme(s.substr(0, colon));
    for (char c : scheme)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
            return u;
    std::string_view rest = s.substr(colon + 3);

    auto authority_end = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, authority_end);
    std::string_view tail =
        authority_end == std::string_view::npos ? std::string_view{} : rest.substr(authority_end);
    if (authority.empty()) return u;

    // strip userinfo if present
    if (auto at = authority.rfind('@'); at != std::string_view::npos)
        authority = authority.substr(at + 1);

    auto port_sep = authority.rfind(':');
    if (port_sep != std::string_view::npos) {
        std::string_view p = authority.substr(port_sep + 1);
        int port = 0;
        bool numeric = !p.empty();
        for (char c : p) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                numeric = false;
                break;
            }
            port = port * 10 + (c - '0');
        }
        if (!numeric) return u;
        u.port = port;
        authority = authority.substr(0, port_sep);
    }
    if (authority.empty()) return u;

    u.scheme = std::move(scheme);
    u.host = std::string(authority);

    auto frag = tail.find('#');
    if (frag != std::string_view::npos) {
        u.fragment = std::string(tail.substr(frag + 1));
        tail = tail.substr(0, frag);
    }
    auto q = tail.find('?');
    if (q != std::string_view::npos) {
        u.query = std::string(tail.substr(q + 1));
        tail = tail.substr(0, q);
    }
    u.path = std::string(tail);
    return u;
}

std::string normalize_uri(const Uri& u) {
    if (!u.valid()) return {};
    std::string out = text::to_lower(u.scheme) + "://" + text::to_lower(u.host);
    if (u.port != -1 && u.port != default_port(text::to_lower(u.scheme)))
        out += ":" + std::to_string(u.port);
    out += u.path.empty() ? "/" : remove_dot_segments(u.path);
    if (!u.query.empty()) out += "?" + u.query;
    return out;
}

std::string normalize_uri(std::string_view s) {
    return normalize_uri(parse_uri(s));
}

std::string resolve_reference(const Uri& base, std::string_view ref) {
    if (!base.valid()) return {};
    // trim surrounding whitespace
    std::string r = text::trim(ref);
    if (r.empty()) return normalize_uri(base);
    if (r[0] == '#') return normalize_uri(base);  // same document

    if (r.find("://") != std::string::npos) {
        Uri abs = parse_uri(r);
        return abs.valid() ? normalize_uri(abs) : std::string{};
    }
    // reject non-hierarchical schemes (mailto:, javascript:, data:)
    if (auto colon = r.find(':');
        colon != std::string::npos && r.find('/') > colon)
        return {};

    Uri out = base;
    out.fragment.clear();
    if (r.rfind("//", 0) == 0) {  // protocol-relative
        Uri abs = parse_uri(base.scheme + ":" + r);
        return abs.valid() ? normalize_uri(abs) : std::string{};
    }
    if (r[0] == '/') {
        out.path = r;
        out.query.clear();
    } else if (r[0] == '?') {
        out.query = r.substr(1);
    } else {
        std::string dir = base.path;
        auto slash = dir.rfind('/');
        dir = slash == std::string::npos ? "/" : dir.substr(0, slash + 1);
        out.path = dir + r;
        out.query.clear();
    }
    auto q = out.path.find('?');
    if (q != std::string::npos) {
        out.query = out.path.substr(q + 1);
        out.path = out.path.substr(0, q);
    }
    auto f = out.path.find('#');
    if (f != std::string::npos) out.path = out.path.substr(0, f);
    return normalize_uri(out);
}

}  // namespace ragcore
