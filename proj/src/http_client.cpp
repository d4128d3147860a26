#include "ragcore/http_client.hpp"

#include <memory>

#include "httplib.h"

#include "ragcore/types.hpp"
#include "ragcore/uri.hpp"

namespace ragcore {

namespace {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string target;  // path?query
};

Endpoint split_url(const std::string& url) {
    Uri u = parse_uri(url);
    if (!u.valid()) throw TransportError("malformed url: " + url);
    Endpoint ep;
    ep.origin = u.scheme + "://" + u.host;
    if (u.port != -1) ep.origin += ":" + std::to_string(u.port);
    ep.target = u.path.empty() ? "/" : u.path;
    if (!u.query.empty()) ep.target += "?" + u.query;
    return ep;
}

}  // namespace

HttpResponse http_get(const std::string& url, int timeout_sec) {
    Endpoint ep = split_url(url);
    httplib::Client cli(ep.origin);
    cli.set_connection_timeout(timeout_sec);
    cli.set_read_timeout(timeout_sec);
    cli.set_follow_location(true);
    auto res = cli.Get(ep.target);
    if (!res)
        throw TransportError("fetch failed for " + url + ": " + httplib::to_string(res.error()));
    HttpResponse out;
    out.status = res->status;
    out.content_type = res->get_header_value("Content-Type");
    out.body = res->body;
    return out;
}

std::string http_post_json(const std::string& url, const std::string& json_body,
                           const std::string& api_key, int timeout_sec) {
    Endpoint ep = split_url(url);
    httplib::Client cli(ep.origin);
    cli.set_connection_timeout(timeout_sec);
    cli.set_read_timeout(timeout_sec);
    httplib::Headers headers;
    if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);
    auto res = cli.Post(ep.target, headers, json_body, "application/json");
    if (!res)
        throw TransportError("post failed for " + url + ": " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300)
        throw TransportError("post to " + url + " returned status " +
                             std::to_string(res->status));
    return res->body;
}

}  // namespace ragcore
