#pragma once

#include <string>

namespace ragcore {

struct HttpResponse {
    int status = 0;
    std::string content_type;
    std::string body;
};

/// GET an absolute http(s) URL. Throws TransportError (carrying the URL) when
/// the host is unreachable; non-2xx statuses are returned, not thrown.
HttpResponse http_get(const std::string& url, int timeout_sec = 15);

/// POST a JSON body, returning the response body. `api_key`, when non-empty,
/// is sent as a bearer token. Throws TransportError on connect failure or
/// non-2xx status.
std::string http_post_json(const std::string& url, const std::string& json_body,
                           const std::string& api_key = "", int timeout_sec = 60);

}  // namespace ragcore
