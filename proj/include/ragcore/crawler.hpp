#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "ragcore/types.hpp"

namespace ragcore {

struct FetchResult {
    int status = 0;
    std::string content_type;
    std::string body;
};

/// Page source, injectable so crawls can run against local fixtures.
class Fetcher {
public:
    virtual ~Fetcher() = default;
    /// Throws TransportError when the host cannot be reached at all.
    virtual FetchResult get(const std::string& uri) = 0;
};

/// Real fetcher backed by the HTTP client.
class HttpFetcher : public Fetcher {
public:
    explicit HttpFetcher(int timeout_sec = 15) : timeout_sec_(timeout_sec) {}
    FetchResult get(const std::string& uri) override;

private:
    int timeout_sec_;
};

struct CrawlOptions {
    std::size_t max_depth = 2;
    bool same_host_only = true;
    std::chrono::milliseconds delay{100};  // inter-request politeness delay
};

/// Breadth-first crawl from `seed_uri`, deduplicated by normalized URI.
/// Non-HTML responses and broken links after the seed are skipped silently;
/// an unreachable seed throws TransportError carrying the URI.
std::vector<RawDocument> crawl(const std::string& seed_uri, const CrawlOptions& options,
                               Fetcher& fetcher);

/// Write one UTF-8 body file per page (named by a stable hash of the
/// normalized URI) plus manifest.json: [{uri, file, fetched_at}].
void write_ingest_output(const std::vector<RawDocument>& pages, const std::string& out_dir);

/// Load documents previously written by write_ingest_output.
std::vector<CleanDocument> read_ingest_output(const std::string& dir);

}  // namespace ragcore
