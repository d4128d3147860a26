#include "ragcore/crawler.hpp"

#include <chrono>
#include <deque>
#include <filesystem>
#include <fstream>
#include <thread>
#include <unordered_set>

#include "nlohmann/json.hpp"

#include "ragcore/html_text.hpp"
#include "ragcore/http_client.hpp"
#include "ragcore/text.hpp"
#include "ragcore/uri.hpp"

namespace ragcore {

namespace {

bool looks_like_html(const std::string& content_type) {
    if (content_type.empty()) return true;  // lenient: many servers omit it
    auto lower = text::to_lower(content_type);
    return lower.find("text/html") != std::string::npos ||
           lower.find("application/xhtml") != std::string::npos;
}

std::int64_t now_utc_seconds() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::string page_file_name(const std::string& normalized_uri) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(text::fnv1a64(normalized_uri)));
    return std::string(buf) + ".txt";
}

}  // namespace

FetchResult HttpFetcher::get(const std::string& uri) {
    HttpResponse res = http_get(uri, timeout_sec_);
    return FetchResult{res.status, res.content_type, res.body};
}

std::vector<RawDocument> crawl(const std::string& seed_uri, const CrawlOptions& options,
                               Fetcher& fetcher) {
    Uri seed = parse_uri(seed_uri);
    if (!seed.valid()) throw Error("invalid seed uri: " + seed_uri);
    const std::string seed_host = text::to_lower(seed.host);
    const std::string seed_norm = normalize_uri(seed);

    struct Item {
        std::string uri;  // normalized
        std::size_t depth;
    };
    std::vector<RawDocument> pages;
    std::unordered_set<std::string> seen{seed_norm};
    std::deque<Item> frontier{{seed_norm, 0}};
    bool first = true;

    while (!frontier.empty()) {
        Item item = frontier.front();
        frontier.pop_front();

        if (!first && options.delay.count() > 0) std::this_thread::sleep_for(options.delay);

        FetchResult res;
        try {
            res = fetcher.get(item.uri);
        } catch (const TransportError&) {
            if (first) throw;  // unreachable seed is fatal
            continue;          // broken links mid-crawl are skipped
        }
        first = false;
        if (res.status < 200 || res.status >= 300) continue;
        if (!looks_like_html(res.content_type)) continue;

        pages.push_back(RawDocument{item.uri, res.body, now_utc_seconds()});

        if (item.depth >= options.max_depth) continue;
        Uri page_uri = parse_uri(item.uri);
        for (const auto& href : extract_links(res.body)) {
            std::string target = resolve_reference(page_uri, href);
            if (target.empty()) continue;
            Uri t = parse_uri(target);
            if (t.scheme != "http" && t.scheme != "https") continue;
            if (options.same_host_only && text::to_lower(t.host) != seed_host) continue;
            if (seen.insert(target).second) frontier.push_back({target, item.depth + 1});
        }
    }
    return pages;
}

void write_ingest_output(const std::vector<RawDocument>& pages, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    nlohmann::json manifest = nlohmann::json::array();
    for (const auto& page : pages) {
        CleanDocument clean = html_to_text(page);
        std::string file = page_file_name(page.source_uri);
        std::ofstream out(fs::path(out_dir) / file, std::ios::binary);
        if (!out) throw Error("cannot write " + (fs::path(out_dir) / file).string());
        out << clean.body;
        manifest.push_back({{"uri", page.source_uri},
                            {"file", file},
                            {"fetched_at", page.fetched_at}});
    }
    std::ofstream mf(fs::path(out_dir) / "manifest.json", std::ios::binary);
    if (!mf) throw Error("cannot write manifest.json under " + out_dir);
    mf << manifest.dump(2) << "\n";
}

std::vector<CleanDocument> read_ingest_output(const std::string& dir) {
    namespace fs = std::filesystem;
    std::ifstream mf(fs::path(dir) / "manifest.json", std::ios::binary);
    if (!mf) throw Error("no manifest.json under " + dir);
    nlohmann::json manifest = nlohmann::json::parse(mf);
    std::vector<CleanDocument> docs;
    for (const auto& entry : manifest) {
        std::ifstream in(fs::path(dir) / entry.at("file").get<std::string>(), std::ios::binary);
        if (!in) throw Error("missing page file " + entry.at("file").get<std::string>());
        std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        docs.push_back(CleanDocument{entry.at("uri").get<std::string>(), std::move(body)});
    }
    return docs;
}

}  // namespace ragcore
