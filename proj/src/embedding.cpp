#include "ragcore/embedding.hpp"

#include <cmath>
#include <cstdlib>

#include "nlohmann/json.hpp"

#include "ragcore/http_client.hpp"
#include "ragcore/text.hpp"

namespace ragcore {

HashedBowProvider::HashedBowProvider(std::size_t dim, std::uint64_t seed)
    : dim_(dim), seed_(seed) {
    if (dim_ == 0) throw Error("embedding dim must be positive");
}

std::vector<Embedding> HashedBowProvider::embed_batch(const std::vector<std::string>& texts) {
    std::vector<Embedding> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        Embedding e;
        e.values.assign(dim_, 0.0);
        for (const auto& tok : text::lower_tokens(t))
            e.values[text::fnv1a64(tok, seed_) % dim_] += 1.0;
        double norm = 0.0;
        for (double v : e.values) norm += v * v;
        if (norm > 0.0) {
            norm = std::sqrt(norm);
            for (double& v : e.values) v /= norm;
        }
        out.push_back(std::move(e));
    }
    return out;
}

RemoteEmbeddingProvider::RemoteEmbeddingProvider(std::string endpoint, std::size_t dim,
                                                 std::string api_key_env)
    : endpoint_(std::move(endpoint)), dim_(dim), api_key_env_(std::move(api_key_env)) {
    if (dim_ == 0) throw Error("embedding dim must be positive");
    if (endpoint_.empty()) throw Error("remote embedding provider needs an endpoint");
}

std::vector<Embedding> RemoteEmbeddingProvider::embed_batch(
    const std::vector<std::string>& texts) {
    if (texts.empty()) return {};
    std::string api_key;
    if (!api_key_env_.empty())
        if (const char* v = std::getenv(api_key_env_.c_str())) api_key = v;

    nlohmann::json req{{"texts", texts}};
    std::string body = http_post_json(endpoint_, req.dump(), api_key);
    nlohmann::json res = nlohmann::json::parse(body);
    if (!res.contains("embeddings") || !res["embeddings"].is_array() ||
        res["embeddings"].size() != texts.size())
        throw TransportError("embedding endpoint returned a malformed response");

    std::vector<Embedding> out;
    out.reserve(texts.size());
    for (const auto& row : res["embeddings"]) {
        Embedding e;
        e.values = row.get<std::vector<double>>();
        if (e.dim() != dim_)
            throw TransportError("embedding endpoint returned dim " +
                                 std::to_string(e.dim()) + ", expected " + std::to_string(dim_));
        for (double v : e.values)
            if (!std::isfinite(v)) throw TransportError("embedding endpoint returned non-finite values");
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<Chunk> embed_chunks(std::vector<Chunk> chunks, EmbeddingProvider& provider) {
    if (provider.dim() == 0) throw Error("embedding provider declares dim 0");
    constexpr std::size_t kBatch = 64;
    for (std::size_t start = 0; start < chunks.size(); start += kBatch) {
        std::size_t end = std::min(start + kBatch, chunks.size());
        std::vector<std::string> texts;
        texts.reserve(end - start);
        for (std::size_t i = start; i < end; ++i) texts.push_back(chunks[i].text);
        std::vector<Embedding> vecs;
        try {
            vecs = provider.embed_batch(texts);
        } catch (const std::exception& e) {
            std::string ids;
            for (std::size_t i = start; i < end; ++i) {
                if (!ids.empty()) ids += ", ";
                ids += chunks[i].id;
            }
            throw Error("embedding failed for chunks [" + ids + "]: " + e.what());
        }
        if (vecs.size() != end - start)
            throw Error("provider returned " + std::to_string(vecs.size()) + " embeddings for " +
                        std::to_string(end - start) + " texts");
        for (std::size_t i = start; i < end; ++i) {
            if (vecs[i - start].dim() != provider.dim())
                throw Error("embedding dim mismatch for chunk " + chunks[i].id);
            chunks[i].embedding = std::move(vecs[i - start]);
        }
    }
    return chunks;
}

}  // namespace ragcore
