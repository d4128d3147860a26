#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ragcore/types.hpp"

namespace ragcore {

/// Text-to-vector backend. Implementations must be deterministic per
/// instance: identical text yields the identical vector.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::size_t dim() const = 0;
    virtual std::vector<Embedding> embed_batch(const std::vector<std::string>& texts) = 0;

    Embedding embed(const std::string& text_in) { return embed_batch({text_in}).front(); }
};

/// Hashed bag-of-words: each lowercased token is hashed into one of `dim`
/// buckets with a fixed seed, counts accumulated, then L2-normalized.
/// Shared vocabulary therefore maps to higher cosine similarity, which is
/// all retrieval tests need from a local stand-in.
class HashedBowProvider : public EmbeddingProvider {
public:
    explicit HashedBowProvider(std::size_t dim = 64, std::uint64_t seed = 0x5eed);
    std::size_t dim() const override { return dim_; }
    std::vector<Embedding> embed_batch(const std::vector<std::string>& texts) override;

private:
    std::size_t dim_;
    std::uint64_t seed_;
};

/// HTTP provider: POST {"texts": [...]} to `endpoint`, expecting
/// {"embeddings": [[...], ...]}. The API key is read from the environment
/// variable named by `api_key_env` (empty name means no auth header).
class RemoteEmbeddingProvider : public EmbeddingProvider {
public:
    RemoteEmbeddingProvider(std::string endpoint, std::size_t dim, std::string api_key_env = "");
    std::size_t dim() const override { return dim_; }
    std::vector<Embedding> embed_batch(const std::vector<std::string>& texts) override;

private:
    std::string endpoint_;
    std::size_t dim_;
    std::string api_key_env_;
};

/// Attach embeddings to every chunk, preserving order. A provider failure on
/// any batch aborts the whole operation; the error names the chunk ids of
/// the failing batch.
std::vector<Chunk> embed_chunks(std::vector<Chunk> chunks, EmbeddingProvider& provider);

}  // namespace ragcore
