#pragma once

#include <string>
#include <vector>

#include "ragcore/types.hpp"

namespace ragcore {

enum class Metric { cosine_similarity, cosine_distance, euclidean };

std::string to_string(Metric m);
Metric metric_from_string(const std::string& s);

/// u.v / (|u||v|), clamped to [-1,1]. Throws on dimension mismatch or a
/// zero vector (undefined cosine).
double cosine_similarity(const Embedding& u, const Embedding& v);

/// 1 - cosine_similarity(u, v), in [0,2].
double cosine_distance(const Embedding& u, const Embedding& v);

double euclidean_distance(const Embedding& u, const Embedding& v);

/// Flat (exhaustive) vector index. Immutable after build; concurrent scans
/// are safe. Scale stays desk-sized, so exact scanning beats ANN here.
class DenseIndex {
public:
    struct Entry {
        std::string chunk_id;
        Embedding embedding;
    };

    struct ScanStats {
        std::size_t evaluations = 0;  // metric computations performed
    };

    static DenseIndex build(const std::vector<Chunk>& chunks);
    static DenseIndex from_entries(std::vector<Entry> entries);

    /// Best-first top-k: descending similarity, or ascending distance for the
    /// distance metrics. Ties break by ascending chunk id. Scores in the
    /// returned results are always higher-is-better (distances negated).
    /// `restrict_to` filters the pool before any metric is evaluated.
    std::vector<RetrievalResult> top_k(const Embedding& query, std::size_t k, Metric metric,
                                       const IdSet* restrict_to = nullptr,
                                       ScanStats* stats = nullptr) const;

    std::size_t size() const { return entries_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_;
    std::size_t dim_ = 0;
};

}  // namespace ragcore
