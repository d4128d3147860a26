#include "ragcore/dense_index.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace ragcore {

namespace {

void check_dims(const Embedding& u, const Embedding& v) {
    if (u.dim() != v.dim())
        throw Error("dimension mismatch: " + std::to_string(u.dim()) + " vs " +
                    std::to_string(v.dim()));
}

}  // namespace

std::string to_string(Metric m) {
    switch (m) {
        case Metric::cosine_similarity: return "cosine_similarity";
        case Metric::cosine_distance: return "cosine_distance";
        case Metric::euclidean: return "euclidean";
    }
    return "?";
}

Metric metric_from_string(const std::string& s) {
    if (s == "cosine_similarity") return Metric::cosine_similarity;
    if (s == "cosine_distance") return Metric::cosine_distance;
    if (s == "euclidean") return Metric::euclidean;
    throw Error("unknown metric: " + s);
}

double cosine_similarity(const Embedding& u, const Embedding& v) {
    check_dims(u, v);
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        dot += u.values[i] * v.values[i];
        nu += u.values[i] * u.values[i];
        nv += v.values[i] * v.values[i];
    }
    if (nu == 0.0 || nv == 0.0) throw Error("undefined cosine for zero vector");
    return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

double cosine_distance(const Embedding& u, const Embedding& v) {
    return 1.0 - cosine_similarity(u, v);
}

double euclidean_distance(const Embedding& u, const Embedding& v) {
    check_dims(u, v);
    double sum = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        double d = u.values[i] - v.values[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

DenseIndex DenseIndex::build(const std::vector<Chunk>& chunks) {
    std::vector<Entry> entries;
    entries.reserve(chunks.size());
    for (const auto& c : chunks) {
        if (c.embedding.empty()) throw Error("chunk " + c.id + " has no embedding");
        entries.push_back({c.id, c.embedding});
    }
    return from_entries(std::move(entries));
}

DenseIndex DenseIndex::from_entries(std::vector<Entry> entries) {
    DenseIndex index;
    std::unordered_set<std::string> ids;
    for (const auto& e : entries) {
        if (index.dim_ == 0) index.dim_ = e.embedding.dim();
        if (e.embedding.dim() != index.dim_)
            throw Error("embedding dim mismatch at chunk " + e.chunk_id);
        if (!ids.insert(e.chunk_id).second) throw Error("duplicate chunk id: " + e.chunk_id);
    }
    index.entries_ = std::move(entries);
    return index;
}

std::vector<RetrievalResult> DenseIndex::top_k(const Embedding& query, std::size_t k,
                                               Metric metric, const IdSet* restrict_to,
                                               ScanStats* stats) const {
    if (k == 0) throw Error("k must be positive");
    if (!entries_.empty() && query.dim() != dim_)
        throw Error("query dim " + std::to_string(query.dim()) + " does not match index dim " +
                    std::to_string(dim_));

    std::vector<RetrievalResult> scored;
    for (const auto& entry : entries_) {
        if (restrict_to && !restrict_to->count(entry.chunk_id)) continue;
        double raw;
        switch (metric) {
            case Metric::cosine_similarity: raw = cosine_similarity(query, entry.embedding); break;
            case Metric::cosine_distance: raw = -cosine_distance(query, entry.embedding); break;
            case Metric::euclidean: raw = -euclidean_distance(query, entry.embedding); break;
            default: throw Error("unknown metric");
        }
        if (stats) ++stats->evaluations;
        scored.push_back({entry.chunk_id, raw, 0, Origin::dense});
    }
    std::sort(scored.begin(), scored.end(),
              [](const RetrievalResult& a, const RetrievalResult& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return a.chunk_id < b.chunk_id;
              });
    if (scored.size() > k) scored.resize(k);
    for (std::size_t i = 0; i < scored.size(); ++i) scored[i].rank = i + 1;
    return scored;
}

}  // namespace ragcore
