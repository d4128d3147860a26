#include "ragcore/partition.hpp"

#include <unordered_set>

#include "ragcore/dense_index.hpp"
#include "ragcore/text.hpp"

namespace ragcore {

namespace {

const Chunk& find_chunk(const std::vector<Chunk>& corpus, const std::string& id) {
    for (const auto& c : corpus)
        if (c.id == id) return c;
    throw LookupError("unknown chunk id: " + id);
}

// Word trigrams over lowercased tokens; unigrams for chunks under 3 tokens.
std::unordered_set<std::string> gram_set(const Chunk& chunk) {
    auto toks = text::lower_tokens(chunk.text);
    std::unordered_set<std::string> grams;
    if (toks.size() < 3) {
        grams.insert(toks.begin(), toks.end());
        return grams;
    }
    for (std::size_t i = 0; i + 2 < toks.size(); ++i)
        grams.insert(toks[i] + ' ' + toks[i + 1] + ' ' + toks[i + 2]);
    return grams;
}

double containment(const std::unordered_set<std::string>& target,
                   const std::unordered_set<std::string>& other) {
    if (target.empty()) return 0.0;
    std::size_t shared = 0;
    for (const auto& g : target)
        if (other.count(g)) ++shared;
    return static_cast<double>(shared) / static_cast<double>(target.size());
}

}  // namespace

std::string to_string(SparsityCriterion c) {
    return c == SparsityCriterion::embedding_similarity ? "embedding" : "ngram";
}

SparsityCriterion criterion_from_string(const std::string& s) {
    if (s == "embedding" || s == "embedding_similarity") return SparsityCriterion::embedding_similarity;
    if (s == "ngram" || s == "ngram_containment") return SparsityCriterion::ngram_containment;
    throw Error("unknown sparsity criterion: " + s);
}

double max_neighbor_similarity(const std::vector<Chunk>& corpus, const std::string& target) {
    if (corpus.empty()) throw Error("empty corpus");
    const Chunk& t = find_chunk(corpus, target);
    double best = -1.0;  // empty-max sentinel for single-chunk corpora
    for (const auto& other : corpus) {
        if (other.id == target) continue;
        best = std::max(best, cosine_similarity(t.embedding, other.embedding));
    }
    return best;
}

bool identify_sparse_information(const std::string& target, const std::vector<Chunk>& corpus,
                                 double tau, SparsityCriterion criterion) {
    if (tau < 0.0 || tau > 1.0) throw Error("tau must be in [0,1]");
    if (criterion == SparsityCriterion::embedding_similarity)
        return max_neighbor_similarity(corpus, target) < tau;

    const Chunk& t = find_chunk(corpus, target);
    auto target_grams = gram_set(t);
    for (const auto& other : corpus) {
        if (other.id == target) continue;
        if (containment(target_grams, gram_set(other)) >= tau) return false;
    }
    return true;
}

PartitionedCorpus partition(const std::vector<Chunk>& corpus, double tau,
                            SparsityCriterion criterion) {
    if (corpus.empty()) throw Error("empty corpus");
    if (tau < 0.0 || tau > 1.0) throw Error("tau must be in [0,1]");

    PartitionedCorpus pc;
    pc.all = corpus;
    pc.tau = tau;
    pc.criterion = criterion;
    for (auto& chunk : pc.all) {
        chunk.is_sparse = identify_sparse_information(chunk.id, corpus, tau, criterion);
        (chunk.is_sparse ? pc.sparse_ids : pc.rest_ids).insert(chunk.id);
    }
    return pc;
}

}  // namespace ragcore
