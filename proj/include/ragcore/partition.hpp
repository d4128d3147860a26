#pragma once

#include <string>
#include <vector>

#include "ragcore/types.hpp"

namespace ragcore {

enum class SparsityCriterion { embedding_similarity, ngram_containment };

std::string to_string(SparsityCriterion c);
SparsityCriterion criterion_from_string(const std::string& s);

/// The corpus split computed ahead of inference: sparse chunks (whose
/// information occurs nowhere else) versus the rest. sparse_ids and rest_ids
/// are disjoint and together cover every chunk; each chunk's is_sparse flag
/// agrees with its set membership.
struct PartitionedCorpus {
    std::vector<Chunk> all;
    IdSet sparse_ids;  // S
    IdSet rest_ids;    // R
    double tau = 0.80;
    SparsityCriterion criterion = SparsityCriterion::embedding_similarity;
};

/// Max cosine similarity between `target` and any other chunk. A single-chunk
/// corpus returns -1 (the empty-max sentinel). Throws LookupError for ids not
/// in the corpus.
double max_neighbor_similarity(const std::vector<Chunk>& corpus, const std::string& target);

/// True when no other chunk contains the target's information at threshold
/// tau: under embedding_similarity, max neighbor cosine < tau; under
/// ngram_containment, every pairwise containment coefficient
/// |G(target) ∩ G(other)| / |G(target)| < tau, where G is the word-trigram
/// set (unigrams for chunks shorter than 3 tokens).
bool identify_sparse_information(const std::string& target, const std::vector<Chunk>& corpus,
                                 double tau, SparsityCriterion criterion);

PartitionedCorpus partition(const std::vector<Chunk>& corpus, double tau,
                            SparsityCriterion criterion);

}  // namespace ragcore
