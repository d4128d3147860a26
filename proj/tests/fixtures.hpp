#pragma once

#include <string>
#include <vector>

#include "ragcore/bm25.hpp"
#include "ragcore/dense_index.hpp"
#include "ragcore/partition.hpp"

namespace ragtest {

/// Deterministic corpus for the end-to-end sparse-fallback experiment:
/// 40 vocabulary-sharing chunks (20 texts, each present twice) plus 10
/// single-occurrence fact chunks whose key terms appear nowhere else.
struct SyntheticCorpus {
    std::vector<ragcore::Chunk> chunks;                  // 50 total
    std::vector<std::string> fact_ids;                   // the 10 expected members of S
    std::vector<std::string> fact_queries;               // coined terms only
    std::vector<std::string> fact_answers;               // the fact chunk texts
    std::vector<std::string> topic_queries;              // 20 non-sparse queries
};

SyntheticCorpus build_synthetic_corpus();

struct BuiltIndexes {
    ragcore::PartitionedCorpus corpus;
    ragcore::LexicalIndex lexical;
    ragcore::DenseIndex dense;
};

/// Partition at tau with the embedding criterion and build both indexes.
BuiltIndexes build_indexes(const std::vector<ragcore::Chunk>& chunks, double tau = 0.80);

}  // namespace ragtest
