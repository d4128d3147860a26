#pragma once

#include <string>

#include "ragcore/dense_index.hpp"
#include "ragcore/partition.hpp"
#include "ragcore/pipeline.hpp"

namespace ragcore {

/// Every tunable in one flat INI-style document. Unknown sections or keys are
/// rejected on parse; parse(emit(c)) == c.
struct EngineConfig {
    // [crawl]
    int delay_ms = 100;

    // [chunking]
    std::size_t chunk_size = 256;
    std::size_t overlap = 32;

    // [embedding]
    std::string embedding_provider = "local";  // local | remote
    std::size_t embedding_dim = 64;
    std::string embedding_endpoint;
    std::string embedding_api_key_env;

    // [lexical]
    double k1 = 1.2;
    double b = 0.75;

    // [fusion]
    double weight_bm25 = 0.5;
    double weight_dense = 0.5;
    double rrf_k = 60.0;

    // [pipeline]
    std::size_t top_k_hybrid = 5;
    std::size_t top_k_fallback = 5;
    Metric fallback_metric = Metric::euclidean;
    bool enable_fallback = true;

    // [partition]
    double tau = 0.80;
    SparsityCriterion criterion = SparsityCriterion::embedding_similarity;

    // [llm]
    std::string generator_endpoint;
    std::string validator_endpoint;
    std::string llm_api_key_env;
    std::string system_prompt = "Answer the user's question using only the provided context.";

    bool operator==(const EngineConfig& other) const = default;

    PipelineConfig pipeline() const;
};

EngineConfig parse_config(const std::string& ini_text);
std::string emit_config(const EngineConfig& config);

EngineConfig load_config_file(const std::string& path);

}  // namespace ragcore
