#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ragcore/bm25.hpp"
#include "ragcore/dense_index.hpp"
#include "ragcore/partition.hpp"
#include "ragcore/types.hpp"

namespace ragcore {

using ChunkMap = std::unordered_map<std::string, const Chunk*>;

/// Answer generation backend (LLM or deterministic stand-in).
class Generator {
public:
    virtual ~Generator() = default;
    virtual std::string generate(const std::string& query,
                                 const std::vector<const Chunk*>& context) = 0;
};

/// Validation backend: receives the rendered validation prompt, returns raw
/// feedback text. "0" (after trimming) means the answer did not resolve the
/// query.
class Validator {
public:
    virtual ~Validator() = default;
    virtual std::string feedback(const std::string& prompt) = 0;
};

class Reranker {
public:
    virtual ~Reranker() = default;
    /// Must return a permutation of the input candidates.
    virtual std::vector<RetrievalResult> rerank(const std::string& query,
                                                const std::vector<RetrievalResult>& candidates,
                                                const ChunkMap& chunks) = 0;
};

// ---------------------------------------------------------------------------
// Deterministic local implementations
// ---------------------------------------------------------------------------

inline constexpr const char* kInsufficientContext = "INSUFFICIENT CONTEXT";

/// Returns the context sentence with maximal unigram overlap with the query
/// (first occurrence wins ties), or "INSUFFICIENT CONTEXT" when no sentence
/// shares a term.
class ExtractiveGenerator : public Generator {
public:
    std::string generate(const std::string& query,
                         const std::vector<const Chunk*>& context) override;
};

/// Parses the answer back out of the validation prompt and returns "0" when
/// it equals the configured rejected answer, "1" otherwise.
class RejectAnswerValidator : public Validator {
public:
    explicit RejectAnswerValidator(std::string rejected = kInsufficientContext)
        : rejected_(std::move(rejected)) {}
    std::string feedback(const std::string& prompt) override;

private:
    std::string rejected_;
};

/// Lexical-overlap reranker: score = |query terms ∩ chunk terms| / |query
/// terms| over lowercased unigrams; descending, ties by ascending chunk id.
class LexicalOverlapReranker : public Reranker {
public:
    std::vector<RetrievalResult> rerank(const std::string& query,
                                        const std::vector<RetrievalResult>& candidates,
                                        const ChunkMap& chunks) override;
};

/// HTTP-backed generator/validator: POST {"prompt": text}, expect {"text": text}.
class RemoteGenerator : public Generator {
public:
    RemoteGenerator(std::string endpoint, std::string api_key_env = "",
                    std::string system_prompt = "Answer the user's question using only the provided context.");
    std::string generate(const std::string& query,
                         const std::vector<const Chunk*>& context) override;

private:
    std::string endpoint_;
    std::string api_key_env_;
    std::string system_prompt_;
};

class RemoteValidator : public Validator {
public:
    explicit RemoteValidator(std::string endpoint, std::string api_key_env = "");
    std::string feedback(const std::string& prompt) override;

private:
    std::string endpoint_;
    std::string api_key_env_;
};

// ---------------------------------------------------------------------------
// Pipeline operations
// ---------------------------------------------------------------------------

struct WeightedRanking {
    std::vector<RetrievalResult> results;
    double weight = 1.0;
};

/// Weighted reciprocal-rank fusion: score(d) = Σ weight / (rrf_k + rank(d))
/// over the rankings containing d. Descending score, ties by ascending chunk
/// id; ranks reassigned 1..n; origin becomes fused.
std::vector<RetrievalResult> fuse(const std::vector<WeightedRanking>& rankings, double rrf_k);

/// Places odd input positions (1st, 3rd, ...) at the front in order and even
/// positions at the back in reverse, so the best items sit at both ends of
/// the context and the worst in the middle.
std::vector<RetrievalResult> reorder_long_context(const std::vector<RetrievalResult>& ranked);

/// The template sent to the validator, verbatim; {query} and {answer} are
/// substituted.
std::string render_validation_prompt(const std::string& query, const std::string& answer);

/// Renders the prompt, consults the validator, and maps trimmed feedback "0"
/// to unsatisfactory; anything else counts as satisfactory. Validator
/// transport failures propagate (fail closed).
ValidationResult validate(const std::string& query, const std::string& answer,
                          Validator& validator);

struct PipelineConfig {
    std::size_t top_k_hybrid = 5;
    std::size_t top_k_fallback = 5;
    double weight_bm25 = 0.5;
    double weight_dense = 0.5;
    double rrf_k = 60.0;
    Metric fallback_metric = Metric::euclidean;
    bool enable_fallback = true;
};

/// Full query flow: hybrid retrieval over R -> generate -> validate; on an
/// unsatisfactory answer, distance retrieval over S -> rerank -> generate.
/// An unsatisfactory answer with empty S (or fallback disabled) is returned
/// as-is with path hybrid_unvalidated.
QueryOutcome answer_query(const Query& query, const PartitionedCorpus& pc,
                          const LexicalIndex& lexical, const DenseIndex& dense,
                          Generator& generator, Validator& validator, Reranker& reranker,
                          const PipelineConfig& config);

}  // namespace ragcore
