#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace ragcore {

using IdSet = std::unordered_set<std::string>;

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A requested id/key does not exist.
class LookupError : public Error {
public:
    using Error::Error;
};

/// An HTTP fetch or remote-provider call failed. Carries the URI/stage in the message.
class TransportError : public Error {
public:
    using Error::Error;
};

/// A pipeline stage (generation, validation) failed. Carries the stage name.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error("stage " + stage + ": " + what), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct Embedding {
    std::vector<double> values;

    std::size_t dim() const { return values.size(); }
    bool empty() const { return values.empty(); }

    bool operator==(const Embedding& other) const = default;
};

/// Unit of indexing and retrieval: a contiguous piece of source text.
struct Chunk {
    std::string id;
    std::string source_uri;
    std::string text;
    std::size_t token_begin = 0;  // [token_begin, token_end) over the source token sequence
    std::size_t token_end = 0;
    Embedding embedding;          // unset (empty) until embedded
    std::map<std::string, std::string> metadata;
    bool is_sparse = false;       // assigned by partitioning

    bool operator==(const Chunk& other) const = default;
};

struct RawDocument {
    std::string source_uri;
    std::string html;
    std::int64_t fetched_at = 0;  // UTC seconds
};

struct CleanDocument {
    std::string source_uri;
    std::string body;
};

enum class Origin { bm25, dense, fused, reranked };

std::string to_string(Origin o);

/// A scored, ranked chunk reference. Higher score is always better;
/// distance metrics are negated before they land here.
struct RetrievalResult {
    std::string chunk_id;
    double score = 0.0;
    std::size_t rank = 0;  // 1-based, gapless within a list
    Origin origin = Origin::bm25;
};

struct Query {
    std::string text;
    Embedding embedding;
    std::size_t top_k = 5;
};

struct ValidationResult {
    bool satisfactory = true;
    std::string raw_feedback;
};

enum class AnswerPath { hybrid, distance, hybrid_unvalidated };

std::string to_string(AnswerPath p);

struct QueryOutcome {
    std::string answer;
    AnswerPath path = AnswerPath::hybrid;
    std::vector<RetrievalResult> supporting;
    ValidationResult validation;
    std::map<std::string, double> timings;  // stage -> milliseconds
    std::size_t fallback_distance_evaluations = 0;
};

}  // namespace ragcore
