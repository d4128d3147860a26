#include "ragcore/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>

#include "nlohmann/json.hpp"

#include "ragcore/http_client.hpp"
#include "ragcore/text.hpp"

namespace ragcore {

namespace {

constexpr const char* kValidationTemplate =
    "You are an intelligent bot designed to assist users on an organization's website by "
    "answering their queries. You'll be given a user's question and an associated answer. "
    "Your task is to determine if the provided answer effectively resolves the query. If the "
    "answer is unsatisfactory, return 0.\n"
    "Query:  {query}\n"
    "Answer: {answer}\n"
    "Your Feedback:";

std::string api_key_from_env(const std::string& env_name) {
    if (env_name.empty()) return {};
    const char* v = std::getenv(env_name.c_str());
    return v ? std::string(v) : std::string{};
}

std::string remote_completion(const std::string& endpoint, const std::string& api_key_env,
                              const std::string& prompt) {
    nlohmann::json req{{"prompt", prompt}};
    std::string body = http_post_json(endpoint, req.dump(), api_key_from_env(api_key_env));
    nlohmann::json res = nlohmann::json::parse(body);
    if (!res.contains("text") || !res["text"].is_string())
        throw TransportError("completion endpoint returned a malformed response");
    return res["text"].get<std::string>();
}

class StageTimer {
public:
    explicit StageTimer(std::map<std::string, double>& sink) : sink_(sink) {}
    template <typename F>
    auto run(const std::string& stage, F&& f) {
        auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            record(stage, start);
        } else {
            auto out = f();
            record(stage, start);
            return out;
        }
    }

private:
    void record(const std::string& stage, std::chrono::steady_clock::time_point start) {
        auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        sink_[stage] = static_cast<double>(us) / 1000.0;
    }
    std::map<std::string, double>& sink_;
};

std::vector<const Chunk*> resolve(const std::vector<RetrievalResult>& results,
                                  const ChunkMap& chunks) {
    std::vector<const Chunk*> out;
    out.reserve(results.size());
    for (const auto& r : results) out.push_back(chunks.at(r.chunk_id));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Deterministic implementations
// ---------------------------------------------------------------------------

std::string ExtractiveGenerator::generate(const std::string& query,
                                          const std::vector<const Chunk*>& context) {
    auto query_terms = text::lower_token_set(query);
    std::string best;
    std::size_t best_overlap = 0;
    for (const Chunk* chunk : context) {
        for (const auto& sentence : text::split_sentences(chunk->text)) {
            std::size_t overlap = 0;
            for (const auto& term : text::lower_token_set(sentence))
                if (query_terms.count(term)) ++overlap;
            if (overlap > best_overlap) {  // first occurrence wins ties
                best_overlap = overlap;
                best = sentence;
            }
        }
    }
    return best_overlap == 0 ? kInsufficientContext : best;
}

std::string RejectAnswerValidator::feedback(const std::string& prompt) {
    auto begin = prompt.find("\nAnswer: ");
    auto end = prompt.rfind("\nYour Feedback:");
    if (begin == std::string::npos || end == std::string::npos || end < begin) return "1";
    begin += 9;
    std::string answer = text::trim(prompt.substr(begin, end - begin));
    return answer == rejected_ ? "0" : "1";
}

std::vector<RetrievalResult> LexicalOverlapReranker::rerank(
    const std::string& query, const std::vector<RetrievalResult>& candidates,
    const ChunkMap& chunks) {
    auto query_terms = text::lower_token_set(query);
    std::vector<RetrievalResult> out = candidates;
    for (auto& r : out) {
        double overlap = 0.0;
        if (!query_terms.empty()) {
            const Chunk* chunk = chunks.at(r.chunk_id);
            auto chunk_terms = text::lower_token_set(chunk->text);
            std::size_t shared = 0;
            for (const auto& term : query_terms)
                if (chunk_terms.count(term)) ++shared;
            overlap = static_cast<double>(shared) / static_cast<double>(query_terms.size());
        }
        r.score = overlap;
        r.origin = Origin::reranked;
    }
    std::sort(out.begin(), out.end(), [](const RetrievalResult& a, const RetrievalResult& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.chunk_id < b.chunk_id;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
    return out;
}

RemoteGenerator::RemoteGenerator(std::string endpoint, std::string api_key_env,
                                 std::string system_prompt)
    : endpoint_(std::move(endpoint)),
      api_key_env_(std::move(api_key_env)),
      system_prompt_(std::move(system_prompt)) {
    if (endpoint_.empty()) throw Error("remote generator needs an endpoint");
}

std::string RemoteGenerator::generate(const std::string& query,
                                      const std::vector<const Chunk*>& context) {
    std::string prompt = system_prompt_;
    for (const Chunk* chunk : context) {
        prompt += "\n\n";
        prompt += chunk->text;
    }
    prompt += "\n\n";
    prompt += query;
    return remote_completion(endpoint_, api_key_env_, prompt);
}

RemoteValidator::RemoteValidator(std::string endpoint, std::string api_key_env)
    : endpoint_(std::move(endpoint)), api_key_env_(std::move(api_key_env)) {
    if (endpoint_.empty()) throw Error("remote validator needs an endpoint");
}

std::string RemoteValidator::feedback(const std::string& prompt) {
    return remote_completion(endpoint_, api_key_env_, prompt);
}

// ---------------------------------------------------------------------------
// Pipeline operations
// ---------------------------------------------------------------------------

std::vector<RetrievalResult> fuse(const std::vector<WeightedRanking>& rankings, double rrf_k) {
    if (rrf_k <= 0.0) throw Error("rrf_k must be positive");
    bool any_weight = false;
    for (const auto& r : rankings) {
        if (r.weight < 0.0) throw Error("fusion weights must be non-negative");
        if (r.weight > 0.0) any_weight = true;
    }
    if (!rankings.empty() && !any_weight) throw Error("fusion weights must not all be zero");

    std::map<std::string, double> scores;
    for (const auto& ranking : rankings)
        for (const auto& r : ranking.results)
            scores[r.chunk_id] += ranking.weight / (rrf_k + static_cast<double>(r.rank));

    std::vector<RetrievalResult> out;
    out.reserve(scores.size());
    for (const auto& [id, s] : scores) out.push_back({id, s, 0, Origin::fused});
    std::sort(out.begin(), out.end(), [](const RetrievalResult& a, const RetrievalResult& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.chunk_id < b.chunk_id;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
    return out;
}

std::vector<RetrievalResult> reorder_long_context(const std::vector<RetrievalResult>& ranked) {
    std::vector<RetrievalResult> out;
    out.reserve(ranked.size());
    for (std::size_t i = 0; i < ranked.size(); i += 2) out.push_back(ranked[i]);
    std::size_t last_even = ranked.size() - (ranked.size() % 2 == 0 ? 0 : 1);
    for (std::size_t i = last_even; i >= 2; i -= 2) out.push_back(ranked[i - 1]);
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
    return out;
}

std::string render_validation_prompt(const std::string& query, const std::string& answer) {
    std::string out = kValidationTemplate;
    auto replace = [&out](const std::string& key, const std::string& value) {
        auto pos = out.find(key);
        if (pos != std::string::npos) out.replace(pos, key.size(), value);
    };
    replace("{query}", query);
    replace("{answer}", answer);
    return out;
}

ValidationResult validate(const std::string& query, const std::string& answer,
                          Validator& validator) {
    std::string raw = validator.feedback(render_validation_prompt(query, answer));
    return ValidationResult{text::trim(raw) != "0", raw};
}

QueryOutcome answer_query(const Query& query, const PartitionedCorpus& pc,
                          const LexicalIndex& lexical, const DenseIndex& dense,
                          Generator& generator, Validator& validator, Reranker& reranker,
                          const PipelineConfig& config) {
    if (pc.all.empty()) throw Error("empty corpus");
    if (query.text.empty()) throw Error("empty query");
    const std::size_t k_hybrid = query.top_k ? query.top_k : config.top_k_hybrid;
    const std::size_t k_fallback = query.top_k ? query.top_k : config.top_k_fallback;

    ChunkMap chunk_map;
    chunk_map.reserve(pc.all.size());
    for (const auto& c : pc.all) chunk_map[c.id] = &c;

    QueryOutcome outcome;
    StageTimer timer(outcome.timings);

    // hybrid retrieval over R, best items moved to the context edges
    auto chunks_r = timer.run("retrieve_hybrid", [&] {
        auto lexical_hits = lexical.top_k(query.text, k_hybrid, &pc.rest_ids);
        auto dense_hits =
            dense.top_k(query.embedding, k_hybrid, Metric::cosine_similarity, &pc.rest_ids);
        auto fused = fuse({{std::move(lexical_hits), config.weight_bm25},
                           {std::move(dense_hits), config.weight_dense}},
                          config.rrf_k);
        if (fused.size() > k_hybrid) {
            fused.resize(k_hybrid);  // context budget is k chunks, fused union can be 2k
        }
        return reorder_long_context(fused);
    });

    std::string initial;
    try {
        initial = timer.run("generate_initial",
                            [&] { return generator.generate(query.text, resolve(chunks_r, chunk_map)); });
    } catch (const std::exception& e) {
        throw StageError("generate_initial", e.what());
    }

    ValidationResult verdict;
    try {
        verdict = timer.run("validate", [&] { return validate(query.text, initial, validator); });
    } catch (const std::exception& e) {
        throw StageError("validate", e.what());
    }
    outcome.validation = verdict;

    if (verdict.satisfactory) {
        outcome.answer = initial;
        outcome.path = AnswerPath::hybrid;
        outcome.supporting = std::move(chunks_r);
        return outcome;
    }

    if (!config.enable_fallback || pc.sparse_ids.empty()) {
        outcome.answer = initial;
        outcome.path = AnswerPath::hybrid_unvalidated;
        outcome.supporting = std::move(chunks_r);
        return outcome;
    }

    // distance approach over the sparse subset only
    DenseIndex::ScanStats stats;
    auto chunks_s = timer.run("retrieve_fallback", [&] {
        auto hits =
            dense.top_k(query.embedding, k_fallback, config.fallback_metric, &pc.sparse_ids, &stats);
        return reranker.rerank(query.text, hits, chunk_map);
    });
    outcome.fallback_distance_evaluations = stats.evaluations;

    try {
        outcome.answer = timer.run("generate_final", [&] {
            return generator.generate(query.text, resolve(chunks_s, chunk_map));
        });
    } catch (const std::exception& e) {
        throw StageError("generate_final", e.what());
    }
    outcome.path = AnswerPath::distance;
    outcome.supporting = std::move(chunks_s);
    return outcome;
}

std::string to_string(Origin o) {
    switch (o) {
        case Origin::bm25: return "bm25";
        case Origin::dense: return "dense";
        case Origin::fused: return "fused";
        case Origin::reranked: return "reranked";
    }
    return "?";
}

std::string to_string(AnswerPath p) {
    switch (p) {
        case AnswerPath::hybrid: return "hybrid";
        case AnswerPath::distance: return "distance";
        case AnswerPath::hybrid_unvalidated: return "hybrid_unvalidated";
    }
    return "?";
}

}  // namespace ragcore
