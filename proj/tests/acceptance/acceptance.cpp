// End-to-end checks for the engine's external contract: partition
// correctness, retrieval arithmetic, the sparse-fallback experiment, metric
// values, and the service schema. Each test case prints one PASS/FAIL line.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>

#include "doctest.h"
#include "httplib.h"
#include "nlohmann/json.hpp"

#include "../fixtures.hpp"
#include "../helpers.hpp"
#include "ragcore/text.hpp"
#include "ragcore/config.hpp"
#include "ragcore/embedding.hpp"
#include "ragcore/eval.hpp"
#include "ragcore/index_io.hpp"
#include "ragcore/metrics.hpp"
#include "ragcore/partition.hpp"
#include "ragcore/pipeline.hpp"
#include "ragcore/server.hpp"

using namespace ragcore;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

IdSet brute_force_sparse(const std::vector<Chunk>& corpus, double tau) {
    IdSet sparse;
    for (const auto& target : corpus) {
        bool unique = true;
        for (const auto& other : corpus) {
            if (other.id == target.id) continue;
            double dot = 0, nu = 0, nv = 0;
            for (std::size_t i = 0; i < target.embedding.values.size(); ++i) {
                dot += target.embedding.values[i] * other.embedding.values[i];
                nu += target.embedding.values[i] * target.embedding.values[i];
                nv += other.embedding.values[i] * other.embedding.values[i];
            }
            if (dot / std::sqrt(nu * nv) >= tau) {
                unique = false;
                break;
            }
        }
        if (unique) sparse.insert(target.id);
    }
    return sparse;
}

double oracle_bm25(const std::vector<Chunk>& chunks, const std::string& query,
                   const std::string& chunk_id, double k1, double b) {
    double total_len = 0.0;
    for (const auto& c : chunks) total_len += static_cast<double>(text::lower_tokens(c.text).size());
    double avgdl = total_len / static_cast<double>(chunks.size());
    const Chunk* doc = nullptr;
    for (const auto& c : chunks)
        if (c.id == chunk_id) doc = &c;
    auto doc_terms = text::lower_tokens(doc->text);
    double score = 0.0;
    for (const auto& q : text::lower_tokens(query)) {
        std::size_t tf = 0;
        for (const auto& t : doc_terms)
            if (t == q) ++tf;
        if (tf == 0) continue;
        std::size_t df = 0;
        for (const auto& c : chunks)
            for (const auto& t : text::lower_tokens(c.text))
                if (t == q) {
                    ++df;
                    break;
                }
        double idf = std::log((static_cast<double>(chunks.size()) - static_cast<double>(df) + 0.5) /
                                  (static_cast<double>(df) + 0.5) +
                              1.0);
        score += idf * static_cast<double>(tf) * (k1 + 1.0) /
                 (static_cast<double>(tf) +
                  k1 * (1.0 - b + b * static_cast<double>(doc_terms.size()) / avgdl));
    }
    return score;
}

Embedding random_vec(std::mt19937& rng, std::size_t dim, bool normalize) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Embedding e;
    e.values.resize(dim);
    double norm = 0.0;
    for (auto& v : e.values) {
        v = dist(rng);
        norm += v * v;
    }
    if (normalize && norm > 0) {
        norm = std::sqrt(norm);
        for (auto& v : e.values) v /= norm;
    }
    return e;
}

std::vector<std::string> id_sequence(const std::vector<RetrievalResult>& results) {
    std::vector<std::string> out;
    for (const auto& r : results) out.push_back(r.chunk_id);
    return out;
}

}  // namespace

TEST_CASE("criterion 1: partition equals the brute-force oracle") {
    std::mt19937 rng(101);
    HashedBowProvider provider(64);
    auto start = Clock::now();

    auto corpus = ragtest::random_corpus(rng, 200, provider, 0.25);
    auto pc = partition(corpus, 0.8, SparsityCriterion::embedding_similarity);
    CHECK(pc.sparse_ids == brute_force_sparse(corpus, 0.8));
    CHECK(seconds_since(start) < 5.0);

    std::uniform_int_distribution<std::size_t> n_dist(1, 50);
    for (int iter = 0; iter < 1000; ++iter) {
        auto small = ragtest::random_corpus(rng, n_dist(rng), provider, 0.3);
        auto split = partition(small, 0.8, SparsityCriterion::embedding_similarity);
        CHECK(split.sparse_ids.size() + split.rest_ids.size() == small.size());
        for (const auto& id : split.sparse_ids) CHECK_FALSE(split.rest_ids.count(id));
        for (const auto& c : split.all)
            CHECK((split.sparse_ids.count(c.id) > 0) == c.is_sparse);
    }
}

TEST_CASE("criterion 2: bm25 matches direct formula evaluation") {
    std::mt19937 rng(103);
    HashedBowProvider provider(16);
    std::uniform_int_distribution<std::size_t> n_docs(1, 10);
    for (int iter = 0; iter < 100; ++iter) {
        auto chunks = ragtest::random_corpus(rng, n_docs(rng), provider, 0.2);
        auto index = LexicalIndex::build(chunks, 1.2, 0.75);
        std::string query = ragtest::random_text(rng, 1, 8);
        for (const auto& c : chunks) {
            double expected = oracle_bm25(chunks, query, c.id, 1.2, 0.75);
            double got = index.score(query, c.id);
            CHECK(std::abs(got - expected) < 1e-9);
        }
        auto ranked = index.top_k(query, chunks.size());
        for (std::size_t i = 0; i + 1 < ranked.size(); ++i) {
            CHECK(ranked[i].score >= ranked[i + 1].score);
            CHECK(index.score(query, ranked[i].chunk_id) >=
                  index.score(query, ranked[i + 1].chunk_id));
            if (ranked[i].score == ranked[i + 1].score)
                CHECK(ranked[i].chunk_id < ranked[i + 1].chunk_id);
        }
    }
}

TEST_CASE("criterion 3: cosine similarity and distance rank identically") {
    std::mt19937 rng(107);
    for (int iter = 0; iter < 500; ++iter) {
        std::vector<DenseIndex::Entry> entries;
        for (int i = 0; i < 20; ++i) {
            char id[8];
            std::snprintf(id, sizeof(id), "v%02d", i);
            entries.push_back({id, random_vec(rng, 8, false)});
        }
        auto index = DenseIndex::from_entries(std::move(entries));
        auto q = random_vec(rng, 8, false);

        auto by_sim = index.top_k(q, 20, Metric::cosine_similarity);
        auto by_dist = index.top_k(q, 20, Metric::cosine_distance);
        CHECK(id_sequence(by_sim) == id_sequence(by_dist));

        // L2-normalized pool: euclidean ordering equals cosine ordering
        std::vector<DenseIndex::Entry> unit_entries;
        for (int i = 0; i < 20; ++i) {
            char id[8];
            std::snprintf(id, sizeof(id), "u%02d", i);
            unit_entries.push_back({id, random_vec(rng, 8, true)});
        }
        auto unit_index = DenseIndex::from_entries(std::move(unit_entries));
        auto uq = random_vec(rng, 8, true);
        CHECK(id_sequence(unit_index.top_k(uq, 20, Metric::euclidean)) ==
              id_sequence(unit_index.top_k(uq, 20, Metric::cosine_similarity)));
    }
}

TEST_CASE("criterion 4: sparse-fact queries succeed only through the fallback") {
    auto start = Clock::now();
    auto corpus = ragtest::build_synthetic_corpus();
    REQUIRE(corpus.chunks.size() == 50);
    auto built = ragtest::build_indexes(corpus.chunks, 0.8);

    // the partition isolates exactly the 10 single-occurrence fact chunks
    CHECK(built.corpus.sparse_ids == IdSet(corpus.fact_ids.begin(), corpus.fact_ids.end()));
    CHECK(built.corpus.rest_ids.size() == 40);

    HashedBowProvider provider(64);
    ExtractiveGenerator generator;
    RejectAnswerValidator validator;
    LexicalOverlapReranker reranker;
    PipelineConfig with_fallback;
    PipelineConfig no_fallback;
    no_fallback.enable_fallback = false;

    int fallback_successes = 0;
    int baseline_successes = 0;
    for (std::size_t i = 0; i < corpus.fact_queries.size(); ++i) {
        Query q{corpus.fact_queries[i], provider.embed(corpus.fact_queries[i]), 5};

        auto outcome = answer_query(q, built.corpus, built.lexical, built.dense, generator,
                                    validator, reranker, with_fallback);
        bool answered = outcome.answer == corpus.fact_answers[i];
        CHECK(outcome.path == AnswerPath::distance);
        CHECK(answered);
        for (const auto& r : outcome.supporting)
            CHECK(built.corpus.sparse_ids.count(r.chunk_id));
        if (answered && outcome.path == AnswerPath::distance) ++fallback_successes;

        auto baseline = answer_query(q, built.corpus, built.lexical, built.dense, generator,
                                     validator, reranker, no_fallback);
        CHECK(baseline.path == AnswerPath::hybrid_unvalidated);
        if (baseline.answer == corpus.fact_answers[i]) ++baseline_successes;
    }
    CHECK(fallback_successes == 10);
    CHECK(baseline_successes == 0);

    for (const auto& topic_query : corpus.topic_queries) {
        ragtest::FnGenerator counting(
            [&](const std::string& q2, const std::vector<const Chunk*>& ctx) {
                ExtractiveGenerator inner;
                return inner.generate(q2, ctx);
            });
        Query q{topic_query, provider.embed(topic_query), 5};
        auto outcome = answer_query(q, built.corpus, built.lexical, built.dense, counting,
                                    validator, reranker, with_fallback);
        CHECK(outcome.path == AnswerPath::hybrid);
        CHECK(counting.calls == 1);
        for (const auto& r : outcome.supporting)
            CHECK(built.corpus.rest_ids.count(r.chunk_id));
    }
    CHECK(seconds_since(start) < 10.0);
}

TEST_CASE("criterion 5: the fallback scans exactly the sparse subset") {
    auto corpus = ragtest::build_synthetic_corpus();
    auto built = ragtest::build_indexes(corpus.chunks, 0.8);
    HashedBowProvider provider(64);
    ExtractiveGenerator generator;
    RejectAnswerValidator validator;
    LexicalOverlapReranker reranker;

    for (const auto& fact_query : corpus.fact_queries) {
        Query q{fact_query, provider.embed(fact_query), 5};
        auto outcome = answer_query(q, built.corpus, built.lexical, built.dense, generator,
                                    validator, reranker, {});
        REQUIRE(outcome.path == AnswerPath::distance);
        CHECK(outcome.fallback_distance_evaluations == built.corpus.sparse_ids.size());
        CHECK(outcome.fallback_distance_evaluations < corpus.chunks.size());
    }
}

TEST_CASE("criterion 6: metric arithmetic matches the hand-computed table") {
    CHECK(std::abs(contextual_precision({true, false, true}) - 0.8333) < 1e-4);
    CHECK(contextual_precision({true, false, true}) ==
          doctest::Approx(5.0 / 6.0).epsilon(1e-9));
    CHECK(meteor_exact("the cat", "the cat") == 0.9375);
    auto prf = token_prf("a b b", "b c");
    CHECK(std::abs(prf.precision - 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(prf.recall - 0.5) < 1e-12);
    CHECK(std::abs(prf.f_score - 0.4) < 1e-12);

    // five-case fixture, expected report computed independently from the
    // metric definitions
    std::vector<EvalCase> cases = {
        {"what is the library schedule",
         "the library opens daily",
         {"the library opens daily"},
         "the library opens daily"},
        {"how tall is the clock tower",
         "the tower is ninety meters tall",
         {"bananas are yellow fruit"},
         "penguins swim in cold water"},
        {"when does the museum open",
         "the museum opens at nine",
         {"the museum opens at nine. tickets cost five dollars.", "the cafe serves coffee",
          "the museum closes at six"},
         "the museum opens at nine. admission is free."},
        {"what courses does the school offer",
         "the school offers painting. sculpture is offered to students. classes meet weekly.",
         {"the school offers painting and sculpture to students"},
         "the school offers painting. the weather is warm. enrollment requires forms. courses "
         "include sculpture."},
        {"where is the art gallery located",
         "the gallery sits on main street near the park",
         {"the gallery sits on main street. the gallery hosts exhibits monthly.",
          "visitors praise the gallery"},
         "the gallery sits on main street. the gallery hosts exhibits monthly. visitors praise "
         "the gallery. it was built long ago."}};

    const std::vector<std::map<std::string, double>> expected = {
        {{"precision", 1.0},
         {"recall", 1.0},
         {"f_score", 1.0},
         {"meteor", 0.9921875},
         {"contextual_precision", 1.0},
         {"contextual_recall", 1.0},
         {"contextual_relevancy", 1.0},
         {"answer_relevancy", 1.0},
         {"faithfulness", 1.0}},
        {{"precision", 0.0},
         {"recall", 0.0},
         {"f_score", 0.0},
         {"meteor", 0.0},
         {"contextual_precision", 0.0},
         {"contextual_recall", 0.0},
         {"contextual_relevancy", 0.0},
         {"answer_relevancy", 0.0},
         {"faithfulness", 0.0}},
        {{"precision", 0.5},
         {"recall", 0.80000000000000004},
         {"f_score", 0.61538461538461542},
         {"meteor", 0.74882075471698117},
         {"contextual_precision", 0.83333333333333337},
         {"contextual_recall", 1.0},
         {"contextual_relevancy", 0.5},
         {"answer_relevancy", 0.5},
         {"faithfulness", 0.5}},
        {{"precision", 0.35714285714285715},
         {"recall", 0.41666666666666669},
         {"f_score", 0.38461538461538464},
         {"meteor", 0.39672131147540984},
         {"contextual_precision", 1.0},
         {"contextual_recall", 0.66666666666666663},
         {"contextual_relevancy", 1.0},
         {"answer_relevancy", 0.5},
         {"faithfulness", 0.25}},
        {{"precision", 0.29999999999999999},
         {"recall", 0.66666666666666663},
         {"f_score", 0.41379310344827586},
         {"meteor", 0.58305830583058305},
         {"contextual_precision", 1.0},
         {"contextual_recall", 1.0},
         {"contextual_relevancy", 1.0},
         {"answer_relevancy", 0.75},
         {"faithfulness", 0.75}}};

    const std::map<std::string, double> expected_aggregate = {
        {"precision", 0.43142857142857138},
        {"recall", 0.57666666666666666},
        {"f_score", 0.48275862068965514},
        {"meteor", 0.54415757440459478},
        {"contextual_precision", 0.76666666666666672},
        {"contextual_recall", 0.73333333333333328},
        {"contextual_relevancy", 0.69999999999999996},
        {"answer_relevancy", 0.55000000000000004},
        {"faithfulness", 0.5}};

    RuleJudge judge;
    auto report = evaluate(cases, judge);
    REQUIRE(report.per_case.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        for (const auto& [name, value] : expected[i])
            CHECK(report.per_case[i].at(name) == doctest::Approx(value).epsilon(1e-12));
    for (const auto& [name, value] : expected_aggregate)
        CHECK(report.aggregate.at(name) == doctest::Approx(value).epsilon(1e-12));
}

TEST_CASE("criterion 7: long-context reordering matches the stated permutations") {
    auto ranks = [](int n) {
        std::vector<RetrievalResult> out;
        for (int i = 1; i <= n; ++i)
            out.push_back({std::to_string(i), 1.0 / i, static_cast<std::size_t>(i), Origin::fused});
        return out;
    };
    CHECK(id_sequence(reorder_long_context(ranks(9))) ==
          std::vector<std::string>{"1", "3", "5", "7", "9", "8", "6", "4", "2"});
    CHECK(id_sequence(reorder_long_context(ranks(4))) ==
          std::vector<std::string>{"1", "3", "4", "2"});
}

TEST_CASE("criterion 8: round trips and the service contract hold") {
    namespace fs = std::filesystem;

    // 100-chunk corpus: the synthetic fixture plus vocabulary-shifted copies
    auto corpus = ragtest::build_synthetic_corpus();
    std::vector<Chunk> chunks = corpus.chunks;
    HashedBowProvider provider(64);
    {
        std::vector<Chunk> extra;
        for (int i = 0; i < 50; ++i) {
            auto c = ragtest::make_chunk("extra-" + std::to_string(i),
                                         "auxiliary passage number " + std::to_string(i) +
                                             " about campus services");
            extra.push_back(std::move(c));
        }
        extra = embed_chunks(std::move(extra), provider);
        chunks.insert(chunks.end(), extra.begin(), extra.end());
    }
    REQUIRE(chunks.size() == 100);
    auto pc = partition(chunks, 0.8, SparsityCriterion::embedding_similarity);
    EngineConfig config;

    auto path = (fs::temp_directory_path() / "ragcore_acceptance_index.json").string();
    save_index(pc, config, path);
    auto loaded = load_index(path);
    CHECK(loaded.config == config);
    CHECK(loaded.corpus.sparse_ids == pc.sparse_ids);
    CHECK(loaded.corpus.rest_ids == pc.rest_ids);
    REQUIRE(loaded.corpus.all.size() == pc.all.size());
    for (std::size_t i = 0; i < pc.all.size(); ++i) CHECK(loaded.corpus.all[i] == pc.all[i]);
    fs::remove(path);

    EngineConfig tweaked;
    tweaked.tau = 0.65;
    tweaked.rrf_k = 42.0;
    tweaked.system_prompt = "Reply in one sentence.";
    CHECK(parse_config(emit_config(tweaked)) == tweaked);

    // service returns the distance path for sparse-fact queries
    auto built = ragtest::build_indexes(corpus.chunks, 0.8);
    ExtractiveGenerator generator;
    RejectAnswerValidator validator;
    LexicalOverlapReranker reranker;
    ServiceDeps deps;
    deps.corpus = &built.corpus;
    deps.lexical = &built.lexical;
    deps.dense = &built.dense;
    deps.embedder = &provider;
    deps.generator = &generator;
    deps.validator = &validator;
    deps.reranker = &reranker;
    Service service(std::move(deps));
    int port = service.start("127.0.0.1", 0);
    REQUIRE(port > 0);
    httplib::Client client("127.0.0.1", port);
    for (std::size_t i = 0; i < corpus.fact_queries.size(); ++i) {
        auto res = client.Post("/query",
                               nlohmann::json{{"query", corpus.fact_queries[i]}}.dump(),
                               "application/json");
        REQUIRE(res);
        REQUIRE(res->status == 200);
        auto body = nlohmann::json::parse(res->body);
        CHECK(body.at("path").get<std::string>() == "distance");
        CHECK(body.at("answer").get<std::string>() == corpus.fact_answers[i]);
        REQUIRE(body.at("chunks").is_array());
        for (const auto& chunk : body.at("chunks")) {
            CHECK(chunk.at("id").is_string());
            CHECK(chunk.at("source_uri").is_string());
            CHECK(chunk.at("score").is_number());
        }
        CHECK(body.at("timings").is_object());
    }
    service.stop();
}

TEST_CASE("criterion 9: the validation prompt renders byte-exactly") {
    const std::string expected =
        "You are an intelligent bot designed to assist users on an organization's website by "
        "answering their queries. You'll be given a user's question and an associated answer. "
        "Your task is to determine if the provided answer effectively resolves the query. If "
        "the answer is unsatisfactory, return 0.\n"
        "Query:  Q1\n"
        "Answer: A1\n"
        "Your Feedback:";
    std::string rendered = render_validation_prompt("Q1", "A1");
    REQUIRE(rendered.size() == expected.size());
    CHECK(rendered == expected);
}
