#include "ragcore/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"

#include "ragcore/chunker.hpp"
#include "ragcore/config.hpp"
#include "ragcore/crawler.hpp"
#include "ragcore/embedding.hpp"
#include "ragcore/eval.hpp"
#include "ragcore/index_io.hpp"
#include "ragcore/server.hpp"

namespace ragcore {

namespace {

std::unique_ptr<EmbeddingProvider> make_provider(const EngineConfig& config) {
    if (config.embedding_provider == "remote")
        return std::make_unique<RemoteEmbeddingProvider>(
            config.embedding_endpoint, config.embedding_dim, config.embedding_api_key_env);
    return std::make_unique<HashedBowProvider>(config.embedding_dim);
}

std::unique_ptr<Generator> make_generator(const EngineConfig& config) {
    if (!config.generator_endpoint.empty())
        return std::make_unique<RemoteGenerator>(config.generator_endpoint,
                                                 config.llm_api_key_env, config.system_prompt);
    return std::make_unique<ExtractiveGenerator>();
}

std::unique_ptr<Validator> make_validator(const EngineConfig& config) {
    if (!config.validator_endpoint.empty())
        return std::make_unique<RemoteValidator>(config.validator_endpoint,
                                                 config.llm_api_key_env);
    return std::make_unique<RejectAnswerValidator>();
}

int cmd_ingest(const std::string& seed, std::size_t depth, bool all_hosts, int delay_ms,
               const std::string& out_dir) {
    HttpFetcher fetcher;
    CrawlOptions options;
    options.max_depth = depth;
    options.same_host_only = !all_hosts;
    options.delay = std::chrono::milliseconds(delay_ms);
    auto pages = crawl(seed, options, fetcher);
    write_ingest_output(pages, out_dir);
    std::cout << "fetched " << pages.size() << " page(s) into " << out_dir << "\n";
    return 0;
}

int cmd_index(const std::string& in_dir, EngineConfig config, const std::string& out_file) {
    auto docs = read_ingest_output(in_dir);
    auto provider = make_provider(config);

    std::vector<Chunk> chunks;
    for (const auto& doc : docs) {
        auto doc_chunks = chunk_text(doc, {config.chunk_size, config.overlap});
        for (auto& c : doc_chunks) c.metadata = extract_metadata(c);
        chunks.insert(chunks.end(), std::make_move_iterator(doc_chunks.begin()),
                      std::make_move_iterator(doc_chunks.end()));
    }
    if (chunks.empty()) throw Error("no text to index under " + in_dir);
    chunks = embed_chunks(std::move(chunks), *provider);

    // not partitioned yet: everything sits in R until `partition` runs
    PartitionedCorpus pc;
    pc.all = std::move(chunks);
    pc.tau = config.tau;
    pc.criterion = config.criterion;
    for (const auto& c : pc.all) pc.rest_ids.insert(c.id);
    save_index(pc, config, out_file);
    std::cout << "indexed " << pc.all.size() << " chunk(s) into " << out_file << "\n";
    return 0;
}

int cmd_partition(const std::string& index_file, double tau, const std::string& criterion) {
    LoadedIndex loaded = load_index(index_file);
    auto crit = criterion_from_string(criterion);
    PartitionedCorpus pc = partition(loaded.corpus.all, tau, crit);
    loaded.config.tau = tau;
    loaded.config.criterion = crit;
    save_index(pc, loaded.config, index_file);
    std::cout << "|S| = " << pc.sparse_ids.size() << "\n|R| = " << pc.rest_ids.size() << "\n";
    return 0;
}

int cmd_query(const std::string& index_file, const std::string& query_text, std::size_t top_k) {
    LoadedIndex loaded = load_index(index_file);
    auto provider = make_provider(loaded.config);
    auto generator = make_generator(loaded.config);
    auto validator = make_validator(loaded.config);
    LexicalOverlapReranker reranker;

    Query query;
    query.text = query_text;
    query.embedding = provider->embed(query_text);
    query.top_k = top_k ? top_k : loaded.config.top_k_hybrid;

    QueryOutcome outcome = answer_query(query, loaded.corpus, loaded.lexical, loaded.dense,
                                        *generator, *validator, reranker, loaded.config.pipeline());
    std::cout << "answer: " << outcome.answer << "\n";
    std::cout << "path: " << to_string(outcome.path) << "\n";
    std::cout << "chunks:";
    for (const auto& r : outcome.supporting) std::cout << ' ' << r.chunk_id;
    std::cout << "\n";
    return 0;
}

int cmd_eval(const std::string& cases_file, const std::string& judge_kind,
             const std::string& judge_endpoint, const std::string& out_file) {
    auto cases = load_cases(cases_file);
    std::unique_ptr<Judge> judge;
    if (judge_kind == "remote")
        judge = std::make_unique<RemoteJudge>(judge_endpoint);
    else
        judge = std::make_unique<RuleJudge>();
    EvalReport report = evaluate(cases, *judge);
    if (!out_file.empty()) {
        std::ofstream out(out_file, std::ios::binary);
        if (!out) throw Error("cannot write report to " + out_file);
        out << report_to_json(report) << "\n";
    }
    std::cout << render_report_table(report);
    return 0;
}

int cmd_serve(const std::string& index_file, const std::string& host, int port) {
    LoadedIndex loaded = load_index(index_file);
    auto provider = make_provider(loaded.config);
    auto generator = make_generator(loaded.config);
    auto validator = make_validator(loaded.config);
    LexicalOverlapReranker reranker;

    ServiceDeps deps;
    deps.corpus = &loaded.corpus;
    deps.lexical = &loaded.lexical;
    deps.dense = &loaded.dense;
    deps.embedder = provider.get();
    deps.generator = generator.get();
    deps.validator = validator.get();
    deps.reranker = &reranker;
    deps.pipeline = loaded.config.pipeline();

    Service service(std::move(deps));
    std::cout << "serving " << loaded.corpus.all.size() << " chunk(s) on " << host << ":" << port
              << "\n";
    service.run(host, port);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"hybrid BM25+dense retrieval engine with a sparse-subset distance fallback"};
    app.require_subcommand(1);
    std::string config_file;
    app.add_option("--config", config_file, "engine config file (INI)");

    auto* ingest = app.add_subcommand("ingest", "crawl a site and store page text");
    std::string seed, out_dir;
    std::size_t depth = 2;
    bool all_hosts = false;
    int delay_ms = -1;
    ingest->add_option("--seed", seed, "seed URI")->required();
    ingest->add_option("--depth", depth, "maximum link depth");
    ingest->add_option("--out", out_dir, "output directory")->required();
    ingest->add_flag("--all-hosts", all_hosts, "follow links to other hosts");
    ingest->add_option("--delay-ms", delay_ms, "inter-request delay (default from config)");

    auto* index = app.add_subcommand("index", "chunk, embed and store a corpus");
    std::string in_dir, index_out;
    std::size_t chunk_size = 0, overlap_opt = SIZE_MAX;
    std::string provider_opt;
    index->add_option("--in", in_dir, "ingest output directory")->required();
    index->add_option("--out", index_out, "index file to write")->required();
    index->add_option("--chunk-size", chunk_size, "tokens per chunk");
    index->add_option("--overlap", overlap_opt, "token overlap between chunks");
    index->add_option("--provider", provider_opt, "embedding provider (local|remote)");

    auto* part = app.add_subcommand("partition", "split the corpus into sparse and rest subsets");
    std::string part_index, criterion = "embedding";
    double tau = 0.80;
    part->add_option("--index", part_index, "index file to rewrite")->required();
    part->add_option("--tau", tau, "sparsity threshold in [0,1]");
    part->add_option("--criterion", criterion, "embedding|ngram");

    auto* query = app.add_subcommand("query", "answer a question against an index");
    std::string query_index, query_text;
    std::size_t top_k = 0;
    query->add_option("--index", query_index, "index file")->required();
    query->add_option("--query", query_text, "question text")->required();
    query->add_option("--top-k", top_k, "chunks per retrieval path");

    auto* eval_cmd = app.add_subcommand("eval", "compute retrieval/generation metrics");
    std::string cases_file, judge_kind = "rule", judge_endpoint, report_out;
    eval_cmd->add_option("--cases", cases_file, "JSON cases file")->required();
    eval_cmd->add_option("--judge", judge_kind, "rule|remote");
    eval_cmd->add_option("--judge-endpoint", judge_endpoint, "endpoint for the remote judge");
    eval_cmd->add_option("--out", report_out, "report JSON output path");

    auto* serve_cmd = app.add_subcommand("serve", "run the HTTP query service");
    std::string serve_index, host = "0.0.0.0";
    int port = 8080;
    serve_cmd->add_option("--index", serve_index, "index file")->required();
    serve_cmd->add_option("--host", host, "bind address");
    serve_cmd->add_option("--port", port, "bind port");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        EngineConfig config;
        if (!config_file.empty()) config = load_config_file(config_file);

        if (*ingest)
            return cmd_ingest(seed, depth, all_hosts, delay_ms >= 0 ? delay_ms : config.delay_ms,
                              out_dir);
        if (*index) {
            if (chunk_size) config.chunk_size = chunk_size;
            if (overlap_opt != SIZE_MAX) config.overlap = overlap_opt;
            if (!provider_opt.empty()) {
                if (provider_opt != "local" && provider_opt != "remote")
                    throw Error("provider must be local or remote");
                config.embedding_provider = provider_opt;
            }
            if (config.overlap >= config.chunk_size)
                throw Error("overlap must be smaller than chunk_size");
            return cmd_index(in_dir, config, index_out);
        }
        if (*part) return cmd_partition(part_index, tau, criterion);
        if (*query) return cmd_query(query_index, query_text, top_k);
        if (*eval_cmd) {
            if (judge_kind != "rule" && judge_kind != "remote")
                throw Error("judge must be rule or remote");
            if (judge_kind == "remote" && judge_endpoint.empty())
                throw Error("remote judge needs --judge-endpoint");
            return cmd_eval(cases_file, judge_kind, judge_endpoint, report_out);
        }
        if (*serve_cmd) return cmd_serve(serve_index, host, port);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace ragcore
