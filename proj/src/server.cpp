#include "ragcore/server.hpp"

#include <thread>

#include "httplib.h"
#include "nlohmann/json.hpp"

namespace ragcore {

struct Service::Impl {
    ServiceDeps deps;
    httplib::Server server;
    std::thread worker;

    explicit Impl(ServiceDeps d) : deps(std::move(d)) {
        server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(R"({"status":"ok"})", "application/json");
        });
        server.Post("/query", [this](const httplib::Request& req, httplib::Response& res) {
            handle_query(req, res);
        });
    }

    void handle_query(const httplib::Request& req, httplib::Response& res) {
        nlohmann::json body;
        try {
            body = nlohmann::json::parse(req.body);
        } catch (const nlohmann::json::parse_error& e) {
            respond_error(res, 400, std::string("malformed JSON body: ") + e.what());
            return;
        }
        if (!body.is_object() || !body.contains("query") || !body["query"].is_string() ||
            body["query"].get<std::string>().empty()) {
            respond_error(res, 400, "body must be an object with a non-empty \"query\" string");
            return;
        }
        Query query;
        query.text = body["query"].get<std::string>();
        query.top_k = deps.pipeline.top_k_hybrid;
        if (body.contains("top_k")) {
            if (!body["top_k"].is_number_integer() || body["top_k"].get<int>() < 1) {
                respond_error(res, 400, "\"top_k\" must be a positive integer");
                return;
            }
            query.top_k = static_cast<std::size_t>(body["top_k"].get<int>());
        }

        try {
            query.embedding = deps.embedder->embed(query.text);
            QueryOutcome outcome =
                answer_query(query, *deps.corpus, *deps.lexical, *deps.dense, *deps.generator,
                             *deps.validator, *deps.reranker, deps.pipeline);
            nlohmann::json out;
            out["answer"] = outcome.answer;
            out["path"] = to_string(outcome.path);
            out["chunks"] = nlohmann::json::array();
            for (const auto& r : outcome.supporting) {
                const Chunk* chunk = nullptr;
                for (const auto& c : deps.corpus->all)
                    if (c.id == r.chunk_id) { chunk = &c; break; }
                out["chunks"].push_back({{"id", r.chunk_id},
                                         {"source_uri", chunk ? chunk->source_uri : ""},
                                         {"score", r.score}});
            }
            out["timings"] = outcome.timings;
            res.set_content(out.dump(), "application/json");
        } catch (const StageError& e) {
            respond_error(res, 502, e.what());  // generator/validator backend failure
        } catch (const TransportError& e) {
            respond_error(res, 502, e.what());
        } catch (const Error& e) {
            respond_error(res, 400, e.what());
        }
    }

    static void respond_error(httplib::Response& res, int status, const std::string& message) {
        res.status = status;
        res.set_content(nlohmann::json{{"error", message}}.dump(), "application/json");
    }
};

Service::Service(ServiceDeps deps) : impl_(std::make_unique<Impl>(std::move(deps))) {}

Service::~Service() { stop(); }

int Service::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = impl_->server.bind_to_any_port(host);
        if (bound <= 0) throw Error("cannot bind to " + host);
    } else if (!impl_->server.bind_to_port(host, port)) {
        throw Error("cannot bind to " + host + ":" + std::to_string(port));
    }
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return bound;
}

void Service::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->worker.joinable()) impl_->worker.join();
}

void Service::run(const std::string& host, int port) {
    if (!impl_->server.bind_to_port(host, port))
        throw Error("cannot bind to " + host + ":" + std::to_string(port));
    impl_->server.listen_after_bind();
}

}  // namespace ragcore
