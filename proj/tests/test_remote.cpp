// Wire-format coverage for every HTTP backend the engine can talk to:
// embedding provider, generator/validator completion endpoints, and the
// remote judge. A single fixture server stands in for all of them.

#include <cstdlib>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "nlohmann/json.hpp"

#include "helpers.hpp"
#include "ragcore/embedding.hpp"
#include "ragcore/eval.hpp"
#include "ragcore/pipeline.hpp"

using namespace ragcore;
using nlohmann::json;

namespace {

struct FixtureServer {
    httplib::Server server;
    std::thread worker;
    int port = 0;
    std::string last_auth;
    json last_request;

    FixtureServer() {
        server.Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
            last_auth = req.get_header_value("Authorization");
            last_request = json::parse(req.body);
            json out;
            out["embeddings"] = json::array();
            for (const auto& text : last_request.at("texts")) {
                double bias = static_cast<double>(text.get<std::string>().size());
                out["embeddings"].push_back({bias, 1.0, 0.0, 0.0});
            }
            res.set_content(out.dump(), "application/json");
        });
        server.Post("/embed-bad-dim", [](const httplib::Request& req, httplib::Response& res) {
            json out;
            out["embeddings"] = json::array();
            for (std::size_t i = 0; i < json::parse(req.body).at("texts").size(); ++i)
                out["embeddings"].push_back({1.0});
            res.set_content(out.dump(), "application/json");
        });
        server.Post("/complete", [this](const httplib::Request& req, httplib::Response& res) {
            last_request = json::parse(req.body);
            res.set_content(json{{"text", "echo: " + last_request.at("prompt").get<std::string>()
                                              .substr(0, 24)}}
                                .dump(),
                            "application/json");
        });
        server.Post("/always-zero", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(json{{"text", "0"}}.dump(), "application/json");
        });
        server.Post("/broken", [](const httplib::Request&, httplib::Response& res) {
            res.status = 500;
            res.set_content("backend exploded", "text/plain");
        });
        port = server.bind_to_any_port("127.0.0.1");
        worker = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~FixtureServer() {
        server.stop();
        worker.join();
    }
    std::string url(const std::string& path) const {
        return "http://127.0.0.1:" + std::to_string(port) + path;
    }
};

}  // namespace

TEST_SUITE_BEGIN("remote_providers");

TEST_CASE("remote embedding provider speaks the texts/embeddings schema") {
    FixtureServer fixture;
    setenv("RAGCORE_TEST_KEY", "sekrit", 1);
    RemoteEmbeddingProvider provider(fixture.url("/embed"), 4, "RAGCORE_TEST_KEY");

    auto out = provider.embed_batch({"alpha", "longer text"});
    REQUIRE(out.size() == 2);
    CHECK(out[0].dim() == 4);
    CHECK(out[0].values[0] == 5.0);   // "alpha"
    CHECK(out[1].values[0] == 11.0);  // "longer text"
    CHECK(fixture.last_auth == "Bearer sekrit");
    CHECK(fixture.last_request.at("texts")[1] == "longer text");

    auto chunks = embed_chunks({ragtest::make_chunk("c1", "alpha")}, provider);
    CHECK(chunks[0].embedding.dim() == 4);
    unsetenv("RAGCORE_TEST_KEY");
}

TEST_CASE("remote embedding provider rejects malformed responses") {
    FixtureServer fixture;
    RemoteEmbeddingProvider wrong_dim(fixture.url("/embed-bad-dim"), 4);
    CHECK_THROWS_WITH_AS(wrong_dim.embed_batch({"x"}), doctest::Contains("dim"), TransportError);

    RemoteEmbeddingProvider dead(fixture.url("/broken"), 4);
    CHECK_THROWS_AS(dead.embed_batch({"x"}), TransportError);

    RemoteEmbeddingProvider unreachable("http://127.0.0.1:1/embed", 4);
    CHECK_THROWS_AS(unreachable.embed_batch({"x"}), TransportError);
}

TEST_CASE("remote generator posts the assembled prompt and reads text") {
    FixtureServer fixture;
    RemoteGenerator generator(fixture.url("/complete"), "", "System says hello.");
    auto c1 = ragtest::make_chunk("c1", "first context chunk");
    auto c2 = ragtest::make_chunk("c2", "second context chunk");
    std::string answer = generator.generate("the question", {&c1, &c2});
    CHECK(answer.rfind("echo: ", 0) == 0);

    std::string prompt = fixture.last_request.at("prompt").get<std::string>();
    CHECK(prompt ==
          "System says hello.\n\nfirst context chunk\n\nsecond context chunk\n\nthe question");
}

TEST_CASE("remote validator returns raw feedback for the validation prompt") {
    FixtureServer fixture;
    RemoteValidator rejecting(fixture.url("/always-zero"));
    auto verdict = validate("q", "a", rejecting);
    CHECK_FALSE(verdict.satisfactory);
    CHECK(verdict.raw_feedback == "0");

    RemoteValidator echoing(fixture.url("/complete"));
    CHECK(validate("q", "a", echoing).satisfactory);
    CHECK(fixture.last_request.at("prompt").get<std::string>().rfind("You are an intelligent",
                                                                     0) == 0);

    RemoteValidator dead(fixture.url("/broken"));
    CHECK_THROWS_AS(validate("q", "a", dead), TransportError);
}

TEST_CASE("remote judge maps prompt replies onto judge decisions") {
    FixtureServer fixture;
    RemoteJudge zero(fixture.url("/always-zero"));
    CHECK_FALSE(zero.is_relevant("statement", "query"));
    CHECK_FALSE(zero.is_attributable("claim", {"context"}));
    CHECK(zero.split_statements("whatever") == std::vector<std::string>{"0"});

    RemoteJudge echoing(fixture.url("/complete"));
    CHECK(echoing.is_relevant("statement", "query"));  // non-"0" counts as yes
}

TEST_SUITE_END();
