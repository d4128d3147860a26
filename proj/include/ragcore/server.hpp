#pragma once

#include <memory>
#include <string>

#include "ragcore/config.hpp"
#include "ragcore/embedding.hpp"
#include "ragcore/index_io.hpp"
#include "ragcore/pipeline.hpp"

namespace ragcore {

/// Everything a query needs, shared read-only across requests. The generator,
/// validator and reranker must be safe to call from concurrent handlers.
struct ServiceDeps {
    const PartitionedCorpus* corpus = nullptr;
    const LexicalIndex* lexical = nullptr;
    const DenseIndex* dense = nullptr;
    EmbeddingProvider* embedder = nullptr;
    Generator* generator = nullptr;
    Validator* validator = nullptr;
    Reranker* reranker = nullptr;
    PipelineConfig pipeline;
};

/// HTTP front end: GET /health and POST /query. The index is never mutated.
class Service {
public:
    explicit Service(ServiceDeps deps);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Bind and serve on a background thread. port 0 picks a free port;
    /// returns the bound port.
    int start(const std::string& host, int port);
    void stop();

    /// Bind and block the calling thread.
    void run(const std::string& host, int port);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ragcore
