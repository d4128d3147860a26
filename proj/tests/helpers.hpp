#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ragcore/embedding.hpp"
#include "ragcore/pipeline.hpp"
#include "ragcore/types.hpp"

namespace ragtest {

inline ragcore::Chunk make_chunk(std::string id, std::string text,
                                 std::vector<double> embedding = {}) {
    ragcore::Chunk c;
    c.id = std::move(id);
    c.source_uri = "test://corpus";
    c.text = std::move(text);
    c.token_begin = 0;
    c.token_end = 1;
    c.embedding.values = std::move(embedding);
    return c;
}

class FnGenerator : public ragcore::Generator {
public:
    using Fn = std::function<std::string(const std::string&,
                                         const std::vector<const ragcore::Chunk*>&)>;
    explicit FnGenerator(Fn fn) : fn_(std::move(fn)) {}
    std::string generate(const std::string& query,
                         const std::vector<const ragcore::Chunk*>& context) override {
        ++calls;
        return fn_(query, context);
    }
    int calls = 0;

private:
    Fn fn_;
};

class FnValidator : public ragcore::Validator {
public:
    using Fn = std::function<std::string(const std::string&)>;
    explicit FnValidator(Fn fn) : fn_(std::move(fn)) {}
    std::string feedback(const std::string& prompt) override {
        ++calls;
        last_prompt = prompt;
        return fn_(prompt);
    }
    int calls = 0;
    std::string last_prompt;

private:
    Fn fn_;
};

/// Random corpus text drawn from a small shared vocabulary, deterministic
/// under the caller's engine.
inline std::string random_text(std::mt19937& rng, std::size_t min_tokens = 3,
                               std::size_t max_tokens = 12, std::size_t vocab = 50) {
    std::uniform_int_distribution<std::size_t> len(min_tokens, max_tokens);
    std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
    std::size_t n = len(rng);
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out += ' ';
        out += "w" + std::to_string(word(rng));
    }
    return out;
}

inline std::vector<ragcore::Chunk> random_corpus(std::mt19937& rng, std::size_t n,
                                                 ragcore::EmbeddingProvider& provider,
                                                 double duplicate_fraction = 0.2) {
    std::vector<ragcore::Chunk> chunks;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::string body = (!chunks.empty() && coin(rng) < duplicate_fraction)
                               ? chunks[i - 1].text
                               : random_text(rng);
        char id[32];
        std::snprintf(id, sizeof(id), "c%04zu", i);
        chunks.push_back(make_chunk(id, body));
    }
    return ragcore::embed_chunks(std::move(chunks), provider);
}

}  // namespace ragtest
