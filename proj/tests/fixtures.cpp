#include "fixtures.hpp"

#include <cstdio>

#include "ragcore/embedding.hpp"

namespace ragtest {

namespace {

const std::vector<std::string> kTopics = {
    "astronomy", "botany",     "chemistry",  "drama",    "economics",
    "geology",   "history",    "literature", "mechanics", "music",
    "painting",  "philosophy", "physics",    "poetry",    "pottery",
    "robotics",  "sculpture",  "statistics", "theater",   "zoology"};

// Coined terms that occur in exactly one chunk each.
const std::vector<std::pair<std::string, std::string>> kFacts = {
    {"zelkora", "threshold"}, {"morvath", "sequence"}, {"quievel", "gradient"},
    {"tarniss", "interval"},  {"velquor", "capacity"}, {"ombrade", "lattice"},
    {"frenzik", "quotient"},  {"luvaren", "cadence"},  {"pyrnell", "register"},
    {"dravask", "horizon"}};

}  // namespace

SyntheticCorpus build_synthetic_corpus() {
    SyntheticCorpus out;
    char id[24];
    for (std::size_t i = 0; i < kTopics.size(); ++i) {
        std::string body = "students and visitors explore the campus library to discuss " +
                           kTopics[i] + " during open study sessions";
        for (char suffix : {'a', 'b'}) {
            std::snprintf(id, sizeof(id), "common-%02zu%c", i, suffix);
            ragcore::Chunk c;
            c.id = id;
            c.source_uri = "test://common";
            c.text = body;
            c.token_begin = 0;
            c.token_end = 15;
            out.chunks.push_back(std::move(c));
        }
        out.topic_queries.push_back("where do students discuss " + kTopics[i]);
    }
    for (std::size_t i = 0; i < kFacts.size(); ++i) {
        const auto& [name, attr] = kFacts[i];
        std::string value = std::to_string(101 + i);
        std::snprintf(id, sizeof(id), "fact-%02zu", i);
        ragcore::Chunk c;
        c.id = id;
        c.source_uri = "test://facts";
        c.text = "the " + name + " " + attr + " measures " + value + " units";
        c.token_begin = 0;
        c.token_end = 7;
        out.fact_ids.push_back(c.id);
        out.fact_queries.push_back(name + " " + attr);
        out.fact_answers.push_back(c.text);
        out.chunks.push_back(std::move(c));
    }

    ragcore::HashedBowProvider provider(64);
    out.chunks = ragcore::embed_chunks(std::move(out.chunks), provider);
    return out;
}

BuiltIndexes build_indexes(const std::vector<ragcore::Chunk>& chunks, double tau) {
    BuiltIndexes built{
        ragcore::partition(chunks, tau, ragcore::SparsityCriterion::embedding_similarity),
        ragcore::LexicalIndex::build(chunks),
        ragcore::DenseIndex::build(chunks)};
    return built;
}

}  // namespace ragtest
