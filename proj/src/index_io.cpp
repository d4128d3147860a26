#include "ragcore/index_io.hpp"

#include <fstream>

#include "nlohmann/json.hpp"

namespace ragcore {

void save_index(const PartitionedCorpus& pc, const EngineConfig& config,
                const std::string& path) {
    nlohmann::json doc;
    doc["format_version"] = kIndexFormatVersion;
    doc["config"] = emit_config(config);
    doc["partition"] = {{"tau", pc.tau}, {"criterion", to_string(pc.criterion)}};
    auto& chunks = doc["chunks"] = nlohmann::json::array();
    for (const auto& c : pc.all) {
        chunks.push_back({{"id", c.id},
                          {"source_uri", c.source_uri},
                          {"text", c.text},
                          {"token_span", {c.token_begin, c.token_end}},
                          {"embedding", c.embedding.values},
                          {"metadata", c.metadata},
                          {"is_sparse", c.is_sparse}});
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write index file " + path);
    out << doc.dump(2) << "\n";
    if (!out) throw Error("write failed for index file " + path);
}

LoadedIndex load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open index file " + path);

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw IndexParseError("index file " + path + " is corrupt at byte " +
                              std::to_string(e.byte) + ": " + e.what());
    }

    LoadedIndex loaded;
    try {
        int version = doc.at("format_version").get<int>();
        if (version != kIndexFormatVersion)
            throw VersionError("index file " + path + " has format_version " +
                               std::to_string(version) + ", this build reads " +
                               std::to_string(kIndexFormatVersion));
        loaded.config = parse_config(doc.at("config").get<std::string>());
        loaded.corpus.tau = doc.at("partition").at("tau").get<double>();
        loaded.corpus.criterion =
            criterion_from_string(doc.at("partition").at("criterion").get<std::string>());
        for (const auto& entry : doc.at("chunks")) {
            Chunk c;
            c.id = entry.at("id").get<std::string>();
            c.source_uri = entry.at("source_uri").get<std::string>();
            c.text = entry.at("text").get<std::string>();
            c.token_begin = entry.at("token_span").at(0).get<std::size_t>();
            c.token_end = entry.at("token_span").at(1).get<std::size_t>();
            c.embedding.values = entry.at("embedding").get<std::vector<double>>();
            c.metadata = entry.at("metadata").get<std::map<std::string, std::string>>();
            c.is_sparse = entry.at("is_sparse").get<bool>();
            (c.is_sparse ? loaded.corpus.sparse_ids : loaded.corpus.rest_ids).insert(c.id);
            loaded.corpus.all.push_back(std::move(c));
        }
    } catch (const VersionError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw IndexParseError("index file " + path + " has unexpected shape: " + e.what());
    }

    loaded.lexical = LexicalIndex::build(loaded.corpus.all, loaded.config.k1, loaded.config.b);
    loaded.dense = DenseIndex::build(loaded.corpus.all);
    return loaded;
}

}  // namespace ragcore
