#include "ragcore/chunker.hpp"

#include <cctype>
#include <cstdio>

#include "ragcore/text.hpp"

namespace ragcore {

std::vector<Chunk> chunk_text(const CleanDocument& doc, const ChunkingConfig& config) {
    if (config.chunk_size == 0) throw Error("chunk_size must be positive");
    if (config.overlap >= config.chunk_size) throw Error("overlap must be smaller than chunk_size");

    auto toks = text::tokens(doc.body);
    std::vector<Chunk> chunks;
    if (toks.empty()) return chunks;

    char prefix[24];
    std::snprintf(prefix, sizeof(prefix), "%016llx",
                  static_cast<unsigned long long>(text::fnv1a64(doc.source_uri)));

    const std::size_t stride = config.chunk_size - config.overlap;
    for (std::size_t start = 0; start < toks.size(); start += stride) {
        std::size_t end = std::min(start + config.chunk_size, toks.size());
        std::string body;
        for (std::size_t i = start; i < end; ++i) {
            if (i > start) body += ' ';
            body += toks[i];
        }
        char id[40];
        std::snprintf(id, sizeof(id), "%s-%06zu", prefix, chunks.size());
        Chunk c;
        c.id = id;
        c.source_uri = doc.source_uri;
        c.text = std::move(body);
        c.token_begin = start;
        c.token_end = end;
        chunks.push_back(std::move(c));
        if (end == toks.size()) break;  // every token covered; no trailing slivers
    }
    return chunks;
}

std::map<std::string, std::string> extract_metadata(const Chunk& chunk) {
    auto toks = text::tokens(chunk.text);
    std::string entities;
    std::string run;
    auto flush = [&] {
        if (run.empty()) return;
        if (!entities.empty()) entities += ',';
        entities += run;
        run.clear();
    };
    for (const auto& t : toks) {
        if (std::isupper(static_cast<unsigned char>(t[0]))) {
            if (!run.empty()) run += ' ';
            run += t;
        } else {
            flush();
        }
    }
    flush();
    return {{"entities", entities}};
}

}  // namespace ragcore
