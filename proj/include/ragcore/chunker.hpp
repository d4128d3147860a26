#pragma once

#include <map>
#include <string>
#include <vector>

#include "ragcore/types.hpp"

namespace ragcore {

struct ChunkingConfig {
    std::size_t chunk_size = 256;  // tokens
    std::size_t overlap = 32;      // tokens shared by consecutive chunks
};

/// Sliding-window chunking over whitespace tokens. Chunks start every
/// `chunk_size - overlap` tokens; the final chunk may be shorter. Embeddings
/// are left unset. Empty body yields an empty list.
std::vector<Chunk> chunk_text(const CleanDocument& doc, const ChunkingConfig& config);

/// Default metadata heuristic: "entities" -> comma-joined maximal runs of
/// capitalized tokens in chunk order.
std::map<std::string, std::string> extract_metadata(const Chunk& chunk);

}  // namespace ragcore
