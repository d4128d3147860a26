#pragma once

#include <string>

#include "ragcore/bm25.hpp"
#include "ragcore/config.hpp"
#include "ragcore/dense_index.hpp"
#include "ragcore/partition.hpp"

namespace ragcore {

inline constexpr int kIndexFormatVersion = 1;

/// A file whose version does not match kIndexFormatVersion.
class VersionError : public Error {
public:
    using Error::Error;
};

/// Corrupt or non-JSON index file; the message carries the byte offset.
class IndexParseError : public Error {
public:
    using Error::Error;
};

struct LoadedIndex {
    EngineConfig config;
    PartitionedCorpus corpus;
    LexicalIndex lexical;  // rebuilt from chunk texts on load
    DenseIndex dense;
};

/// Single self-describing JSON document: format_version, config snapshot,
/// chunks with full-precision embeddings and sparsity flags.
void save_index(const PartitionedCorpus& pc, const EngineConfig& config,
                const std::string& path);

LoadedIndex load_index(const std::string& path);

}  // namespace ragcore
