#pragma once

#include <map>
#include <string>
#include <vector>

#include "ragcore/types.hpp"

namespace ragcore {

/// Okapi BM25 inverted index over lowercased whitespace terms. Immutable
/// after build; concurrent reads are safe.
class LexicalIndex {
public:
    struct Posting {
        std::string chunk_id;
        std::size_t term_frequency;
    };

    static LexicalIndex build(const std::vector<Chunk>& chunks, double k1 = 1.2, double b = 0.75);

    /// Sum over query tokens (per occurrence) of
    /// idf(t) * tf*(k1+1) / (tf + k1*(1 - b + b*|D|/avgdl)), with
    /// idf(t) = ln((N - n_t + 0.5)/(n_t + 0.5) + 1). Terms absent from the
    /// index contribute zero. Throws LookupError for unknown chunk ids.
    double score(const std::string& query, const std::string& chunk_id) const;

    /// Top-k candidates with score > 0, descending score, ties by ascending
    /// chunk id. `restrict_to` filters the candidate pool before ranking.
    std::vector<RetrievalResult> top_k(const std::string& query, std::size_t k,
                                       const IdSet* restrict_to = nullptr) const;

    std::size_t doc_count() const { return doc_lengths_.size(); }
    double avgdl() const { return avgdl_; }
    double k1() const { return k1_; }
    double b() const { return b_; }
    const std::vector<Posting>* postings(const std::string& term) const;
    std::size_t doc_length(const std::string& chunk_id) const;

private:
    std::map<std::string, std::vector<Posting>> postings_;  // sorted by chunk_id
    std::map<std::string, std::size_t> doc_lengths_;
    double avgdl_ = 0.0;
    double k1_ = 1.2;
    double b_ = 0.75;

    double term_score(const std::string& term, const std::string& chunk_id,
                      std::size_t doc_len) const;
};

}  // namespace ragcore
