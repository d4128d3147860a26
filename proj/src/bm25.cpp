#include "ragcore/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ragcore/text.hpp"

namespace ragcore {

LexicalIndex LexicalIndex::build(const std::vector<Chunk>& chunks, double k1, double b) {
    if (chunks.empty()) throw Error("empty corpus");
    if (k1 <= 0.0) throw Error("k1 must be positive");
    if (b < 0.0 || b > 1.0) throw Error("b must be in [0,1]");

    LexicalIndex index;
    index.k1_ = k1;
    index.b_ = b;

    std::size_t total_len = 0;
    for (const auto& chunk : chunks) {
        auto terms = text::lower_tokens(chunk.text);
        if (index.doc_lengths_.count(chunk.id))
            throw Error("duplicate chunk id: " + chunk.id);
        index.doc_lengths_[chunk.id] = terms.size();
        total_len += terms.size();

        std::unordered_map<std::string, std::size_t> tf;
        for (const auto& t : terms) ++tf[t];
        for (const auto& [term, freq] : tf)
            index.postings_[term].push_back({chunk.id, freq});
    }
    for (auto& [term, list] : index.postings_)
        std::sort(list.begin(), list.end(),
                  [](const Posting& a, const Posting& b2) { return a.chunk_id < b2.chunk_id; });
    index.avgdl_ = static_cast<double>(total_len) / static_cast<double>(chunks.size());
    return index;
}

double LexicalIndex::term_score(const std::string& term, const std::string& chunk_id,
                                std::size_t doc_len) const {
    auto it = postings_.find(term);
    if (it == postings_.end()) return 0.0;
    const auto& list = it->second;
    auto pit = std::lower_bound(list.begin(), list.end(), chunk_id,
                                [](const Posting& p, const std::string& id) {
                                    return p.chunk_id < id;
                                });
    if (pit == list.end() || pit->chunk_id != chunk_id) return 0.0;

    const double n_t = static_cast<double>(list.size());
    const double n_docs = static_cast<double>(doc_lengths_.size());
    const double idf = std::log((n_docs - n_t + 0.5) / (n_t + 0.5) + 1.0);
    const double tf = static_cast<double>(pit->term_frequency);
    const double len_norm = 1.0 - b_ + b_ * static_cast<double>(doc_len) / avgdl_;
    return idf * tf * (k1_ + 1.0) / (tf + k1_ * len_norm);
}

double LexicalIndex::score(const std::string& query, const std::string& chunk_id) const {
    auto dit = doc_lengths_.find(chunk_id);
    if (dit == doc_lengths_.end()) throw LookupError("unknown chunk id: " + chunk_id);
    double total = 0.0;
    for (const auto& term : text::lower_tokens(query))
        total += term_score(term, chunk_id, dit->second);
    return total;
}

std::vector<RetrievalResult> LexicalIndex::top_k(const std::string& query, std::size_t k,
                                                 const IdSet* restrict_to) const {
    if (k == 0) throw Error("k must be positive");
    auto terms = text::lower_tokens(query);

    // candidates = docs containing at least one query term
    std::unordered_map<std::string, double> scores;
    for (const auto& term : terms) {
        auto it = postings_.find(term);
        if (it == postings_.end()) continue;
        for (const auto& posting : it->second) {
            if (restrict_to && !restrict_to->count(posting.chunk_id)) continue;
            scores.try_emplace(posting.chunk_id, 0.0);
        }
    }
    for (auto& [id, s] : scores) {
        std::size_t len = doc_lengths_.at(id);
        for (const auto& term : terms) s += term_score(term, id, len);
    }

    std::vector<RetrievalResult> out;
    out.reserve(scores.size());
    for (auto& [id, s] : scores)
        if (s > 0.0) out.push_back({id, s, 0, Origin::bm25});
    std::sort(out.begin(), out.end(), [](const RetrievalResult& a, const RetrievalResult& b2) {
        if (a.score != b2.score) return a.score > b2.score;
        return a.chunk_id < b2.chunk_id;
    });
    if (out.size() > k) out.resize(k);
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
    return out;
}

const std::vector<LexicalIndex::Posting>* LexicalIndex::postings(const std::string& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? nullptr : &it->second;
}

std::size_t LexicalIndex::doc_length(const std::string& chunk_id) const {
    auto it = doc_lengths_.find(chunk_id);
    if (it == doc_lengths_.end()) throw LookupError("unknown chunk id: " + chunk_id);
    return it->second;
}

}  // namespace ragcore
