#include "ragcore/metrics.hpp"

#include <unordered_map>

#include "ragcore/eval.hpp"
#include "ragcore/text.hpp"

namespace ragcore {

namespace {

double safe_fraction(std::size_t hits, std::size_t total) {
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

TokenPrf token_prf(const std::string& candidate, const std::string& reference) {
    auto cand = text::lower_tokens(candidate);
    auto ref = text::lower_tokens(reference);
    if (cand.empty() || ref.empty()) return {};

    std::unordered_map<std::string, std::size_t> ref_counts;
    for (const auto& t : ref) ++ref_counts[t];
    std::size_t shared = 0;
    for (const auto& t : cand) {
        auto it = ref_counts.find(t);
        if (it != ref_counts.end() && it->second > 0) {
            --it->second;
            ++shared;
        }
    }
    TokenPrf out;
    out.precision = static_cast<double>(shared) / static_cast<double>(cand.size());
    out.recall = static_cast<double>(shared) / static_cast<double>(ref.size());
    out.f_score = (out.precision + out.recall) == 0.0
                      ? 0.0
                      : 2.0 * out.precision * out.recall / (out.precision + out.recall);
    return out;
}

double meteor_exact(const std::string& candidate, const std::string& reference) {
    auto cand = text::lower_tokens(candidate);
    auto ref = text::lower_tokens(reference);
    if (cand.empty() || ref.empty()) return 0.0;

    // greedy left-to-right: each candidate token takes the first unmatched
    // occurrence in the reference
    std::vector<bool> used(ref.size(), false);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (cand pos, ref pos)
    for (std::size_t i = 0; i < cand.size(); ++i) {
        for (std::size_t j = 0; j < ref.size(); ++j) {
            if (!used[j] && cand[i] == ref[j]) {
                used[j] = true;
                pairs.emplace_back(i, j);
                break;
            }
        }
    }
    const std::size_t m = pairs.size();
    if (m == 0) return 0.0;

    std::size_t chunks = 1;
    for (std::size_t k = 1; k < m; ++k)
        if (pairs[k].first != pairs[k - 1].first + 1 || pairs[k].second != pairs[k - 1].second + 1)
            ++chunks;

    const double p = static_cast<double>(m) / static_cast<double>(cand.size());
    const double r = static_cast<double>(m) / static_cast<double>(ref.size());
    const double f_mean = 10.0 * p * r / (r + 9.0 * p);
    const double frag = static_cast<double>(chunks) / static_cast<double>(m);
    const double penalty = 0.5 * frag * frag * frag;
    return f_mean * (1.0 - penalty);
}

double contextual_precision(const std::vector<bool>& relevance_flags) {
    std::size_t relevant_seen = 0;
    double sum = 0.0;
    for (std::size_t pos = 0; pos < relevance_flags.size(); ++pos) {
        if (!relevance_flags[pos]) continue;
        ++relevant_seen;
        sum += static_cast<double>(relevant_seen) / static_cast<double>(pos + 1);
    }
    return relevant_seen == 0 ? 0.0 : sum / static_cast<double>(relevant_seen);
}

double contextual_recall(const std::vector<std::string>& claims,
                         const std::vector<std::string>& context, Judge& judge) {
    std::size_t attributable = 0;
    for (const auto& claim : claims)
        if (judge.is_attributable(claim, context)) ++attributable;
    return safe_fraction(attributable, claims.size());
}

double contextual_relevancy(const std::vector<std::string>& context_statements,
                            const std::string& query, Judge& judge) {
    std::size_t relevant = 0;
    for (const auto& statement : context_statements)
        if (judge.is_relevant(statement, query)) ++relevant;
    return safe_fraction(relevant, context_statements.size());
}

double answer_relevancy(const std::vector<std::string>& answer_statements,
                        const std::string& query, Judge& judge) {
    return contextual_relevancy(answer_statements, query, judge);
}

double faithfulness(const std::vector<std::string>& answer_claims,
                    const std::vector<std::string>& context, Judge& judge) {
    return contextual_recall(answer_claims, context, judge);
}

}  // namespace ragcore
