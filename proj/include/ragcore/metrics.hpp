#pragma once

#include <string>
#include <vector>

namespace ragcore {

class Judge;

struct TokenPrf {
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
};

/// Multiset intersection of lowercased whitespace tokens. Empty candidate or
/// reference yields all zeros; F is 0 when P+R is 0.
TokenPrf token_prf(const std::string& candidate, const std::string& reference);

/// Exact-match METEOR: greedy left-to-right unigram alignment, harmonic mean
/// weighted 9:1 toward precision, fragmentation penalty 0.5*(chunks/m)^3.
double meteor_exact(const std::string& candidate, const std::string& reference);

/// Mean over relevant positions k_j (1-based, rank order) of j/k_j. No
/// relevant positions yields 0.
double contextual_precision(const std::vector<bool>& relevance_flags);

/// Fraction of ground-truth claims attributable to the retrieved context.
double contextual_recall(const std::vector<std::string>& claims,
                         const std::vector<std::string>& context, Judge& judge);

/// Fraction of retrieved-context statements relevant to the query.
double contextual_relevancy(const std::vector<std::string>& context_statements,
                            const std::string& query, Judge& judge);

/// Fraction of answer statements relevant to the query.
double answer_relevancy(const std::vector<std::string>& answer_statements,
                        const std::string& query, Judge& judge);

/// Fraction of answer claims attributable to the retrieved context.
double faithfulness(const std::vector<std::string>& answer_claims,
                    const std::vector<std::string>& context, Judge& judge);

}  // namespace ragcore
