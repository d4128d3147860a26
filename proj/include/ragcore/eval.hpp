#pragma once

#include <map>
#include <string>
#include <vector>

#include "ragcore/types.hpp"

namespace ragcore {

struct EvalCase {
    std::string query;
    std::string ground_truth;
    std::vector<std::string> retrieved_context;  // in retrieval rank order
    std::string actual_output;
};

/// Splits text into statements/claims and classifies relevance and
/// attributability for the nuanced metrics. An LLM can sit behind this; the
/// rule-based implementation below keeps evaluation deterministic offline.
class Judge {
public:
    virtual ~Judge() = default;
    virtual std::vector<std::string> split_statements(const std::string& text) = 0;
    virtual bool is_relevant(const std::string& statement, const std::string& query) = 0;
    virtual bool is_attributable(const std::string& claim,
                                 const std::vector<std::string>& context) = 0;
};

/// Keyword rules: statements split on sentence punctuation; a statement is
/// relevant when it shares at least one non-stopword unigram with the query;
/// a claim is attributable when >= 60% of its unique unigrams appear in some
/// single context chunk.
class RuleJudge : public Judge {
public:
    std::vector<std::string> split_statements(const std::string& text) override;
    bool is_relevant(const std::string& statement, const std::string& query) override;
    bool is_attributable(const std::string& claim,
                         const std::vector<std::string>& context) override;
};

/// HTTP judge: each decision posts {"prompt": ...} and reads {"text": ...}.
class RemoteJudge : public Judge {
public:
    explicit RemoteJudge(std::string endpoint, std::string api_key_env = "");
    std::vector<std::string> split_statements(const std::string& text) override;
    bool is_relevant(const std::string& statement, const std::string& query) override;
    bool is_attributable(const std::string& claim,
                         const std::vector<std::string>& context) override;

private:
    std::string endpoint_;
    std::string api_key_env_;
    std::string ask(const std::string& prompt);
};

struct EvalReport {
    std::vector<std::map<std::string, double>> per_case;
    std::map<std::string, double> aggregate;  // arithmetic mean over cases
};

/// Metric keys, in report row order.
const std::vector<std::string>& metric_names();

EvalReport evaluate(const std::vector<EvalCase>& dataset, Judge& judge);

/// Cases file: JSON array of {query, ground_truth, retrieved_context, actual_output}.
std::vector<EvalCase> load_cases(const std::string& path);

std::string report_to_json(const EvalReport& report);

/// Plain-text table, one metric per row.
std::string render_report_table(const EvalReport& report);

}  // namespace ragcore
