#include "ragcore/eval.hpp"

#include <cstdio>
#include <fstream>
#include <unordered_set>

#include "nlohmann/json.hpp"

#include "ragcore/http_client.hpp"
#include "ragcore/metrics.hpp"
#include "ragcore/text.hpp"

namespace ragcore {

namespace {

const std::unordered_set<std::string>& stopwords() {
    static const std::unordered_set<std::string> words = {
        "a",     "an",    "and",   "are",   "as",    "at",    "be",    "been",  "but",
        "by",    "did",   "do",    "does",  "for",   "from",  "had",   "has",   "have",
        "he",    "her",   "his",   "how",   "i",     "if",    "in",    "into",  "is",
        "it",    "its",   "may",   "might", "not",   "no",    "of",    "on",    "or",
        "our",   "she",   "should", "so",   "than",  "that",  "the",   "their", "them",
        "then",  "there", "these", "they",  "this",  "those", "to",    "too",   "was",
        "we",    "were",  "what",  "when",  "where", "which", "who",   "whom",  "why",
        "will",  "with",  "would", "you",   "your",  "very",  "just",  "here",  "over",
        "under", "again"};
    return words;
}

}  // namespace

std::vector<std::string> RuleJudge::split_statements(const std::string& text_in) {
    return text::split_sentences(text_in);
}

bool RuleJudge::is_relevant(const std::string& statement, const std::string& query) {
    auto query_terms = text::lower_token_set(query);
    for (const auto& term : text::lower_token_set(statement))
        if (query_terms.count(term) && !stopwords().count(term)) return true;
    return false;
}

bool RuleJudge::is_attributable(const std::string& claim,
                                const std::vector<std::string>& context) {
    auto claim_terms = text::lower_token_set(claim);
    if (claim_terms.empty()) return false;
    for (const auto& chunk : context) {
        auto chunk_terms = text::lower_token_set(chunk);
        std::size_t covered = 0;
        for (const auto& term : claim_terms)
            if (chunk_terms.count(term)) ++covered;
        if (static_cast<double>(covered) >= 0.6 * static_cast<double>(claim_terms.size()))
            return true;
    }
    return false;
}

RemoteJudge::RemoteJudge(std::string endpoint, std::string api_key_env)
    : endpoint_(std::move(endpoint)), api_key_env_(std::move(api_key_env)) {
    if (endpoint_.empty()) throw Error("remote judge needs an endpoint");
}

std::string RemoteJudge::ask(const std::string& prompt) {
    std::string api_key;
    if (!api_key_env_.empty())
        if (const char* v = std::getenv(api_key_env_.c_str())) api_key = v;
    nlohmann::json req{{"prompt", prompt}};
    nlohmann::json res = nlohmann::json::parse(http_post_json(endpoint_, req.dump(), api_key));
    if (!res.contains("text") || !res["text"].is_string())
        throw TransportError("judge endpoint returned a malformed response");
    return res["text"].get<std::string>();
}

std::vector<std::string> RemoteJudge::split_statements(const std::string& text_in) {
    std::string out = ask(
        "Split the following text into independent statements, one per line, with no "
        "numbering or commentary.\nText: " +
        text_in + "\nStatements:");
    std::vector<std::string> statements;
    std::string line;
    for (char c : out) {
        if (c == '\n') {
            auto t = text::trim(line);
            if (!t.empty()) statements.push_back(std::move(t));
            line.clear();
        } else {
            line.push_back(c);
        }
    }
    auto t = text::trim(line);
    if (!t.empty()) statements.push_back(std::move(t));
    return statements;
}

bool RemoteJudge::is_relevant(const std::string& statement, const std::string& query) {
    std::string out = ask("Does the statement help answer the query? Reply 1 for yes, 0 for "
                          "no.\nQuery: " +
                          query + "\nStatement: " + statement + "\nReply:");
    return text::trim(out) != "0";
}

bool RemoteJudge::is_attributable(const std::string& claim,
                                  const std::vector<std::string>& context) {
    std::string joined;
    for (const auto& chunk : context) {
        if (!joined.empty()) joined += "\n---\n";
        joined += chunk;
    }
    std::string out = ask("Is the claim supported by the context? Reply 1 for yes, 0 for "
                          "no.\nContext:\n" +
                          joined + "\nClaim: " + claim + "\nReply:");
    return text::trim(out) != "0";
}

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {
        "precision",          "recall",           "f_score",
        "meteor",             "contextual_recall", "contextual_precision",
        "contextual_relevancy", "answer_relevancy", "faithfulness"};
    return names;
}

EvalReport evaluate(const std::vector<EvalCase>& dataset, Judge& judge) {
    if (dataset.empty()) throw Error("empty evaluation dataset");
    EvalReport report;
    for (const auto& c : dataset) {
        std::map<std::string, double> m;
        TokenPrf prf = token_prf(c.actual_output, c.ground_truth);
        m["precision"] = prf.precision;
        m["recall"] = prf.recall;
        m["f_score"] = prf.f_score;
        m["meteor"] = meteor_exact(c.actual_output, c.ground_truth);

        std::vector<bool> flags;
        flags.reserve(c.retrieved_context.size());
        for (const auto& node : c.retrieved_context)
            flags.push_back(judge.is_relevant(node, c.query));
        m["contextual_precision"] = contextual_precision(flags);

        m["contextual_recall"] =
            contextual_recall(judge.split_statements(c.ground_truth), c.retrieved_context, judge);

        std::vector<std::string> context_statements;
        for (const auto& node : c.retrieved_context)
            for (auto& s : judge.split_statements(node)) context_statements.push_back(std::move(s));
        m["contextual_relevancy"] = contextual_relevancy(context_statements, c.query, judge);

        m["answer_relevancy"] =
            answer_relevancy(judge.split_statements(c.actual_output), c.query, judge);
        m["faithfulness"] =
            faithfulness(judge.split_statements(c.actual_output), c.retrieved_context, judge);
        report.per_case.push_back(std::move(m));
    }
    for (const auto& name : metric_names()) {
        double sum = 0.0;
        for (const auto& m : report.per_case) sum += m.at(name);
        report.aggregate[name] = sum / static_cast<double>(report.per_case.size());
    }
    return report;
}

std::vector<EvalCase> load_cases(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open cases file " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    if (!doc.is_array()) throw Error("cases file must contain a JSON array");
    std::vector<EvalCase> cases;
    for (const auto& entry : doc) {
        EvalCase c;
        c.query = entry.at("query").get<std::string>();
        c.ground_truth = entry.at("ground_truth").get<std::string>();
        c.retrieved_context = entry.at("retrieved_context").get<std::vector<std::string>>();
        c.actual_output = entry.at("actual_output").get<std::string>();
        cases.push_back(std::move(c));
    }
    return cases;
}

std::string report_to_json(const EvalReport& report) {
    nlohmann::json doc;
    doc["per_case"] = nlohmann::json::array();
    for (const auto& m : report.per_case) doc["per_case"].push_back(m);
    doc["aggregate"] = report.aggregate;
    return doc.dump(2);
}

std::string render_report_table(const EvalReport& report) {
    static const std::vector<std::pair<std::string, std::string>> rows = {
        {"Precision", "precision"},
        {"Recall", "recall"},
        {"F-Score", "f_score"},
        {"METEOR", "meteor"},
        {"Contextual Recall", "contextual_recall"},
        {"Contextual Precision", "contextual_precision"},
        {"Contextual Relevancy", "contextual_relevancy"},
        {"Answer Relevancy", "answer_relevancy"},
        {"Faithfulness", "faithfulness"}};
    std::string out;
    char line[64];
    for (const auto& [label, key] : rows) {
        std::snprintf(line, sizeof(line), "%-22s %.4f\n", label.c_str(),
                      report.aggregate.at(key));
        out += line;
    }
    return out;
}

}  // namespace ragcore
