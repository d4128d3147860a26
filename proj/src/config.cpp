#include "ragcore/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ragcore/text.hpp"

namespace ragcore {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::size_t parse_size(const std::string& v, const std::string& key) {
    try {
        long long n = std::stoll(v);
        if (n < 0) throw Error("negative value for " + key);
        return static_cast<std::size_t>(n);
    } catch (const std::invalid_argument&) {
        throw Error("invalid integer for " + key + ": " + v);
    }
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        return std::stod(v);
    } catch (const std::invalid_argument&) {
        throw Error("invalid number for " + key + ": " + v);
    }
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw Error("invalid boolean for " + key + ": " + v);
}

}  // namespace

PipelineConfig EngineConfig::pipeline() const {
    PipelineConfig pc;
    pc.top_k_hybrid = top_k_hybrid;
    pc.top_k_fallback = top_k_fallback;
    pc.weight_bm25 = weight_bm25;
    pc.weight_dense = weight_dense;
    pc.rrf_k = rrf_k;
    pc.fallback_metric = fallback_metric;
    pc.enable_fallback = enable_fallback;
    return pc;
}

EngineConfig parse_config(const std::string& ini_text) {
    EngineConfig c;
    using Setter = std::function<void(EngineConfig&, const std::string&)>;
    static const std::map<std::string, Setter> setters = {
        {"crawl.delay_ms", [](EngineConfig& e, const std::string& v) {
             e.delay_ms = static_cast<int>(parse_size(v, "delay_ms"));
         }},
        {"chunking.chunk_size", [](EngineConfig& e, const std::string& v) {
             e.chunk_size = parse_size(v, "chunk_size");
         }},
        {"chunking.overlap", [](EngineConfig& e, const std::string& v) {
             e.overlap = parse_size(v, "overlap");
         }},
        {"embedding.provider", [](EngineConfig& e, const std::string& v) {
             if (v != "local" && v != "remote") throw Error("provider must be local or remote");
             e.embedding_provider = v;
         }},
        {"embedding.dim", [](EngineConfig& e, const std::string& v) {
             e.embedding_dim = parse_size(v, "dim");
         }},
        {"embedding.endpoint", [](EngineConfig& e, const std::string& v) { e.embedding_endpoint = v; }},
        {"embedding.api_key_env", [](EngineConfig& e, const std::string& v) {
             e.embedding_api_key_env = v;
         }},
        {"lexical.k1", [](EngineConfig& e, const std::string& v) { e.k1 = parse_double(v, "k1"); }},
        {"lexical.b", [](EngineConfig& e, const std::string& v) { e.b = parse_double(v, "b"); }},
        {"fusion.weight_bm25", [](EngineConfig& e, const std::string& v) {
             e.weight_bm25 = parse_double(v, "weight_bm25");
         }},
        {"fusion.weight_dense", [](EngineConfig& e, const std::string& v) {
             e.weight_dense = parse_double(v, "weight_dense");
         }},
        {"fusion.rrf_k", [](EngineConfig& e, const std::string& v) {
             e.rrf_k = parse_double(v, "rrf_k");
         }},
        {"pipeline.top_k_hybrid", [](EngineConfig& e, const std::string& v) {
             e.top_k_hybrid = parse_size(v, "top_k_hybrid");
         }},
        {"pipeline.top_k_fallback", [](EngineConfig& e, const std::string& v) {
             e.top_k_fallback = parse_size(v, "top_k_fallback");
         }},
        {"pipeline.fallback_metric", [](EngineConfig& e, const std::string& v) {
             e.fallback_metric = metric_from_string(v);
         }},
        {"pipeline.enable_fallback", [](EngineConfig& e, const std::string& v) {
             e.enable_fallback = parse_bool(v, "enable_fallback");
         }},
        {"partition.tau", [](EngineConfig& e, const std::string& v) {
             e.tau = parse_double(v, "tau");
             if (e.tau < 0.0 || e.tau > 1.0) throw Error("tau must be in [0,1]");
         }},
        {"partition.criterion", [](EngineConfig& e, const std::string& v) {
             e.criterion = criterion_from_string(v);
         }},
        {"llm.generator_endpoint", [](EngineConfig& e, const std::string& v) {
             e.generator_endpoint = v;
         }},
        {"llm.validator_endpoint", [](EngineConfig& e, const std::string& v) {
             e.validator_endpoint = v;
         }},
        {"llm.api_key_env", [](EngineConfig& e, const std::string& v) { e.llm_api_key_env = v; }},
        {"llm.system_prompt", [](EngineConfig& e, const std::string& v) { e.system_prompt = v; }},
    };

    std::string section;
    std::size_t line_no = 0;
    std::string line;
    std::istringstream in(ini_text);
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = text::trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = t.substr(1, t.size() - 2);
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw Error("config line " + std::to_string(line_no) + ": expected key=value");
        std::string key = text::trim(t.substr(0, eq));
        std::string value = text::trim(t.substr(eq + 1));
        auto it = setters.find(section + "." + key);
        if (it == setters.end())
            throw Error("unknown config key [" + section + "] " + key);
        it->second(c, value);
    }
    if (c.overlap >= c.chunk_size) throw Error("overlap must be smaller than chunk_size");
    return c;
}

std::string emit_config(const EngineConfig& c) {
    std::string out;
    out += "[crawl]\n";
    out += "delay_ms = " + std::to_string(c.delay_ms) + "\n\n";
    out += "[chunking]\n";
    out += "chunk_size = " + std::to_string(c.chunk_size) + "\n";
    out += "overlap = " + std::to_string(c.overlap) + "\n\n";
    out += "[embedding]\n";
    out += "provider = " + c.embedding_provider + "\n";
    out += "dim = " + std::to_string(c.embedding_dim) + "\n";
    out += "endpoint = " + c.embedding_endpoint + "\n";
    out += "api_key_env = " + c.embedding_api_key_env + "\n\n";
    out += "[lexical]\n";
    out += "k1 = " + fmt_double(c.k1) + "\n";
    out += "b = " + fmt_double(c.b) + "\n\n";
    out += "[fusion]\n";
    out += "weight_bm25 = " + fmt_double(c.weight_bm25) + "\n";
    out += "weight_dense = " + fmt_double(c.weight_dense) + "\n";
    out += "rrf_k = " + fmt_double(c.rrf_k) + "\n\n";
    out += "[pipeline]\n";
    out += "top_k_hybrid = " + std::to_string(c.top_k_hybrid) + "\n";
    out += "top_k_fallback = " + std::to_string(c.top_k_fallback) + "\n";
    out += "fallback_metric = " + to_string(c.fallback_metric) + "\n";
    out += std::string("enable_fallback = ") + (c.enable_fallback ? "true" : "false") + "\n\n";
    out += "[partition]\n";
    out += "tau = " + fmt_double(c.tau) + "\n";
    out += "criterion = " + to_string(c.criterion) + "\n\n";
    out += "[llm]\n";
    out += "generator_endpoint = " + c.generator_endpoint + "\n";
    out += "validator_endpoint = " + c.validator_endpoint + "\n";
    out += "api_key_env = " + c.llm_api_key_env + "\n";
    out += "system_prompt = " + c.system_prompt + "\n";
    return out;
}

EngineConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open config file " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(content);
}

}  // namespace ragcore
