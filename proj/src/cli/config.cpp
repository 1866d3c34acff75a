#include "cmf/cli.hpp"
#include "cmf/error.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cmf::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long parse_long(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError(what + ": expected an integer, got '" + s + "'");
    }
}

mpfr_prec_t parse_precision(const std::string& s, const std::string& what) {
    long p = parse_long(s, what);
    if (p < 32 || p > 1 << 16) throw UsageError(what + ": precision must be between 32 and 65536 bits");
    return static_cast<mpfr_prec_t>(p);
}

}  // namespace

ConfigMap parse_config(std::istream& in, const std::string& origin) {
    ConfigMap out;
    std::string section = "general", line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        const std::string where = origin + ":" + std::to_string(lineno);
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3) throw UsageError(where + ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw UsageError(where + ": expected key = value");
        std::string key = trim(t.substr(0, eq)), value = trim(t.substr(eq + 1));
        if (key.empty()) throw UsageError(where + ": empty key");
        out[section + "." + key] = value;
    }
    return out;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    return parse_config(in, path);
}

RunConfig RunConfig::resolve(const std::string& config_path) {
    RunConfig c;
    if (const char* env = std::getenv(kPrecisionEnv); env && *env) {
        c.precision = parse_precision(env, kPrecisionEnv);
        c.precision_source = std::string("env:") + kPrecisionEnv;
    }
    if (config_path.empty()) return c;
    c.config_path = config_path;
    c.values = load_config_file(config_path);
    auto has = [&](const std::string& k) { return c.values.count(k) > 0; };
    if (has("general.precision")) {
        c.precision = parse_precision(c.values["general.precision"], "general.precision");
        c.precision_source = "config";
    }
    if (has("general.jobs")) c.jobs = static_cast<int>(parse_long(c.values["general.jobs"], "general.jobs"));
    if (has("cm.scan_bound")) c.scan_bound = parse_long(c.values["cm.scan_bound"], "cm.scan_bound");
    if (has("colmez.h_E")) {
        c.h_E = parse_long(c.values["colmez.h_E"], "colmez.h_E");
        c.h_E_provenance = c.get("colmez.h_E_provenance", "config file");
    }
    if (has("colmez.Q")) {
        c.Q = parse_long(c.values["colmez.Q"], "colmez.Q");
        c.Q_provenance = c.get("colmez.Q_provenance", "config file");
    }
    return c;
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

json RunConfig::to_json() const {
    json j;
    j["precision_bits"] = precision;
    j["precision_source"] = precision_source;
    j["jobs"] = jobs;
    j["scan_bound"] = scan_bound;
    j["config_file"] = config_path.empty() ? json(nullptr) : json(config_path);
    if (h_E) j["h_E"] = {{"value", *h_E}, {"provenance", h_E_provenance}};
    if (Q) j["Q"] = {{"value", *Q}, {"provenance", Q_provenance}};
    json vals = json::object();
    for (auto& [k, v] : values) vals[k] = v;
    j["values"] = vals;
    return j;
}

}  // namespace cmf::cli
