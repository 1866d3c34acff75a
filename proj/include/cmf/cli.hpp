#pragma once

#include "cmf/analytic.hpp"
#include "cmf/census.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cmf::cli {

using nlohmann::json;

// Environment variable holding the default precision in bits.
inline constexpr const char* kPrecisionEnv = "CMF_PRECISION";

// Flattened "section.key" -> value from a config file:
//   # comment
//   [section]
//   key = value
// Keys before any header belong to section "general".
using ConfigMap = std::map<std::string, std::string>;
ConfigMap parse_config(std::istream& in, const std::string& origin = "<config>");
ConfigMap load_config_file(const std::string& path);

struct RunConfig {
    mpfr_prec_t precision = Real::kDefaultPrec;
    std::string precision_source = "default";
    int jobs = 0;
    long scan_bound = 100000;
    std::optional<long> h_E, Q;
    std::string h_E_provenance, Q_provenance;
    std::string config_path;
    ConfigMap values;  // everything read from the file, for the record

    // Defaults, then the environment, then the config file.
    static RunConfig resolve(const std::string& config_path);
    std::string get(const std::string& key, const std::string& fallback = "") const;
    json to_json() const;
};

// ---- reports -------------------------------------------------------------------

json real_json(const Real& x, int display_digits = 20);
json rat_json(const Rat& q);
json elt_json(const Elt& x);
json field_json(const FieldPtr& F);

// Adds the schema tag and the resolved config.
json make_record(const std::string& schema, const RunConfig& cfg);
// Required keys per schema; empty if the record is valid.
std::vector<std::string> validate_record(const json& rec);

// ---- entry point ------------------------------------------------------------------

// Exit codes: 0 success, 1 domain error, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmf::cli
