#include "cmf/cli.hpp"

namespace cmf::cli {

json real_json(const Real& x, int display_digits) {
    return {{"value", x.str()}, {"display", x.str(display_digits)}};
}

json rat_json(const Rat& q) { return to_string(q); }

json elt_json(const Elt& x) {
    json j = json::array();
    for (auto& c : x.coords()) j.push_back(rat_json(c));
    return j;
}

json field_json(const FieldPtr& F) {
    json poly = json::array(), basis = json::array();
    for (auto& c : F->min_poly()) poly.push_back(c.get_str());
    for (auto& row : F->basis()) {
        json r = json::array();
        for (auto& q : row) r.push_back(rat_json(q));
        basis.push_back(r);
    }
    return {{"min_poly", poly}, {"basis", basis}, {"disc", F->disc().get_str()}};
}

json make_record(const std::string& schema, const RunConfig& cfg) {
    json j;
    j["schema"] = schema;
    j["config"] = cfg.to_json();
    return j;
}

namespace {

const std::map<std::string, std::vector<std::string>>& registry() {
    static const std::map<std::string, std::vector<std::string>> r{
        {"cmf.field/1", {"field", "degree", "galois", "roots"}},
        {"cmf.primes/1", {"field", "p", "primes"}},
        {"cmf.reldisc/1", {"field", "delta", "rel_disc_norm", "dE"}},
        {"cmf.cm/1", {"field", "input", "q", "delta", "dE", "checks", "non_galois"}},
        {"cmf.classify/1", {"type", "weyl", "reflex_degree"}},
        {"cmf.shintani.sum/1", {"points", "sign_sum", "bernoulli_sum", "eps"}},
        {"cmf.colmez.faltings/1", {"lderiv_shintani", "lderiv_oracle", "residual", "h_fal", "terms"}},
        {"cmf.colmez.classnumber/1", {"h_E", "minkowski_bound", "dE"}},
        {"cmf.census.quartic/1", {"X", "counts", "total"}},
        {"cmf.census.weil/1", {"p", "rows"}},
    };
    return r;
}

}  // namespace

std::vector<std::string> validate_record(const json& rec) {
    std::vector<std::string> problems;
    if (!rec.is_object()) return {"record is not an object"};
    if (!rec.contains("schema") || !rec["schema"].is_string()) return {"missing schema tag"};
    if (!rec.contains("config") || !rec["config"].is_object()) problems.push_back("missing config");
    const std::string tag = rec["schema"];
    auto it = registry().find(tag);
    if (it == registry().end()) return {"unknown schema " + tag};
    for (auto& key : it->second)
        if (!rec.contains(key)) problems.push_back("missing key " + key);
    if (rec.contains("config") && rec["config"].is_object() && !rec["config"].contains("precision_bits"))
        problems.push_back("config lacks precision_bits");
    return problems;
}

}  // namespace cmf::cli
