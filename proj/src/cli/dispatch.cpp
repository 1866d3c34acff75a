#include "cmf/cli.hpp"
#include "cmf/error.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace cmf::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        auto b = cur.find_first_not_of(" \t"), e = cur.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
    }
    return out;
}

std::vector<Rat> parse_rats(const std::string& s, const std::string& what) {
    std::vector<Rat> out;
    for (auto& t : split(s, ',')) {
        try {
            out.push_back(parse_rat(t));
        } catch (const std::exception&) {
            throw UsageError(what + ": '" + t + "' is not a rational number");
        }
    }
    if (out.empty()) throw UsageError(what + ": empty list");
    return out;
}

IntVec parse_ints(const std::string& s, const std::string& what) {
    IntVec out;
    for (auto& q : parse_rats(s, what)) {
        if (q.get_den() != 1) throw UsageError(what + ": integers expected");
        out.push_back(q.get_num());
    }
    return out;
}

Int to_int(const json& v) { return Int(v.is_string() ? v.get<std::string>() : v.dump()); }
Rat to_rat(const json& v) { return parse_rat(v.is_string() ? v.get<std::string>() : v.dump()); }

// ---- field and extension inputs ------------------------------------------------

struct FieldArgs {
    std::string d, poly, basis, file, example_name;

    void attach(CLI::App* app, bool with_example) {
        app->add_option("--d", d, "real quadratic field Q(sqrt d), d > 1 squarefree");
        app->add_option("--poly", poly, "defining polynomial coefficients c0,...,cn (monic)");
        app->add_option("--basis", basis, "integral basis rows 'r,r;r,r' in powers of the root");
        app->add_option("--field", file, "field record (JSON with min_poly and optional basis)");
        if (with_example) app->add_option("--example", example_name, "bundled preset (paper)");
    }

    bool is_example() const { return !example_name.empty(); }

    FieldPtr build() const {
        if (is_example()) {
            if (example_name != "paper") throw UsageError("unknown example '" + example_name + "' (available: paper)");
            return Field::quadratic(Int(2));
        }
        const int given = !d.empty() + !poly.empty() + !file.empty();
        if (given != 1) throw UsageError("give exactly one of --d, --poly, --field");
        if (!d.empty()) return Field::quadratic(parse_ints(d, "--d").at(0));
        if (!poly.empty()) {
            std::optional<RatMat> B;
            if (!basis.empty()) {
                RatMat rows;
                for (auto& r : split(basis, ';')) rows.push_back(parse_rats(r, "--basis"));
                B = rows;
            }
            return Field::make(parse_ints(poly, "--poly"), B);
        }
        std::ifstream in(file);
        if (!in) throw UsageError("cannot read field file " + file);
        json j;
        try {
            j = json::parse(in);
        } catch (const std::exception& e) {
            throw UsageError("field file " + file + ": " + e.what());
        }
        if (!j.contains("min_poly")) throw UsageError("field file lacks min_poly");
        IntVec f;
        for (auto& c : j["min_poly"]) f.push_back(to_int(c));
        std::optional<RatMat> B;
        if (j.contains("basis")) {
            RatMat rows;
            for (auto& row : j["basis"]) {
                RatVec r;
                for (auto& q : row) r.push_back(to_rat(q));
                rows.push_back(r);
            }
            B = rows;
        }
        FieldPtr F = Field::make(f, B);
        if (j.contains("disc") && to_int(j["disc"]) != F->disc())
            throw Error("DiscriminantMismatch", "field file disc " + to_int(j["disc"]).get_str() + " differs from computed " +
                                                   F->disc().get_str());
        return F;
    }
};

// delta as a + b sqrt(m) for quadratic fields, integral-basis coordinates otherwise.
Elt parse_delta(const FieldPtr& F, const std::string& s) {
    auto q = parse_rats(s, "--delta");
    if (F->degree() == 2) {
        if (q.size() != 2) throw UsageError("--delta: expected a,b for a + b sqrt(m)");
        return F->from_surd(q[0], q[1]);
    }
    if (static_cast<int>(q.size()) != F->degree()) throw UsageError("--delta: wrong number of coordinates");
    return Elt(F, q);
}

json surd_json(const FieldPtr& F, const Elt& x) {
    if (F->degree() != 2) return nullptr;
    auto [a, b] = F->to_surd(x);
    return json::array({rat_json(a), rat_json(b)});
}

std::vector<PrimeIdeal> parse_primes(const FieldPtr& F, const std::string& s) {
    std::vector<PrimeIdeal> out;
    for (auto& l : split(s, ',')) out.push_back(prime_by_label(F, l));
    return out;
}

json labels(const std::vector<PrimeIdeal>& ps) {
    json j = json::array();
    for (auto& P : ps) j.push_back(P.label);
    return j;
}

struct ExtArgs {
    FieldArgs field;
    std::string delta;

    void attach(CLI::App* app) {
        field.attach(app, true);
        app->add_option("--delta", delta, "totally negative delta: a,b for a + b sqrt(d), else basis coordinates");
    }
    CMExtension build() const {
        FieldPtr F = field.build();
        if (field.is_example()) {
            if (!delta.empty()) throw UsageError("--example fixes delta; drop --delta");
            return CMExtension::make(F->from_surd(Rat(-5), Rat(-2)));
        }
        if (delta.empty()) throw UsageError("--delta is required");
        return CMExtension::make(parse_delta(F, delta));
    }
};

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- commands -------------------------------------------------------------------------

json field_info(const FieldPtr& F, const RunConfig& cfg) {
    json j = make_record("cmf.field/1", cfg);
    j["field"] = field_json(F);
    j["degree"] = F->degree();
    j["galois"] = F->is_galois();
    json roots = json::array();
    for (auto& r : F->roots(cfg.precision)) roots.push_back(real_json(r));
    j["roots"] = roots;
    json units = json::array();
    for (auto& u : unit_generators(F)) units.push_back(elt_json(u));
    j["unit_generators"] = units;
    if (F->degree() == 2) {
        j["m"] = F->quad_m().get_str();
        j["eps_totally_positive"] = surd_json(F, fundamental_totally_positive_unit(F));
    }
    return j;
}

json field_primes(const FieldPtr& F, const Int& p, const RunConfig& cfg) {
    if (!is_prime(p)) throw UsageError("--p must be prime");
    json j = make_record("cmf.primes/1", cfg);
    j["field"] = field_json(F);
    j["p"] = p.get_str();
    json arr = json::array();
    for (auto& [P, e] : factor_rational_prime(F, p)) {
        arr.push_back({{"label", P.label}, {"e", e}, {"f", P.f}, {"norm", P.norm().get_str()}, {"beta", elt_json(P.beta)}});
    }
    j["primes"] = arr;
    return j;
}

json reldisc_record(const CMExtension& E, const RunConfig& cfg) {
    json j = make_record("cmf.reldisc/1", cfg);
    j["field"] = field_json(E.F);
    j["delta"] = elt_json(E.delta);
    j["delta_surd"] = surd_json(E.F, E.delta);
    j["rel_disc_norm"] = E.rel_disc.norm().get_str();
    json fac = json::array();
    for (auto& [P, k] : factor_ideal(E.rel_disc)) fac.push_back({{"prime", P.label}, {"exponent", k}});
    j["rel_disc_factors"] = fac;
    j["dE"] = E.abs_disc.get_str();
    return j;
}

json construction_json(const CMConstruction& c, const CMInput& in) {
    json j;
    j["q"] = c.q.label;
    j["q_norm"] = c.q.norm().get_str();
    j["delta"] = elt_json(c.delta);
    j["delta_surd"] = surd_json(c.E.F, c.delta);
    j["dE"] = c.E.abs_disc.get_str();
    j["rel_disc_norm"] = c.E.rel_disc.norm().get_str();
    j["T1"] = labels(c.T1);
    j["T2"] = labels(c.T2);
    json mod = json::array();
    for (auto& [P, k] : c.m.finite) mod.push_back({{"prime", P.label}, {"exponent", k}});
    j["modulus"] = {{"finite", mod}, {"infinite", "all real places"}};
    j["a"] = elt_json(c.a);
    const auto rep = verify_construction(c.E, in, c.q);
    json checks = json::object();
    for (auto& ch : rep.checks) checks[ch.name] = {{"pass", ch.pass}, {"detail", ch.detail}};
    j["checks"] = checks;
    j["all_checks_pass"] = rep.all_pass();
    j["non_galois"] = verify_non_galois(c.E);
    if (c.E.F->degree() == 2) {
        auto [a, b] = c.E.F->to_surd(c.delta);
        GaloisType t = classify_quartic_cm(c.E.F->quad_m(), a, b);
        j["galois_type"] = to_string(t);
    }
    return j;
}

std::string fmt_e(const Real& x) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << x.to_double();
    return os.str();
}

struct CheckLine {
    std::string name, param, lhs, rhs, residual;
    double tol;
    bool pass;
};

int print_checks(std::ostream& out, const std::vector<CheckLine>& rows, const RunConfig& cfg) {
    out << "# schema=cmf.check/1 precision_bits=" << cfg.precision << " config=" << cfg.to_json().dump() << '\n';
    out << std::left << std::setw(18) << "check" << std::setw(8) << "param" << std::setw(26) << "lhs" << std::setw(26)
        << "rhs" << std::setw(12) << "residual" << std::setw(10) << "tol" << "result\n";
    bool ok = true;
    for (auto& r : rows) {
        std::ostringstream tol;
        tol << std::scientific << std::setprecision(0) << r.tol;
        out << std::left << std::setw(18) << r.name << std::setw(8) << r.param << std::setw(26) << r.lhs << std::setw(26)
            << r.rhs << std::setw(12) << r.residual << std::setw(10) << tol.str() << (r.pass ? "PASS" : "FAIL") << '\n';
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

CheckLine two_sided_line(const std::string& name, const Int& D, const TwoSided& t, double tol) {
    return {name, D.get_str(), t.lhs.str(22), t.rhs.str(22), fmt_e(t.residual), tol, t.residual.to_double() < tol};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quartic CM field toolkit: ideals, CM construction with prescribed ramification, Shintani sets, L-values, census",
                 "cmtool"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    long prec_flag = 0;
    int jobs_flag = -1;
    app.add_option("--config", config_path, "key=value config file with [section] headers");
    app.add_option("--prec", prec_flag, "working precision in bits (default 192, env CMF_PRECISION)");
    app.add_option("--jobs", jobs_flag, "worker threads for parallel kernels (0 = all)");

    std::function<int(const RunConfig&)> action;

    // field
    auto* field = app.add_subcommand("field", "number field data");
    field->require_subcommand(1);
    FieldArgs fa;
    auto* f_info = field->add_subcommand("info", "integral basis, discriminant, embeddings, units");
    fa.attach(f_info, true);
    f_info->callback([&] {
        action = [&](const RunConfig& cfg) {
            write_json(out, field_info(fa.build(), cfg));
            return 0;
        };
    });
    std::string prime_p;
    auto* f_primes = field->add_subcommand("primes", "factor a rational prime");
    fa.attach(f_primes, true);
    f_primes->add_option("--p", prime_p, "rational prime")->required();
    f_primes->callback([&] {
        action = [&](const RunConfig& cfg) {
            write_json(out, field_primes(fa.build(), Int(parse_ints(prime_p, "--p").at(0)), cfg));
            return 0;
        };
    });
    ExtArgs rd;
    auto* f_rd = field->add_subcommand("reldisc", "relative discriminant of F(sqrt delta)/F");
    rd.attach(f_rd);
    f_rd->callback([&] {
        action = [&](const RunConfig& cfg) {
            write_json(out, reldisc_record(rd.build(), cfg));
            return 0;
        };
    });

    // cm
    auto* cm = app.add_subcommand("cm", "CM extension construction");
    cm->require_subcommand(1);
    FieldArgs cfa;
    std::string cm_p, cm_prime, cm_ramify, cm_split, cm_inert, cm_closure;
    long cm_scan = 0;
    int cm_count = 1;
    bool cm_uniform = false;
    auto* construct = cm->add_subcommand("construct", "build E = F(sqrt Delta) with prescribed ramification and splitting");
    cfa.attach(construct, true);
    construct->add_option("--p", cm_p, "rational prime splitting completely in the Galois closure")->required();
    construct->add_option("--prime", cm_prime, "label of the prime above p (default: first)");
    construct->add_option("--ramify", cm_ramify, "comma-separated prime labels R");
    construct->add_option("--split", cm_split, "comma-separated prime labels U1");
    construct->add_option("--inert", cm_inert, "comma-separated prime labels U2");
    construct->add_option("--scan-bound", cm_scan, "largest rational prime scanned for q");
    construct->add_option("--count", cm_count, "number of accepted primes q to report");
    construct->add_option("--closure-disc", cm_closure, "discriminant of the Galois closure (non-Galois cubic F)");
    construct->add_flag("--uniform-exponent", cm_uniform, "one exponent for every prime of the modulus");
    construct->callback([&] {
        action = [&](const RunConfig& cfg) {
            CMInput in;
            in.F = cfa.build();
            in.p = parse_ints(cm_p, "--p").at(0);
            if (!is_prime(in.p)) throw UsageError("--p must be prime");
            in.P = cm_prime.empty() ? factor_rational_prime(in.F, in.p).front().first : prime_by_label(in.F, cm_prime);
            in.R = parse_primes(in.F, cm_ramify);
            in.U1 = parse_primes(in.F, cm_split);
            in.U2 = parse_primes(in.F, cm_inert);
            in.scan_bound = cm_scan > 0 ? cm_scan : cfg.scan_bound;
            if (!cm_closure.empty()) in.closure_disc = parse_ints(cm_closure, "--closure-disc").at(0);
            in.uniform_exponent = cm_uniform;
            if (cm_count < 1) throw UsageError("--count must be positive");
            const auto t0 = std::chrono::steady_clock::now();
            auto fam = construct_cm_family(in, cm_count);
            json j = make_record("cmf.cm/1", cfg);
            j["field"] = field_json(in.F);
            j["input"] = {{"p", in.p.get_str()},
                          {"P", in.P.label},
                          {"R", labels(in.R)},
                          {"U1", labels(in.U1)},
                          {"U2", labels(in.U2)},
                          {"scan_bound", in.scan_bound},
                          {"closure_disc", in.closure_disc.get_str()},
                          {"uniform_exponent", in.uniform_exponent}};
            json first = construction_json(fam.front(), in);
            for (auto& [k, v] : first.items()) j[k] = v;
            if (cm_count > 1) {
                json rest = json::array();
                for (auto& c : fam) rest.push_back(construction_json(c, in));
                j["family"] = rest;
            }
            j["seconds"] = seconds_since(t0);
            write_json(out, j);
            return 0;
        };
    });

    // classify
    std::string cl_d, cl_delta, cl_poly;
    auto* classify = app.add_subcommand("classify", "Galois type of a quartic CM field or quartic polynomial");
    classify->add_option("--d", cl_d, "F = Q(sqrt d)");
    classify->add_option("--delta", cl_delta, "a,b with delta = a + b sqrt d");
    classify->add_option("--poly", cl_poly, "monic quartic c0,...,c4");
    classify->callback([&] {
        action = [&](const RunConfig& cfg) {
            json j = make_record("cmf.classify/1", cfg);
            GaloisType t;
            if (!cl_poly.empty()) {
                if (!cl_d.empty() || !cl_delta.empty()) throw UsageError("--poly excludes --d/--delta");
                IntVec f = parse_ints(cl_poly, "--poly");
                if (f.size() != 5 || f[4] != 1) throw UsageError("--poly: monic quartic c0,...,c4 expected");
                if (!quartic_irreducible(f)) throw Error("Reducible", "polynomial is reducible over Q");
                t = classify_quartic_poly(f);
                json pj = json::array();
                for (auto& c : f) pj.push_back(c.get_str());
                j["poly"] = pj;
            } else {
                if (cl_d.empty() || cl_delta.empty()) throw UsageError("classify needs --d and --delta, or --poly");
                Int d = parse_ints(cl_d, "--d").at(0);
                auto q = parse_rats(cl_delta, "--delta");
                if (q.size() != 2) throw UsageError("--delta: expected a,b");
                t = classify_quartic_cm(d, q[0], q[1]);
                json pj = json::array();
                for (auto& c : cm_quartic_poly(d, q[0], q[1])) pj.push_back(c.get_str());
                j["d"] = d.get_str();
                j["delta"] = {rat_json(q[0]), rat_json(q[1])};
                j["poly"] = pj;
            }
            j["type"] = to_string(t);
            j["weyl"] = t == GaloisType::D4;
            j["reflex_degree"] = reflex_degree_quartic(t);
            write_json(out, j);
            return 0;
        };
    });

    // shintani
    auto* shin = app.add_subcommand("shintani", "Shintani sets and character tables");
    shin->require_subcommand(1);
    ExtArgs se;
    auto* table = shin->add_subcommand("table", "CSV of m,n,x,y,c over the Shintani set");
    se.attach(table);
    table->callback([&] {
        action = [&](const RunConfig& cfg) {
            const CMExtension E = se.build();
            const CharacterTable T = character_table(E, cfg.jobs);
            const FieldPtr& F = E.F;
            const auto B = inv(E.rel_disc).basis();
            out << "# schema=cmf.shintani.table/1 config=" << cfg.to_json().dump() << '\n';
            struct Line {
                Rat m, n;
                const CharacterRow* row;
            };
            std::vector<Line> lines;
            for (auto& row : T.rows) {
                Rat m, n;
                if (se.field.is_example()) {
                    // z = -m + (4m + n - 1)(6 + sqrt 2)/17
                    auto [a, b] = F->to_surd(row.point.z);
                    const Rat k = b * 17;
                    m = -(a - k * Rat(6, 17));
                    n = k - 4 * m + 1;
                } else {
                    // integer coordinates of z in the basis of D^{-1}
                    const Rat det = B[0][0] * B[1][1] - B[0][1] * B[1][0];
                    const Elt& z = row.point.z;
                    m = (z[0] * B[1][1] - z[1] * B[1][0]) / det;
                    n = (B[0][0] * z[1] - B[0][1] * z[0]) / det;
                }
                m.canonicalize();
                n.canonicalize();
                lines.push_back({m, n, &row});
            }
            std::sort(lines.begin(), lines.end(),
                      [](const Line& a, const Line& b) { return a.m != b.m ? a.m < b.m : a.n < b.n; });
            out << "m,n,x,y,c\n";
            for (auto& l : lines)
                out << to_string(l.m) << ',' << to_string(l.n) << ',' << to_string(l.row->point.x) << ','
                    << to_string(l.row->point.y) << ',' << l.row->sign << '\n';
            return 0;
        };
    });
    ExtArgs ss;
    auto* ssum = shin->add_subcommand("sum", "character sum and Bernoulli sum over the Shintani set");
    ss.attach(ssum);
    ssum->callback([&] {
        action = [&](const RunConfig& cfg) {
            const CMExtension E = ss.build();
            const CharacterTable T = character_table(E, cfg.jobs);
            json j = make_record("cmf.shintani.sum/1", cfg);
            j["points"] = T.rows.size();
            j["sign_sum"] = T.sign_sum();
            j["bernoulli_sum"] = rat_json(T.bernoulli_sum());
            j["eps"] = surd_json(E.F, T.eps);
            j["rel_disc_norm"] = E.rel_disc.norm().get_str();
            write_json(out, j);
            return 0;
        };
    });

    // colmez
    auto* colmez = app.add_subcommand("colmez", "Faltings heights of quartic CM Jacobians");
    colmez->require_subcommand(1);
    ExtArgs ce;
    long c_h = 0, c_Q = 0;
    auto* falt = colmez->add_subcommand("faltings", "h_Fal by the Shintani path, cross-checked by the L-function oracle");
    ce.attach(falt);
    falt->add_option("--h-E", c_h, "class number of E (default: certified or config)");
    falt->add_option("--Q", c_Q, "unit index [O_E^x : O_F^x] (default 1)");
    falt->callback([&] {
        action = [&](const RunConfig& cfg) {
            const CMExtension E = ce.build();
            const auto t0 = std::chrono::steady_clock::now();
            long h = 0, Q = 0;
            std::string h_src, Q_src;
            if (c_h > 0) h = c_h, h_src = "command line";
            else if (cfg.h_E) h = *cfg.h_E, h_src = cfg.h_E_provenance;
            else if (ce.field.is_example()) h = 1, h_src = "bundled example preset";
            else h = class_number_quartic_cm(E), h_src = "certified: all primes below the Minkowski bound principal";
            if (c_Q > 0) Q = c_Q, Q_src = "command line";
            else if (cfg.Q) Q = *cfg.Q, Q_src = cfg.Q_provenance;
            else if (ce.field.is_example()) Q = 1, Q_src = "bundled example preset";
            else Q = 1, Q_src = "default (not computed)";

            const FaltingsQuartic r = faltings_quartic(E, h, Q, cfg.precision, cfg.jobs);
            json j = make_record("cmf.colmez.faltings/1", cfg);
            j["field"] = field_json(E.F);
            j["delta"] = elt_json(E.delta);
            j["delta_surd"] = surd_json(E.F, E.delta);
            j["dE"] = E.abs_disc.get_str();
            j["h_E"] = {{"value", h}, {"provenance", h_src}};
            j["Q"] = {{"value", Q}, {"provenance", Q_src}};
            if (ce.field.is_example())
                j["preset"] = {{"name", "paper"}, {"d", 2}, {"delta", "-5-2*sqrt(2)"}, {"eps", "3+2*sqrt(2)"},
                               {"h_E", 1}, {"Q", 1}, {"provenance", "bundled example preset"}};
            j["lderiv_shintani"] = real_json(r.lderiv_shintani);
            j["lderiv_oracle"] = real_json(r.lderiv_oracle);
            j["residual"] = real_json(r.residual, 6);
            j["h_fal"] = real_json(r.h_fal);
            j["h_fal_oracle"] = real_json(r.h_fal_oracle);
            j["terms"] = {{"constant", real_json(r.terms.constant)},
                          {"zeta_sum", real_json(r.terms.zeta_sum)},
                          {"b2_sum", rat_json(r.terms.b2_sum)},
                          {"b2_coefficient", real_json(r.terms.b2_coefficient)},
                          {"weight", rat_json(r.terms.weight)},
                          {"conductor", r.oracle.conductor.get_str()},
                          {"conductor_term", real_json(r.conductor_term)},
                          {"closed_form", real_json(r.closed_form)},
                          {"closed_form_residual", real_json(r.closed_form_residual, 6)},
                          {"oracle_sign", r.oracle.sign},
                          {"oracle_sign_residual", real_json(r.oracle.sign_residual, 6)},
                          {"oracle_coefficients", r.oracle.terms}};
            j["seconds"] = seconds_since(t0);
            write_json(out, j);
            return 0;
        };
    });
    ExtArgs cn;
    double cn_bound = 0;
    auto* cnum = colmez->add_subcommand("class-number", "certify h_E = 1 below the Minkowski bound");
    cn.attach(cnum);
    cnum->add_option("--bound", cn_bound, "override the Minkowski bound");
    cnum->callback([&] {
        action = [&](const RunConfig& cfg) {
            const CMExtension E = cn.build();
            std::optional<double> ov;
            if (cn_bound > 0) ov = cn_bound;
            json j = make_record("cmf.colmez.classnumber/1", cfg);
            j["h_E"] = class_number_quartic_cm(E, ov);
            j["minkowski_bound"] = ov.value_or(minkowski_bound_quartic(E.abs_disc));
            j["dE"] = E.abs_disc.get_str();
            write_json(out, j);
            return 0;
        };
    });

    // check
    auto* check = app.add_subcommand("check", "identity checks as pass/fail tables");
    check->require_subcommand(1);
    std::string ck_D;
    auto add_check = [&](const std::string& name, const std::string& help, const std::string& defaults, double tol,
                         std::function<TwoSided(const Int&, mpfr_prec_t)> fn) {
        auto* sc = check->add_subcommand(name, help);
        sc->add_option("--D", ck_D, "comma-separated D (default " + defaults + ")");
        sc->callback([&, name, defaults, tol, fn] {
            action = [&, name, defaults, tol, fn](const RunConfig& cfg) {
                std::vector<CheckLine> rows;
                for (auto& D : parse_ints(ck_D.empty() ? defaults : ck_D, "--D"))
                    rows.push_back(two_sided_line(name, D, fn(D, cfg.precision), tol));
                return print_checks(out, rows, cfg);
            };
        });
    };
    add_check("lerch", "L'/L(chi_{-D},0) against the log-Gamma sum", "3,4,7,8,11", 1e-20, lerch_check);
    add_check("chowla-selberg", "eta values at CM points against L'/L", "3,4,23", 1e-12, eta_cm_check);
    add_check("faltings-imag", "Faltings height of CM elliptic curves, two forms", "3,4,7,8,11,23", 1e-20,
              faltings_imag_quadratic);
    auto* ident = check->add_subcommand("special", "Hurwitz and Barnes reduction identities");
    ident->callback([&] {
        action = [&](const RunConfig& cfg) {
            const mpfr_prec_t P = cfg.precision;
            std::vector<CheckLine> rows;
            const Real one(1L, P), pi = const_pi(P);
            Real lhs = barnes_zeta2(Dual::constant(Real(3L, P)), one, one, one).v;
            Real rhs = pi * pi / 6;
            rows.push_back({"barnes-diagonal", "s=3", lhs.str(22), rhs.str(22), fmt_e(abs(lhs - rhs)), 1e-25,
                            abs(lhs - rhs).to_double() < 1e-25});
            const Real z(Rat(7, 10), P), w1(Rat(13, 10), P), w2(Rat(29, 10), P);
            lhs = barnes_log_gamma2(z, w1, w2) - barnes_log_gamma2(z + w1, w1, w2);
            rhs = -log(w2) * (Real(Rat(1, 2), P) - z / w2) + lngamma(z / w2) - log(2 * pi) / 2;
            rows.push_back({"barnes-ladder", "z=0.7", lhs.str(22), rhs.str(22), fmt_e(abs(lhs - rhs)), 1e-25,
                            abs(lhs - rhs).to_double() < 1e-25});
            const Real a(Rat(1, 4), P);
            lhs = hurwitz_zeta(Real(0L, P), a);
            rhs = Real(Rat(1, 4), P);
            rows.push_back({"hurwitz-zero", "a=1/4", lhs.str(22), rhs.str(22), fmt_e(abs(lhs - rhs)), 1e-25,
                            abs(lhs - rhs).to_double() < 1e-25});
            return print_checks(out, rows, cfg);
        };
    });

    // census
    auto* census = app.add_subcommand("census", "enumerative studies");
    census->require_subcommand(1);
    long cs_X = 0;
    std::string cs_out, cs_ckpt, cs_report;
    auto* cq = census->add_subcommand("quartic", "quartic CM fields with |d_E| <= X by Galois type");
    cq->add_option("--X", cs_X, "discriminant bound")->required();
    cq->add_option("--out", cs_out, "CSV output (d_E,d_F,a,b,galois,weyl)");
    cq->add_option("--checkpoint", cs_ckpt, "checkpoint file for restartable runs");
    cq->add_option("--report", cs_report, "JSON summary output");
    cq->callback([&] {
        action = [&](const RunConfig& cfg) {
            if (cs_X < 1) throw UsageError("--X must be positive");
            CensusOptions opt;
            opt.jobs = cfg.jobs;
            opt.checkpoint = cs_ckpt;
            const auto t0 = std::chrono::steady_clock::now();
            CensusResult r = enumerate_quartic_cm(cs_X, opt);
            const double secs = seconds_since(t0);
            if (!cs_out.empty()) {
                std::ofstream f(cs_out);
                if (!f) throw UsageError("cannot write " + cs_out);
                f << "# schema=cmf.census.quartic.csv/1 X=" << cs_X << " config=" << cfg.to_json().dump() << '\n';
                write_census_csv(f, r);
            }
            out << "# schema=cmf.census.quartic/1 config=" << cfg.to_json().dump() << '\n';
            out << "X=" << cs_X << " D4=" << r.count(GaloisType::D4) << " total=" << r.total
                << " C4=" << r.count(GaloisType::C4) << " V4=" << r.count(GaloisType::V4) << '\n';
            if (!cs_report.empty()) {
                json j = make_record("cmf.census.quartic/1", cfg);
                j["X"] = cs_X;
                json counts = json::object();
                for (auto t : {GaloisType::C4, GaloisType::V4, GaloisType::D4}) counts[to_string(t)] = r.count(t);
                j["counts"] = counts;
                j["total"] = r.total;
                j["seconds"] = secs;
                j["csv"] = cs_out;
                std::ofstream f(cs_report);
                if (!f) throw UsageError("cannot write " + cs_report);
                write_json(f, j);
            }
            return 0;
        };
    });
    long cw_p = 2;
    std::string cw_n = "4..12";
    auto* cw = census->add_subcommand("weil", "Galois types of quartic Weil polynomials over F_q, q = p^n");
    cw->add_option("--p", cw_p, "characteristic");
    cw->add_option("--n", cw_n, "exponent range lo..hi");
    cw->add_option("--out", cs_out, "CSV output (q,a,b,galois)");
    cw->add_option("--report", cs_report, "JSON summary output");
    cw->callback([&] {
        action = [&](const RunConfig& cfg) {
            int lo, hi;
            const auto dots = cw_n.find("..");
            try {
                if (dots == std::string::npos) lo = hi = std::stoi(cw_n);
                else lo = std::stoi(cw_n.substr(0, dots)), hi = std::stoi(cw_n.substr(dots + 2));
            } catch (const std::exception&) {
                throw UsageError("--n: expected lo..hi");
            }
            if (lo < 1 || hi < lo || hi > 14) throw UsageError("--n: need 1 <= lo <= hi <= 14");
            if (!is_prime(Int(cw_p))) throw UsageError("--p must be prime");
            std::vector<WeilRecord> recs;
            std::vector<WeilRow> rows;
            for (int n = lo; n <= hi; ++n) rows.push_back(weil_census_row(cw_p, n, cfg.jobs, cs_out.empty() ? nullptr : &recs));
            out << "# schema=cmf.census.weil.table/1 p=" << cw_p << " config=" << cfg.to_json().dump() << '\n';
            out << "n,q,region,kept,D4,C4,V4,A4,S4,d4_share\n";
            for (auto& r : rows)
                out << r.n << ',' << r.q << ',' << r.region << ',' << r.kept << ',' << r.count(GaloisType::D4) << ','
                    << r.count(GaloisType::C4) << ',' << r.count(GaloisType::V4) << ',' << r.count(GaloisType::A4) << ','
                    << r.count(GaloisType::S4) << ',' << std::fixed << std::setprecision(6) << r.d4_proportion() << '\n';
            if (!cs_out.empty()) {
                std::ofstream f(cs_out);
                if (!f) throw UsageError("cannot write " + cs_out);
                f << "# schema=cmf.census.weil.csv/1 p=" << cw_p << " config=" << cfg.to_json().dump() << '\n';
                write_weil_csv(f, recs);
            }
            if (!cs_report.empty()) {
                json j = make_record("cmf.census.weil/1", cfg);
                j["p"] = cw_p;
                json arr = json::array();
                for (auto& r : rows)
                    arr.push_back({{"n", r.n}, {"q", r.q}, {"region", r.region}, {"kept", r.kept},
                                   {"D4", r.count(GaloisType::D4)}, {"C4", r.count(GaloisType::C4)},
                                   {"V4", r.count(GaloisType::V4)}, {"d4_share", r.d4_proportion()}});
                j["rows"] = arr;
                std::ofstream f(cs_report);
                if (!f) throw UsageError("cannot write " + cs_report);
                write_json(f, j);
            }
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = RunConfig::resolve(config_path);
        if (prec_flag != 0) {
            if (prec_flag < 32 || prec_flag > 65536) throw UsageError("--prec must be between 32 and 65536");
            cfg.precision = static_cast<mpfr_prec_t>(prec_flag);
            cfg.precision_source = "command line";
        }
        if (jobs_flag >= 0) cfg.jobs = jobs_flag;
        if (!action) throw UsageError("no command given; see --help");
        return action(cfg);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: InternalError: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace cmf::cli
