#include "cmf/census.hpp"
#include "cmf/cmbuild.hpp"
#include "cmf/error.hpp"

#include <algorithm>
#include <set>

namespace cmf {

CMExtension CMExtension::make(const Elt& delta) {
    if (delta.is_zero()) throw Error("ZeroElement", "delta must be nonzero");
    if (!is_totally_negative(delta)) throw Error("NotTotallyNegative", "delta must be totally negative");
    CMExtension E;
    E.F = delta.field();
    E.delta = delta;
    E.rel_disc = relative_discriminant(E.F, delta);
    const Rat N = E.rel_disc.norm();
    E.abs_disc = E.F->disc() * E.F->disc() * N.get_num();
    return E;
}

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

std::string labels(const std::vector<PrimeIdeal>& ps) {
    std::string s;
    for (auto& P : ps) s += (s.empty() ? "" : ",") + P.label;
    return s.empty() ? "-" : s;
}

std::set<std::string> label_set(const std::vector<std::pair<PrimeIdeal, int>>& fac) {
    std::set<std::string> out;
    for (auto& [P, k] : fac) out.insert(P.label);
    return out;
}

std::string join(const std::set<std::string>& s) {
    std::string out;
    for (auto& x : s) out += (out.empty() ? "" : ",") + x;
    return out.empty() ? "-" : out;
}

}  // namespace

VerifyReport verify_construction(const CMExtension& E, const CMInput& in, const PrimeIdeal& q) {
    VerifyReport rep;
    const FieldPtr& F = E.F;

    rep.checks.push_back({"totally_negative", is_totally_negative(E.delta), ""});

    Ideal expected = in.P.ideal * q.ideal;
    for (auto& r : in.R) expected = expected * r.ideal;
    const Ideal D = Ideal::principal(E.delta);
    const auto fac = factor_ideal(D);
    bool squarefree = std::all_of(fac.begin(), fac.end(), [](const auto& pk) { return pk.second == 1; });
    std::vector<PrimeIdeal> want{in.P, q};
    want.insert(want.end(), in.R.begin(), in.R.end());
    rep.checks.push_back({"delta_factorisation", D == expected && squarefree,
                          "delta O_F = " + join(label_set(fac)) + "; expected " + labels(want)});

    const auto support = label_set(factor_ideal(E.rel_disc));
    const auto divisors = label_set(fac);
    rep.checks.push_back({"ramification_support", support == divisors,
                          "disc support " + join(support) + "; primes dividing delta " + join(divisors)});

    bool ok1 = true;
    for (auto& P : in.U1) ok1 = ok1 && splitting_in_quadratic_ext(P, E.delta) == LocalType::Split;
    rep.checks.push_back({"u1_split", ok1, labels(in.U1)});
    bool ok2 = true;
    for (auto& P : in.U2) ok2 = ok2 && splitting_in_quadratic_ext(P, E.delta) == LocalType::Inert;
    rep.checks.push_back({"u2_inert", ok2, labels(in.U2)});

    const Int closure = in.closure_disc != 0 ? in.closure_disc : F->disc();
    bool q_ok = q.p != in.p && closure % q.p != 0 && q != in.P;
    for (auto* S : {&in.R, &in.U1, &in.U2})
        for (auto& P : *S) q_ok = q_ok && P != q;
    rep.checks.push_back({"q_admissible", q_ok, q.label});

    rep.checks.push_back({"discriminant_identity", E.abs_disc == F->disc() * F->disc() * E.rel_disc.norm().get_num(),
                          "d_E = " + E.abs_disc.get_str()});
    return rep;
}

bool verify_non_galois(const CMExtension& E) {
    const FieldPtr& F = E.F;
    if (F->degree() == 1) return false;
    if (!F->is_galois()) return true;
    const auto& autos = F->automorphisms();
    for (std::size_t i = 1; i < autos.size(); ++i) {
        Elt s = F->apply(autos[i], E.delta);
        if (!is_square(s / E.delta)) return true;
    }
    return false;
}

}  // namespace cmf
