#include "cmf/error.hpp"
#include "cmf/nfield.hpp"

#include <cmath>

namespace cmf {

Elt fundamental_unit(const FieldPtr& F) {
    if (F->degree() != 2) throw Error("DomainError", "fundamental_unit requires a real quadratic field");
    const Int D = F->disc();
    const Int s = isqrt(D);  // D is never a square
    // reduced alpha = (b + sqrt D)/2 with b the largest integer < sqrt D, b = D mod 2
    Int b = s;
    if ((b - D) % 2 != 0) b -= 1;
    const Int P0 = b, Q0 = 2;
    Int P = P0, Q = Q0;
    Int qm1 = 0, qm2 = 1;  // q_{k-1}, q_{k-2}
    for (long k = 0;; ++k) {
        Int a = floor_div(P + s, Q);
        Int qk = a * qm1 + qm2;
        qm2 = qm1;
        qm1 = qk;
        P = a * Q - P;
        Q = (D - P * P) / Q;
        if (P == P0 && Q == Q0) break;
        if (k > 10000000) throw Error("InternalError", "continued fraction period too long");
    }
    // eps = q_{l-1} alpha + q_{l-2}, alpha = (b + sqrt D)/2
    Rat half(1, 2);
    Rat sq = D % 4 == 0 ? Rat(2) : Rat(1);  // sqrt D = sq * sqrt m
    Elt alpha = F->from_surd(Rat(b) * half, sq * half);
    Elt eps = alpha * Rat(qm1) + Rat(qm2);
    Rat N = eps.norm();
    if (N != 1 && N != -1) throw Error("InternalError", "continued fraction did not yield a unit");
    return eps;
}

Elt fundamental_totally_positive_unit(const FieldPtr& F) {
    Elt e = fundamental_unit(F);
    if (e.norm() == 1) return e;
    return e * e;
}

namespace {

double log_abs(const Elt& u, int j) { return std::log(std::fabs(u.approx(j))); }

std::vector<Elt> cubic_units(const FieldPtr& F) {
    const int n = 3;
    auto G = F->t2_gram();
    std::vector<Elt> found;
    std::vector<std::vector<double>> logs;
    for (double bound = 16; bound < 1e7; bound *= 4) {
        found.clear();
        logs.clear();
        enumerate_short_vectors(G, bound, [&](const std::vector<long>& x) {
            IntVec c;
            for (long v : x) c.emplace_back(v);
            Elt u = Elt::from_ints(F, c);
            Rat N = u.norm();
            if (N == 1 || N == -1) {
                // skip -u duplicates: keep the one with positive first embedding
                if (u.sign_at(0) > 0) {
                    found.push_back(u);
                    logs.push_back({log_abs(u, 0), log_abs(u, 1)});
                }
            }
            return true;
        });
        double best = 0;
        int bi = -1, bj = -1;
        for (std::size_t i = 0; i < found.size(); ++i)
            for (std::size_t j = i + 1; j < found.size(); ++j) {
                double reg = std::fabs(logs[i][0] * logs[j][1] - logs[i][1] * logs[j][0]);
                if (reg > 1e-6 && (bi < 0 || reg < best - 1e-9)) {
                    best = reg;
                    bi = static_cast<int>(i);
                    bj = static_cast<int>(j);
                }
            }
        if (bi >= 0) return {found[static_cast<std::size_t>(bi)], found[static_cast<std::size_t>(bj)]};
    }
    (void)n;
    throw Error("UnitSearchFailed", "no independent units found within the search bound");
}

}  // namespace

std::vector<Elt> unit_generators(const FieldPtr& F) {
    if (auto c = F->cached_units()) {
        std::vector<Elt> out;
        for (auto& v : *c) out.emplace_back(F, v);
        return out;
    }
    std::vector<Elt> units;
    if (F->degree() == 2)
        units.push_back(fundamental_unit(F));
    else if (F->degree() == 3)
        units = cubic_units(F);
    std::vector<RatVec> store;
    for (auto& u : units) store.push_back(u.coords());
    F->store_units(std::move(store));
    return units;
}

}  // namespace cmf
