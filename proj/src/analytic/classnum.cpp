#include "cmf/analytic.hpp"
#include "cmf/error.hpp"

#include <cmath>

namespace cmf {

double minkowski_bound_quartic(const Int& abs_disc) {
    return 3.0 / (2.0 * M_PI * M_PI) * std::sqrt(abs_disc.get_d());
}

namespace {

// Integral alpha = u + v sqrt(delta) with u in (1/2) O_F, v in (1/2c) O_F.
struct NormForm {
    FieldPtr F;
    Elt delta;
    Int c;
    std::vector<std::vector<double>> gram;

    Elt u_of(const std::vector<long>& x) const {
        return (F->basis_elt(0) * Rat(x[0]) + F->basis_elt(1) * Rat(x[1])) * Rat(1, 2);
    }
    Elt v_of(const std::vector<long>& x) const {
        Rat s(1, 2);
        s /= Rat(c);
        return (F->basis_elt(0) * Rat(x[2]) + F->basis_elt(1) * Rat(x[3])) * s;
    }
    // N_{E/F}(alpha) if alpha is integral
    std::optional<Elt> relative_norm(const std::vector<long>& x) const {
        Elt u = u_of(x), v = v_of(x);
        Elt n = u * u - delta * v * v;
        if (!n.is_integral()) return std::nullopt;
        return n;
    }
};

NormForm make_form(const CMExtension& E) {
    NormForm nf;
    nf.F = E.F;
    const Int den = E.delta.denominator();
    nf.delta = E.delta * Rat(den * den);
    Int c = 1;
    const Int N = abs(nf.delta.norm().get_num());
    for (auto& [p, k] : factor(N)) c *= pow_int(p, static_cast<unsigned long>(k / 2));
    nf.c = c;

    // T(alpha) = sum_j sigma_j(u)^2 + |sigma_j(delta)| sigma_j(v)^2
    const int n = 2;
    std::vector<std::vector<double>> uval(4, std::vector<double>(n, 0.0)), vval = uval;
    for (int k = 0; k < 4; ++k) {
        std::vector<long> e(4, 0);
        e[static_cast<std::size_t>(k)] = 1;
        for (int j = 0; j < n; ++j) {
            uval[k][j] = nf.u_of(e).approx(j);
            vval[k][j] = nf.v_of(e).approx(j);
        }
    }
    nf.gram.assign(4, std::vector<double>(4, 0.0));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int j = 0; j < n; ++j)
                nf.gram[a][b] += uval[a][j] * uval[b][j] + std::fabs(nf.delta.approx(j)) * vval[a][j] * vval[b][j];
    return nf;
}

}  // namespace

long class_number_quartic_cm(const CMExtension& E, std::optional<double> bound_override, double max_bound) {
    const FieldPtr& F = E.F;
    if (F->degree() != 2) throw Error("PreconditionFailed", "class_number_quartic_cm needs a real quadratic F");
    const double M = bound_override.value_or(minkowski_bound_quartic(E.abs_disc));
    if (M > max_bound)
        throw Error("WorkloadExceeded", "Minkowski bound " + std::to_string(M) + " exceeds the cap; supply h_E");

    const NormForm nf = make_form(E);
    const Real eps = fundamental_unit(F).embed(0, 64);
    const double spread = eps.to_double() + 1.0 / eps.to_double();

    for (long p = 2; p <= static_cast<long>(M); ++p) {
        if (!is_prime_u64(static_cast<std::uint64_t>(p))) continue;
        for (auto& [P, e] : factor_rational_prime(F, Int(p))) {
            const LocalType type = local_quadratic(P, nf.delta).type;
            const int f_rel = type == LocalType::Inert ? 2 : 1;
            const double norm = std::pow(P.norm().get_d(), f_rel);
            if (norm > M) continue;
            if (!principal_generator(P.ideal))
                throw Error("PreconditionFailed", "h_F = 1 is required; " + P.label + " is not principal in F");
            const Ideal target = pow(P.ideal, f_rel);
            // some unit multiple of alpha has trace of N(alpha) at most sqrt(n)(eps + 1/eps)
            const double bound = std::sqrt(norm) * spread * (1 + 1e-9) + 1e-9;
            bool found = false;
            enumerate_short_vectors(nf.gram, bound, [&](const std::vector<long>& x) {
                auto n = nf.relative_norm(x);
                if (n && !n->is_zero() && Ideal::principal(*n) == target) found = true;
                return !found;
            });
            if (!found)
                throw Error("ClassGroupNontrivial",
                            "the prime of E above " + P.label + " is not principal; h_E > 1 must be supplied");
        }
    }
    return 1;
}

}  // namespace cmf
