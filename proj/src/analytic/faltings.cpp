#include "cmf/analytic.hpp"
#include "cmf/error.hpp"

#include <omp.h>

#include <exception>

namespace cmf {

std::vector<long> hecke_coefficients(const CMExtension& E, std::size_t count) {
    const FieldPtr& F = E.F;
    const auto limit = static_cast<std::uint32_t>(count);
    SpfSieve sieve(std::max<std::uint32_t>(limit, 2));
    // local factor at p: prod over P | p of (1 - chi(P) T^f)^{-1}, truncated at p^k <= count
    std::vector<std::vector<long>> local(static_cast<std::size_t>(limit) + 1);
    for (std::uint32_t p = 2; p <= limit; ++p) {
        if (!sieve.is_prime(p)) continue;
        int kmax = 0;
        for (std::uint64_t q = p; q <= limit; q *= p) ++kmax;
        std::vector<long> c(static_cast<std::size_t>(kmax) + 1, 0);
        c[0] = 1;
        for (auto& [P, e] : factor_rational_prime(F, Int(p))) {
            int chi = 0;
            if (valuation(E.rel_disc, P) == 0)
                chi = splitting_in_quadratic_ext(P, E.delta) == LocalType::Split ? 1 : -1;
            if (chi == 0) continue;
            // multiply by sum_j chi^j T^{f j}
            std::vector<long> next(c.size(), 0);
            for (std::size_t i = 0; i < c.size(); ++i) {
                long sgn = 1;
                for (std::size_t k = i; k < c.size(); k += static_cast<std::size_t>(P.f)) {
                    next[k] += sgn * c[i];
                    sgn *= chi;
                }
            }
            c = std::move(next);
        }
        local[p] = std::move(c);
    }
    std::vector<long> a(count, 0);
    if (count == 0) return a;
    a[0] = 1;
    for (std::uint32_t n = 2; n <= limit; ++n) {
        long v = 1;
        for (auto& [p, k] : sieve.factor(n)) v *= local[p][static_cast<std::size_t>(k)];
        a[n - 1] = v;
    }
    return a;
}

HeckeOracle hecke_L_quadratic(const CMExtension& E, mpfr_prec_t prec, int jobs) {
    if (E.F->degree() != 2) throw Error("PreconditionFailed", "the Hecke L-function oracle needs a real quadratic F");
    HeckeOracle out;
    out.conductor = E.abs_disc / E.F->disc();
    LFunctionSpec spec;
    spec.conductor = out.conductor;
    spec.shifts = {1, 1};
    out.terms = coefficients_needed(spec.conductor, spec.shifts, prec);
    for (long c : hecke_coefficients(E, out.terms)) spec.coeffs.emplace_back(c, prec + 32);
    LFunction L(std::move(spec), prec, jobs);
    out.lderiv = L.log_deriv_at_zero();
    out.sign = L.sign();
    out.sign_residual = L.sign_residual();
    return out;
}

LerchTerms lerch_real_quadratic(const CMExtension& E, const CharacterTable& T, long h_E, long Q, mpfr_prec_t prec,
                                int jobs) {
    if (E.F->degree() != 2) throw Error("PreconditionFailed", "needs a real quadratic F");
    if (h_E < 1 || Q < 1) throw Error("PreconditionFailed", "h_E and Q must be positive");
    if (T.sign_sum() != 0)
        throw Error("NonvanishingCharacterSum",
                    "sum of character values over the Shintani set is " + std::to_string(T.sign_sum()));
    const mpfr_prec_t wp = prec + 32;
    const Real e1 = T.eps.embed(0, wp), e2 = T.eps.embed(1, wp);
    const Real one(1L, wp);

    // log Gamma_2 pairs, one per row, summed afterwards in row order
    std::vector<Real> pair(T.rows.size());
    std::exception_ptr err;
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < static_cast<long>(T.rows.size()); ++i) {
        try {
            const Elt& z = T.rows[static_cast<std::size_t>(i)].point.z;
            pair[static_cast<std::size_t>(i)] =
                barnes_log_gamma2(z.embed(0, wp), one, e1) + barnes_log_gamma2(z.embed(1, wp), one, e2);
        } catch (...) {
#pragma omp critical
            err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);

    LerchTerms L;
    L.zeta_sum = Real(0L, wp);
    for (std::size_t i = 0; i < T.rows.size(); ++i)
        L.zeta_sum += T.rows[i].sign > 0 ? pair[i] : -pair[i];
    L.constant = -log(Real(E.rel_disc.norm(), wp));
    L.b2_sum = T.bernoulli_sum();
    L.b2_coefficient = (e1 - e2) / 2 * log(e2);
    L.weight = Rat(Q, 2 * h_E);
    L.weight.canonicalize();
    const Real w(L.weight, wp);
    L.total = L.constant + w * L.zeta_sum + L.b2_coefficient * w * Real(L.b2_sum, wp);
    for (Real* x : {&L.constant, &L.zeta_sum, &L.b2_coefficient, &L.total}) *x = x->with_prec(prec);
    return L;
}

FaltingsQuartic faltings_quartic(const CMExtension& E, long h_E, long Q, mpfr_prec_t prec, int jobs, double tolerance) {
    const mpfr_prec_t wp = prec + 32;
    FaltingsQuartic r;
    const CharacterTable T = character_table(E, jobs);
    r.terms = lerch_real_quadratic(E, T, h_E, Q, prec, jobs);
    r.oracle = hecke_L_quadratic(E, prec, jobs);
    r.lderiv_shintani = r.terms.total;
    r.lderiv_oracle = r.oracle.lderiv;
    r.residual = abs(r.lderiv_shintani - r.lderiv_oracle);

    const Real log2pi = log(2 * const_pi(wp));
    r.conductor_term = -(log(Real(r.oracle.conductor, wp)) / 4);
    auto height = [&](const Real& ld) { return -(ld.with_prec(wp) / 2) + r.conductor_term - log2pi; };
    r.h_fal = height(r.lderiv_shintani);
    r.h_fal_oracle = height(r.lderiv_oracle);

    // -(Q/4h) sum c log Gamma_2 - (Q/4h) kappa sum c B_2 + (1/4) log(N(d)/d_F) - log 2 pi
    const Real half_w = Real(r.terms.weight, wp) / 2;
    const Rat ratio = E.rel_disc.norm() / Rat(E.F->disc());
    r.closed_form = -(half_w * r.terms.zeta_sum) - half_w * r.terms.b2_coefficient * Real(r.terms.b2_sum, wp) +
                    log(Real(ratio, wp)) / 4 - log2pi;
    r.closed_form_residual = abs(r.closed_form - r.h_fal);

    for (Real* x : {&r.h_fal, &r.h_fal_oracle, &r.residual, &r.conductor_term, &r.closed_form, &r.closed_form_residual})
        *x = x->with_prec(prec);
    if (r.residual.to_double() > tolerance)
        throw Error("CrossCheckFailed", "Shintani and L-function paths differ by " + r.residual.str(6));
    return r;
}

}  // namespace cmf
