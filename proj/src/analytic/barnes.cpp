#include "cmf/analytic.hpp"
#include "cmf/error.hpp"

#include <cmath>

namespace cmf {

namespace {

// (k + s) zeta(k + s + 1, a) at k + s = 0, as a first-order jet: 1 - psi(a) (s - s0).
Dual removable_pole(const Dual& s, const Real& a) { return {Real(1L, s.v.prec()), -digamma(a) * s.d}; }

}  // namespace

Dual barnes_zeta2(const Dual& s, const Real& z, const Real& w1_in, const Real& w2_in) {
    const mpfr_prec_t out = s.v.prec();
    const mpfr_prec_t wp = out + 64;
    if (z.sign() <= 0 || w1_in.sign() <= 0 || w2_in.sign() <= 0)
        throw Error("DomainError", "barnes_zeta2 needs z, w1, w2 > 0");
    for (long pole : {1L, 2L})
        if (mpfr_cmp_si(s.v.get(), pole) == 0) throw Error("PoleAtOne", "zeta_2 has poles at s = 1, 2");

    // symmetric in (w1, w2); sum over the direction with the larger period
    Real w1 = w1_in.with_prec(wp), w2 = w2_in.with_prec(wp);
    if (w1 > w2) std::swap(w1, w2);
    const Dual S{s.v.with_prec(wp), s.d.with_prec(wp)};
    const Real a0 = z.with_prec(wp) / w1;
    const Real w = w2 / w1;
    const Real one(1L, wp);

    const double m0 = static_cast<double>(wp + 20) * std::log(2.0) / (2 * M_PI) + 2;
    const long N = std::max(0L, static_cast<long>(std::ceil(m0 - (a0 / w).to_double())));

    Dual sum = Dual::constant(Real(0L, wp));
    for (long n = 0; n < N; ++n) sum = sum + hurwitz_zeta(S, a0 + w * n);

    // Euler-Maclaurin in n for sum_{n>=N} zeta(s, a + n w), a = a0 + N w
    const Real a = a0 + w * N;
    const Dual sm1 = S + Real(-1L, wp);
    sum = sum + hurwitz_zeta(sm1, a) / (sm1 * w);
    sum = sum + hurwitz_zeta(S, a) * Real(Rat(1, 2), wp);

    Real wpow = w;  // w^{2j-1}
    Dual poch_pre = Dual::constant(one);  // s (s+1) ... (s+2j-3)
    for (long j = 1;; ++j) {
        if (j > 2000) throw Error("InternalError", "barnes_zeta2 tail did not converge");
        const Dual last = S + Real(2 * j - 2, wp);  // last Pochhammer factor
        Dual piece = last.v.is_zero() ? removable_pole(S, a) : last * hurwitz_zeta(S + Real(2 * j - 1, wp), a);
        const auto Bj = bernoulli_numbers(static_cast<unsigned>(2 * j));
        Real coeff = Real(Rat(Bj[static_cast<std::size_t>(2 * j)] / Rat(factorial(static_cast<unsigned>(2 * j)))), wp) * wpow;
        Dual term = poch_pre * piece * coeff;
        sum = sum + term;
        const long ev = std::max(0L, sum.v.is_zero() ? 0L : sum.v.exponent());
        const long ed = std::max(0L, sum.d.is_zero() ? 0L : sum.d.exponent());
        bool small_v = term.v.is_zero() || term.v.exponent() < ev - static_cast<long>(wp);
        bool small_d = term.d.is_zero() || term.d.exponent() < ed - static_cast<long>(wp);
        if (small_v && small_d && j > 1) break;
        poch_pre = poch_pre * last * (S + Real(2 * j - 1, wp));
        wpow = wpow * w * w;
    }
    Dual r = pow_neg(w1, S) * sum;
    return {r.v.with_prec(out), r.d.with_prec(out)};
}

Real barnes_log_gamma2(const Real& z, const Real& w1, const Real& w2) {
    return barnes_zeta2(Dual::variable(Real(0L, z.prec())), z, w1, w2).d;
}

}  // namespace cmf
