#include "cmf/analytic.hpp"
#include "cmf/error.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <map>
#include <mutex>

namespace cmf {

namespace {

// B_{2j} / (2j)! for j = 0..count-1 at the given precision.
const std::vector<Real>& bernoulli_over_factorial(std::size_t count, mpfr_prec_t prec) {
    static std::mutex mu;
    static std::map<mpfr_prec_t, std::vector<Real>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& v = cache[prec];
    if (v.size() < count) {
        const auto B = bernoulli_numbers(static_cast<unsigned>(2 * count));
        v.clear();
        for (std::size_t j = 0; j < count; ++j)
            v.emplace_back(Rat(B[2 * j] / Rat(factorial(static_cast<unsigned>(2 * j)))), prec);
    }
    return v;
}

bool negligible(const Real& term, const Real& scale, mpfr_prec_t prec) {
    if (term.is_zero()) return true;
    long e = scale.is_zero() ? 0 : std::max(0L, scale.exponent());
    return term.exponent() < e - static_cast<long>(prec);
}

}  // namespace

Dual hurwitz_zeta(const Dual& s, const Real& a) {
    const mpfr_prec_t out = s.v.prec();
    const mpfr_prec_t wp = out + 24;
    if (a.sign() <= 0) throw Error("DomainError", "hurwitz_zeta needs a > 0");
    Real one(1L, wp);
    if (mpfr_cmp_si(s.v.get(), 1) == 0) throw Error("PoleAtOne", "zeta(s, a) has a pole at s = 1");

    const Dual S{s.v.with_prec(wp), s.d.with_prec(wp)};
    const Real A = a.with_prec(wp);
    const double sabs = std::fabs(S.v.to_double());
    const double m0 = static_cast<double>(wp + 20) * std::log(2.0) / (2 * M_PI) + sabs + 2;
    const long N = std::max(0L, static_cast<long>(std::ceil(m0 - A.to_double())));

    Dual sum = Dual::constant(Real(0L, wp));
    for (long k = 0; k < N; ++k) sum = sum + pow_neg(A + k, S);

    const Real M = A + N;
    const Dual Ms = pow_neg(M, S);
    sum = sum + Dual::constant(M) * Ms / (S + Real(-1L, wp));
    sum = sum + Ms * Real(Rat(1, 2), wp);

    Dual poch = S;                // (s)_{2j-1}
    Dual P = Ms * (one / M);      // M^{-s-2j+1}
    const Real invM2 = one / (M * M);
    for (std::size_t j = 1;; ++j) {
        if (j > 4000) throw Error("InternalError", "hurwitz_zeta tail did not converge");
        const auto& bf = bernoulli_over_factorial(j + 1, wp);
        Dual term = poch * P * bf[j];
        sum = sum + term;
        if (negligible(abs(term.v), sum.v, wp) && negligible(abs(term.d), sum.d, wp) && j > 1) break;
        const Real k1 = Real(static_cast<long>(2 * j - 1), wp), k2 = Real(static_cast<long>(2 * j), wp);
        poch = poch * (S + k1) * (S + k2);
        P = P * invM2;
    }
    return {sum.v.with_prec(out), sum.d.with_prec(out)};
}

Real hurwitz_zeta(const Real& s, const Real& a) { return hurwitz_zeta(Dual::constant(s), a).v; }

Real bessel_k0(const Real& x) {
    const mpfr_prec_t out = x.prec();
    if (x.sign() <= 0) throw Error("DomainError", "bessel_k0 needs x > 0");
    const double xd = x.to_double();
    const double ln2 = std::log(2.0);
    if (xd > (static_cast<double>(out) + 12) * ln2 / 2 + 2) {
        // asymptotic expansion; the smallest term is below e^{-2x}
        const mpfr_prec_t wp = out + 16;
        const Real X = x.with_prec(wp);
        Real one(1L, wp);
        Real term = one, sum = one;
        for (long k = 1; k < 4 * static_cast<long>(xd) + 10; ++k) {
            term = term * Real(-(2 * k - 1) * (2 * k - 1), wp) / (X * (8 * k));
            sum += term;
            if (negligible(abs(term), one, wp)) break;
        }
        Real pre = sqrt(const_pi(wp) / (2 * X)) * exp(-X);
        return (pre * sum).with_prec(out);
    }
    // power series; the I_0 part cancels about 2x/ln 2 bits
    const mpfr_prec_t wp = out + 24 + static_cast<mpfr_prec_t>(std::ceil(2 * xd / ln2));
    const Real X = x.with_prec(wp);
    const Real q = X * X / 4;
    Real t(1L, wp), I0(1L, wp), S(0L, wp), H(0L, wp);
    for (long k = 1;; ++k) {
        t = t * q / (k * k);
        H += Real(1L, wp) / Real(k, wp);
        I0 += t;
        S += H * t;
        if (k > xd && negligible(H * t, I0, wp)) break;
    }
    Real r = S - (log(X / 2) + const_euler(wp)) * I0;
    return r.with_prec(out);
}

std::vector<Real> integrate_tail(const std::function<std::vector<Real>(const Real&)>& f, std::size_t width,
                                 mpfr_prec_t prec, int jobs) {
    const mpfr_prec_t wp = prec + 16;
    const Real half_pi = const_pi(wp) / 2;

    // Integrand times Jacobian at tau, with t = 1 + exp((pi/2) sinh tau).
    auto weighted = [&](double tau) {
        Real T(tau, wp);
        Real sh = (exp(T) - exp(-T)) / 2, ch = (exp(T) + exp(-T)) / 2;
        Real e = exp(half_pi * sh);
        Real t = e + 1L;
        Real jac = half_pi * ch * e;
        auto v = f(t);
        if (v.size() != width) throw Error("InternalError", "integrand width mismatch");
        for (auto& x : v) x = x * jac;
        return v;
    };

    auto eval_all = [&](const std::vector<double>& taus) {
        std::vector<std::vector<Real>> out(taus.size());
        std::exception_ptr err;
        const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (long i = 0; i < static_cast<long>(taus.size()); ++i) {
            try {
                out[static_cast<std::size_t>(i)] = weighted(taus[static_cast<std::size_t>(i)]);
            } catch (...) {
#pragma omp critical
                err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return out;
    };

    auto small = [&](const std::vector<Real>& v, const std::vector<Real>& scale) {
        for (std::size_t c = 0; c < width; ++c)
            if (!negligible(abs(v[c]), scale[c], wp + 8)) return false;
        return true;
    };

    // first level: walk outwards until the weighted integrand is negligible
    double h = 0.125;
    std::vector<Real> sum(width, Real(0L, wp)), l1(width, Real(0L, wp));
    auto add = [&](const std::vector<Real>& v) {
        for (std::size_t c = 0; c < width; ++c) {
            sum[c] += v[c];
            l1[c] += abs(v[c]);
        }
    };
    add(weighted(0.0));
    long kmin = 0, kmax = 0;
    for (int dir : {1, -1}) {
        int quiet = 0;
        for (long k = 1; k < 4000; ++k) {
            auto v = weighted(dir * k * h);
            add(v);
            (dir > 0 ? kmax : kmin) = dir * k;
            quiet = small(v, l1) ? quiet + 1 : 0;
            if (quiet >= 2) break;
        }
    }
    const double lo = kmin * h, hi = kmax * h;

    std::vector<Real> total(width, Real(0L, wp));
    for (std::size_t c = 0; c < width; ++c) total[c] = sum[c] * Real(h, wp);

    for (int level = 0; level < 12; ++level) {
        h /= 2;
        std::vector<double> taus;
        for (double tau = lo + h; tau < hi; tau += 2 * h) taus.push_back(tau);
        auto vals = eval_all(taus);
        for (auto& v : vals) add(v);
        bool done = true;
        std::vector<Real> next(width, Real(0L, wp));
        for (std::size_t c = 0; c < width; ++c) {
            next[c] = sum[c] * Real(h, wp);
            Real diff = abs(next[c] - total[c]);
            if (!negligible(diff, l1[c] * Real(h, wp), prec - 4)) done = false;
        }
        total = std::move(next);
        if (done && level >= 1) {
            for (auto& x : total) x = x.with_prec(prec);
            return total;
        }
    }
    throw Error("InternalError", "integrate_tail did not converge");
}

}  // namespace cmf
