#include "cmf/analytic.hpp"
#include "cmf/error.hpp"

#include <cmath>

namespace cmf {

namespace {

bool shape_is(const std::vector<int>& s, std::initializer_list<int> want) {
    return s == std::vector<int>(want);
}

bool bessel_shape(const std::vector<int>& s) { return s.size() == 2; }

void check_shape(const std::vector<int>& s) {
    if (!(shape_is(s, {0}) || shape_is(s, {1}) || shape_is(s, {0, 0}) || shape_is(s, {1, 1})))
        throw Error("UnsupportedGammaShape", "gamma shifts must be {0}, {1}, {0,0} or {1,1}");
}

// x beyond which the kernel is below 2^{-prec} (with room for coefficient growth).
double kernel_cutoff(const std::vector<int>& shifts, mpfr_prec_t prec) {
    const double bits = static_cast<double>(prec + 40) * std::log(2.0);
    return bessel_shape(shifts) ? bits / (2 * M_PI) + 1 : std::sqrt(bits / M_PI) + 0.5;
}

// Complex numbers for the eta product.
struct Cx {
    Real re, im;
};
Cx mul(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

}  // namespace

std::size_t coefficients_needed(const Int& conductor, const std::vector<int>& shifts, mpfr_prec_t prec) {
    check_shape(shifts);
    // the sign fit evaluates theta down to t = 1/1.2
    return static_cast<std::size_t>(std::ceil(1.25 * kernel_cutoff(shifts, prec) * std::sqrt(conductor.get_d()))) + 2;
}

LFunction::LFunction(LFunctionSpec spec, mpfr_prec_t prec, int jobs)
    : spec_(std::move(spec)), prec_(prec), jobs_(jobs), sqrtQ_(sqrt(Real(spec_.conductor, prec + 32))) {
    check_shape(spec_.shifts);
    if (spec_.conductor < 1) throw Error("DomainError", "conductor must be positive");
    if (spec_.coeffs.size() < coefficients_needed(spec_.conductor, spec_.shifts, prec))
        throw Error("DomainError", "not enough Dirichlet coefficients for this precision");

    // theta(1/t) = omega t theta(t)
    const mpfr_prec_t wp = prec + 32;
    Real worst(0L, wp);
    std::optional<int> fitted;
    for (long k : {11L, 12L}) {
        Real t = Real(k, wp) / 10;
        Real lhs = theta(Real(1L, wp) / t);
        Real rhs = t * theta(t);
        if (rhs.is_zero()) throw Error("SignUnresolved", "theta vanishes at the test point");
        Real ratio = lhs / rhs;
        int s = ratio.sign() >= 0 ? 1 : -1;
        if (fitted && *fitted != s) throw Error("SignUnresolved", "test points disagree on the sign");
        fitted = s;
        Real res = abs(ratio - Real(static_cast<long>(s), wp));
        if (res > worst) worst = res;
    }
    sign_ = spec_.sign.value_or(*fitted);
    if (sign_ != *fitted) throw Error("SignUnresolved", "given sign contradicts the theta relation");
    sign_residual_ = worst.with_prec(prec);
    if (worst > ldexp_one(-static_cast<long>(prec) / 2, wp))
        throw Error("SignUnresolved", "sign fit residual " + worst.str(6) + " above threshold");
}

Real LFunction::kernel(const Real& x) const {
    const Real pi = const_pi(x.prec());
    const bool odd = spec_.shifts[0] == 1;
    if (!bessel_shape(spec_.shifts)) {
        Real g = 2 * exp(-(pi * x * x));
        return odd ? g * x : g;
    }
    Real k = 4 * bessel_k0(2 * pi * x);
    return odd ? k * x : k;
}

Real LFunction::theta(const Real& t) const {
    const mpfr_prec_t wp = prec_ + 32;
    const double X = kernel_cutoff(spec_.shifts, prec_);
    const Real step = t.with_prec(wp) / sqrtQ_;
    const auto nmax = static_cast<std::size_t>(std::floor(X / step.to_double()));
    if (nmax > spec_.coeffs.size()) throw Error("InternalError", "theta needs more coefficients");
    Real sum(0L, wp);
    for (std::size_t n = 1; n <= nmax; ++n) {
        const Real& a = spec_.coeffs[n - 1];
        if (a.is_zero()) continue;
        sum += a * kernel(step * static_cast<long>(n));
    }
    return sum;
}

Real LFunction::log_gamma_factor(const Real& s) const {
    const mpfr_prec_t wp = s.prec();
    Real r(0L, wp);
    for (int mu : spec_.shifts) {
        Real x = (s + static_cast<long>(mu)) / 2;
        r += lngamma(x) - x * log(const_pi(wp));
    }
    return r;
}

Real LFunction::gamma_log_deriv(const Real& s) const {
    const mpfr_prec_t wp = s.prec();
    Real r(0L, wp);
    for (int mu : spec_.shifts) r += (digamma((s + static_cast<long>(mu)) / 2) - log(const_pi(wp))) / 2;
    return r;
}

LValue LFunction::evaluate(const Real& s_in) const {
    const mpfr_prec_t wp = prec_ + 32;
    const Real s = s_in.with_prec(wp);
    for (int mu : spec_.shifts)
        if ((s + static_cast<long>(mu)).sign() <= 0)
            throw Error("DomainError", "s must lie to the right of the gamma factor poles");
    const Real om(static_cast<long>(sign_), wp);
    const Real s1 = Real(1L, wp) - s;
    auto f = [&](const Real& t) {
        Real th = theta(t) / t;
        Real lt = log(t);
        Real a = exp(s * lt), b = om * exp(s1 * lt);
        return std::vector<Real>{th * (a + b), th * lt * (a - b)};
    };
    auto I = integrate_tail(f, 2, wp - 8, jobs_);
    LValue r;
    r.lambda = I[0];
    r.dlambda = I[1];
    // Lambda = Q^{s/2} gamma(s) L(s)
    const Real logQ = log(Real(spec_.conductor, wp));
    Real factor = exp(s * logQ / 2 + log_gamma_factor(s));
    r.value = I[0] / factor;
    r.deriv = r.value * (I[1] / I[0] - logQ / 2 - gamma_log_deriv(s));
    for (Real* x : {&r.lambda, &r.dlambda, &r.value, &r.deriv}) *x = x->with_prec(prec_);
    return r;
}

Real LFunction::log_deriv_at_zero() const {
    const mpfr_prec_t wp = prec_ + 32;
    LValue v = evaluate(Real(0L, wp));
    if (v.lambda.is_zero()) throw Error("DomainError", "L(0) = 0");
    const Real z(0L, wp);
    Real r = v.dlambda.with_prec(wp) / v.lambda.with_prec(wp) - log(Real(spec_.conductor, wp)) / 2 - gamma_log_deriv(z);
    return r.with_prec(prec_);
}

LFunctionSpec kronecker_spec(const Int& D, mpfr_prec_t prec) {
    if (D <= 0 || !is_fundamental_discriminant(-D))
        throw Error("NotFundamental", "-" + D.get_str() + " is not a fundamental discriminant");
    LFunctionSpec spec;
    spec.conductor = D;
    spec.shifts = {1};
    const std::size_t n = coefficients_needed(D, spec.shifts, prec);
    spec.coeffs.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) spec.coeffs.emplace_back(static_cast<long>(kronecker(-D, Int(k))), prec + 32);
    return spec;
}

ImagQuadData imaginary_quadratic_data(const Int& D) {
    if (D <= 0 || !is_fundamental_discriminant(-D))
        throw Error("NotFundamental", "-" + D.get_str() + " is not a fundamental discriminant");
    ImagQuadData d;
    d.D = D;
    // reduced: |b| <= a <= c, b >= 0 if |b| = a or a = c
    for (Int a = 1; 3 * a * a <= D; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b + D;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a || (c == a && b < 0)) continue;
            if (gcd(gcd(a, abs(b)), c) != 1) continue;
            d.forms.push_back({a, b, c});
        }
    }
    d.h = static_cast<long>(d.forms.size());
    d.w = D == 3 ? 6 : D == 4 ? 4 : 2;
    return d;
}

LValue dirichlet_L(const Int& D, const Real& s, int jobs) {
    return LFunction(kronecker_spec(D, s.prec()), s.prec(), jobs).evaluate(s);
}

namespace {

// (w/2h) sum_{k<D} chi(k) log Gamma(k/D)
Real gamma_sum(const ImagQuadData& d, mpfr_prec_t wp) {
    Real s(0L, wp);
    for (Int k = 1; k < d.D; ++k) {
        int c = kronecker(-d.D, k);
        if (c == 0) continue;
        Rat x(k, d.D);
        x.canonicalize();
        Real g = lngamma(Real(x, wp));
        s += c > 0 ? g : -g;
    }
    return s * Real(Rat(d.w, 2 * d.h), wp);
}

Real lderiv(const Int& D, mpfr_prec_t prec) {
    return LFunction(kronecker_spec(D, prec), prec).log_deriv_at_zero().with_prec(prec + 32);
}

TwoSided finish(Real lhs, Real rhs, mpfr_prec_t prec) {
    TwoSided r;
    r.residual = abs(lhs - rhs).with_prec(prec);
    r.lhs = lhs.with_prec(prec);
    r.rhs = rhs.with_prec(prec);
    return r;
}

}  // namespace

TwoSided lerch_check(const Int& D, mpfr_prec_t prec) {
    const mpfr_prec_t wp = prec + 32;
    const auto d = imaginary_quadratic_data(D);
    Real rhs = gamma_sum(d, wp) - log(Real(D, wp));
    return finish(lderiv(D, prec), rhs, prec);
}

TwoSided eta_cm_check(const Int& D, mpfr_prec_t prec) {
    const mpfr_prec_t wp = prec + 32;
    const auto d = imaginary_quadratic_data(D);
    const Real pi = const_pi(wp);
    const Real sqrtD = sqrt(Real(D, wp));
    Real lhs(0L, wp);
    for (auto& [a, b, c] : d.forms) {
        // tau = (-b + i sqrt D) / 2a, q = exp(2 pi i tau)
        const Int two_a = 2 * a;
        const Real re = Real(Rat(Int(-b), two_a), wp), im = sqrtD / Real(two_a, wp);
        const Real r = exp(-2 * pi * im), th = 2 * pi * re;
        const Cx q{r * cos(th), r * sin(th)};
        // log(sqrt(Im tau) |eta|^2) = log(Im tau)/2 - pi Im tau / 6 + sum log|1 - q^n|^2
        Real acc = log(im) / 2 - pi * im / 6;
        Cx qn = q;
        for (int n = 1; n < 100000; ++n) {
            Real x = Real(1L, wp) - qn.re, y = -qn.im;
            acc += log(x * x + y * y);
            if (qn.re.is_zero() || (abs(qn.re) + abs(qn.im)).exponent() < -static_cast<long>(wp)) break;
            qn = mul(qn, q);
        }
        lhs += acc;
    }
    Real rhs = Real(Rat(d.h, 2), wp) * (log(sqrtD / 2) - log(2 * pi) + lderiv(D, prec));
    return finish(lhs, rhs, prec);
}

TwoSided faltings_imag_quadratic(const Int& D, mpfr_prec_t prec) {
    const mpfr_prec_t wp = prec + 32;
    const auto d = imaginary_quadratic_data(D);
    const Real logD = log(Real(D, wp)), log2pi = log(2 * const_pi(wp));
    Real lhs = -(gamma_sum(d, wp) / 2) + logD / 4 - log2pi / 2;
    Real rhs = -(lderiv(D, prec) / 2) - logD / 4 - log2pi / 2;
    TwoSided r = finish(lhs, rhs, prec);
    if (r.residual > ldexp_one(-static_cast<long>(prec) / 2, prec))
        throw Error("CrossCheckFailed", "Gamma and L-function forms differ by " + r.residual.str(6));
    return r;
}

}  // namespace cmf
