#include "cmf/real.hpp"

#include "cmf/error.hpp"

#include <algorithm>
#include <climits>
#include <vector>

namespace cmf {

namespace {

mpfr_prec_t pmax(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }

}  // namespace

Real::Real(const std::string& s, mpfr_prec_t prec) : Real(prec) {
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) throw UsageError("bad real literal: " + s);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real Real::with_prec(mpfr_prec_t p) const {
    Real r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string Real::str(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
    if (is_zero()) return "0";
    if (digits <= 0) digits = static_cast<int>(static_cast<double>(prec()) * 0.30103) + 1;
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

Real& Real::operator+=(const Real& o) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator-=(const Real& o) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator*=(const Real& o) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator/=(const Real& o) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real operator+(const Real& a, const Real& b) {
    Real r(pmax(a, b));
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator-(const Real& a, const Real& b) {
    Real r(pmax(a, b));
    mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator*(const Real& a, const Real& b) {
    Real r(pmax(a, b));
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator/(const Real& a, const Real& b) {
    Real r(pmax(a, b));
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}
Real operator*(const Real& a, long b) {
    Real r(a.prec());
    mpfr_mul_si(r.get(), a.get(), b, MPFR_RNDN);
    return r;
}
Real operator/(const Real& a, long b) {
    Real r(a.prec());
    mpfr_div_si(r.get(), a.get(), b, MPFR_RNDN);
    return r;
}
Real operator+(const Real& a, long b) {
    Real r(a.prec());
    mpfr_add_si(r.get(), a.get(), b, MPFR_RNDN);
    return r;
}
Real operator-(const Real& a, long b) {
    Real r(a.prec());
    mpfr_sub_si(r.get(), a.get(), b, MPFR_RNDN);
    return r;
}
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()); }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()); }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()); }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()); }

#define CMF_UNARY(name, fn)                 \
    Real name(const Real& x) {              \
        Real r(x.prec());                   \
        fn(r.get(), x.get(), MPFR_RNDN);    \
        return r;                           \
    }
CMF_UNARY(abs, mpfr_abs)
CMF_UNARY(sqrt, mpfr_sqrt)
CMF_UNARY(exp, mpfr_exp)
CMF_UNARY(log, mpfr_log)
CMF_UNARY(cos, mpfr_cos)
CMF_UNARY(sin, mpfr_sin)
CMF_UNARY(cosh, mpfr_cosh)
CMF_UNARY(digamma, mpfr_digamma)
CMF_UNARY(eint, mpfr_eint)
#undef CMF_UNARY

Real lngamma(const Real& x) {
    Real r(x.prec());
    int s;
    mpfr_lgamma(r.get(), &s, x.get(), MPFR_RNDN);
    return r;
}

Real expint_e1(const Real& x) {
    // E1(x) = -Ei(-x) for x > 0
    return -eint(-x);
}

Real pow(const Real& x, const Real& y) {
    Real r(pmax(x, y));
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& x, long n) {
    Real r(x.prec());
    mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}

Real const_pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

Real const_euler(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_euler(r.get(), MPFR_RNDN);
    return r;
}

Real const_log2(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_log2(r.get(), MPFR_RNDN);
    return r;
}

Real ldexp_one(long e, mpfr_prec_t prec) {
    Real r(1L, prec);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
Dual operator/(const Dual& a, const Dual& b) {
    Real q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}
Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
Dual operator*(const Dual& a, const Real& b) { return {a.v * b, a.d * b}; }
Dual operator+(const Dual& a, const Real& b) { return {a.v + b, a.d}; }

Dual pow_neg(const Real& x, const Dual& s) {
    Real lx = log(x);
    Real v = exp(-(s.v * lx));
    Real d = -(lx * v) * s.d;
    return {v, d};
}

Dual exp(const Dual& a) {
    Real e = exp(a.v);
    return {e, e * a.d};
}

Dual log(const Dual& a) { return {log(a.v), a.d / a.v}; }

}  // namespace cmf
