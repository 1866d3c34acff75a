#pragma once

#include "cmf/arith.hpp"

#include <mpfr.h>

#include <climits>

#include <string>

namespace cmf {

// RAII MPFR value with an explicit precision in bits. Binary operations
// produce a result at the larger of the operand precisions, rounded to nearest.
class Real {
public:
    static constexpr mpfr_prec_t kDefaultPrec = 192;

    Real() : Real(kDefaultPrec) {}
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec), mpfr_set_zero(v_, 1); }
    Real(long x, mpfr_prec_t prec) : Real(prec) { mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(double x, mpfr_prec_t prec) : Real(prec) { mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const Int& x, mpfr_prec_t prec) : Real(prec) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
    Real(const Rat& x, mpfr_prec_t prec) : Real(prec) { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
    Real(const std::string& s, mpfr_prec_t prec);
    Real(const Real& o) : Real(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept : Real(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    Real with_prec(mpfr_prec_t p) const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Decimal string with the given number of significant digits (0 = full precision).
    std::string str(int digits = 0) const;
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    long exponent() const { return is_zero() ? LONG_MIN : mpfr_get_exp(v_); }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

private:
    mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);
Real operator*(const Real& a, long b);
Real operator/(const Real& a, long b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
inline Real operator*(long b, const Real& a) { return a * b; }
bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real cos(const Real& x);
Real sin(const Real& x);
Real cosh(const Real& x);
Real lngamma(const Real& x);  // log|Gamma(x)|
Real digamma(const Real& x);
Real eint(const Real& x);     // Ei(x)
Real expint_e1(const Real& x);  // E1(x) for x > 0
Real const_pi(mpfr_prec_t prec);
Real const_euler(mpfr_prec_t prec);
Real const_log2(mpfr_prec_t prec);
// 2^e at the given precision.
Real ldexp_one(long e, mpfr_prec_t prec);

// Forward-mode first derivative carrier.
struct Dual {
    Real v;
    Real d;
    Dual(Real value, Real deriv) : v(std::move(value)), d(std::move(deriv)) {}
    static Dual constant(const Real& c) { return {c, Real(0L, c.prec())}; }
    static Dual variable(const Real& c) { return {c, Real(1L, c.prec())}; }
};

Dual operator+(const Dual& a, const Dual& b);
Dual operator-(const Dual& a, const Dual& b);
Dual operator*(const Dual& a, const Dual& b);
Dual operator/(const Dual& a, const Dual& b);
Dual operator-(const Dual& a);
Dual operator*(const Dual& a, const Real& b);
Dual operator+(const Dual& a, const Real& b);
// x^(-s) for real x > 0.
Dual pow_neg(const Real& x, const Dual& s);
Dual exp(const Dual& a);
Dual log(const Dual& a);

}  // namespace cmf
