#pragma once

#include "cmf/shintani.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace cmf {

// ---- special functions ----------------------------------------------------

// zeta(s, a) = sum_{k>=0} (k+a)^{-s} for real s != 1, a > 0. The derivative
// part of the result is d/ds propagated from s.d. Precision is taken from s.v.
Dual hurwitz_zeta(const Dual& s, const Real& a);
Real hurwitz_zeta(const Real& s, const Real& a);

// K_0(x) for x > 0.
Real bessel_k0(const Real& x);

// Integrals over [1, inf) of a vector-valued integrand by exp-sinh quadrature,
// refined until successive levels agree to the precision of the integrand.
// Nodes of one level are evaluated with `jobs` threads (0 = default) and
// summed in node order.
std::vector<Real> integrate_tail(const std::function<std::vector<Real>(const Real&)>& f, std::size_t width,
                                 mpfr_prec_t prec, int jobs = 0);

// zeta_2(s, z, (w1, w2)) = sum_{m,n>=0} (z + m w1 + n w2)^{-s}, continued in s.
// Poles at s = 1, 2.
Dual barnes_zeta2(const Dual& s, const Real& z, const Real& w1, const Real& w2);
// zeta_2'(0, z, w) = log Gamma_2(z, w) in the zeta normalisation.
Real barnes_log_gamma2(const Real& z, const Real& w1, const Real& w2);

// ---- L-functions -----------------------------------------------------------

// Lambda(s) = Q^{s/2} prod_j Gamma_R(s + mu_j) L(s), Lambda(s) = omega Lambda(1 - s).
// Supported shapes: {0}, {1}, {0,0}, {1,1}.
struct LFunctionSpec {
    std::vector<Real> coeffs;  // a_1, a_2, ... (index 0 is a_1)
    Int conductor;
    std::vector<int> shifts;
    std::optional<int> sign;  // fitted when empty
};

// Number of coefficients the theta sums need at precision prec.
std::size_t coefficients_needed(const Int& conductor, const std::vector<int>& shifts, mpfr_prec_t prec);

struct LValue {
    Real lambda, dlambda;  // completed function and its s-derivative
    Real value, deriv;     // L(s), L'(s)
};

class LFunction {
public:
    LFunction(LFunctionSpec spec, mpfr_prec_t prec, int jobs = 0);

    // theta(t) = sum a_n phi(n t / sqrt(Q))
    Real theta(const Real& t) const;
    int sign() const { return sign_; }
    // |theta(1/t) - omega t theta(t)| / |theta(1/t)| at two test points.
    const Real& sign_residual() const { return sign_residual_; }

    LValue evaluate(const Real& s) const;
    // L'/L(0); needs L(0) != 0.
    Real log_deriv_at_zero() const;

private:
    Real kernel(const Real& x) const;
    Real gamma_log_deriv(const Real& s) const;
    Real log_gamma_factor(const Real& s) const;

    LFunctionSpec spec_;
    mpfr_prec_t prec_;
    int jobs_;
    Real sqrtQ_;
    int sign_ = 1;
    Real sign_residual_;
};

// Kronecker character chi_{-D} for -D a fundamental discriminant (D > 0).
LFunctionSpec kronecker_spec(const Int& D, mpfr_prec_t prec);

struct ImagQuadData {
    Int D;
    long h = 0;
    long w = 0;
    std::vector<std::array<Int, 3>> forms;  // reduced (a, b, c), b^2 - 4ac = -D
};

// Throws Error("NotFundamental") unless -D is a fundamental discriminant.
ImagQuadData imaginary_quadratic_data(const Int& D);

LValue dirichlet_L(const Int& D, const Real& s, int jobs = 0);

struct TwoSided {
    Real lhs, rhs, residual;  // residual = |lhs - rhs|
};

// L'/L(chi_{-D}, 0) from theta sums (lhs) against (w/2h) sum chi(k) log Gamma(k/D) - log D (rhs).
TwoSided lerch_check(const Int& D, mpfr_prec_t prec);
// sum over reduced forms of log(sqrt(Im tau)|eta(tau)|^2) against
// (h/2)[log(sqrt(D)/2) - log 2 pi + L'/L(chi_{-D}, 0)].
TwoSided eta_cm_check(const Int& D, mpfr_prec_t prec);
// Faltings height of an elliptic curve with CM by the maximal order of
// Q(sqrt -D): Gamma-sum form (lhs) against the L-function form (rhs).
// Throws Error("CrossCheckFailed") if the two differ by more than 2^{-prec/2}.
TwoSided faltings_imag_quadratic(const Int& D, mpfr_prec_t prec);

// ---- quartic CM fields -----------------------------------------------------

struct HeckeOracle {
    Real lderiv;  // L'/L(chi_{E/F}, 0)
    int sign = 0;
    Real sign_residual;
    Int conductor;  // |d_E| / d_F
    std::size_t terms = 0;
};

// Coefficients of zeta_E / zeta_F, a_1..a_count.
std::vector<long> hecke_coefficients(const CMExtension& E, std::size_t count);
// Throws Error("SignUnresolved") if the fitted sign is not +-1 to 2^{-prec/2}.
HeckeOracle hecke_L_quadratic(const CMExtension& E, mpfr_prec_t prec, int jobs = 0);

struct LerchTerms {
    Real constant;        // -log N(d_{E/F})
    Real zeta_sum;        // sum c [zeta_2'(0, z, (1, eps)) + zeta_2'(0, z', (1, eps'))]
    Rat b2_sum;           // sum c B_2(x)
    Real b2_coefficient;  // ((eps - eps')/2) log eps'
    Rat weight;           // Q / (2 h_E)
    Real total;           // L'/L(chi_{E/F}, 0)
};

// Throws Error("NonvanishingCharacterSum") if sum c != 0.
LerchTerms lerch_real_quadratic(const CMExtension& E, const CharacterTable& T, long h_E, long Q, mpfr_prec_t prec,
                                int jobs = 0);

struct FaltingsQuartic {
    Real h_fal;            // from the Shintani path
    Real h_fal_oracle;     // from the L-function oracle
    Real lderiv_shintani;
    Real lderiv_oracle;
    Real residual;         // |lderiv_shintani - lderiv_oracle|
    Real conductor_term;   // -(1/4) log(|d_E| / d_F)
    Real closed_form;      // the same height regrouped by term type
    Real closed_form_residual;
    LerchTerms terms;
    HeckeOracle oracle;
};

// Throws Error("CrossCheckFailed") if the two paths differ by more than `tolerance`.
FaltingsQuartic faltings_quartic(const CMExtension& E, long h_E, long Q, mpfr_prec_t prec, int jobs = 0,
                                 double tolerance = 1e-9);

// Minkowski bound (3 / 2 pi^2) sqrt|d_E| for a quartic field.
double minkowski_bound_quartic(const Int& abs_disc);

// Returns 1 after showing every prime of E below the bound is principal.
// Throws Error("ClassGroupNontrivial") when one is not, Error("WorkloadExceeded")
// when the bound exceeds max_bound, Error("PreconditionFailed") unless h_F = 1.
long class_number_quartic_cm(const CMExtension& E, std::optional<double> bound_override = std::nullopt,
                             double max_bound = 5000);

}  // namespace cmf
