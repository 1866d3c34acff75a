#pragma once

#include "cmf/nfield.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace cmf {

// Fractional ideal (1/den) * span_Z(rows of hnf), coordinates over the
// integral basis. hnf is square, upper triangular, with positive diagonal and
// gcd(content(hnf), den) = 1, so equal ideals have equal representations.
class Ideal {
public:
    Ideal() = default;

    static Ideal unit(const FieldPtr& F);
    static Ideal principal(const Elt& x);
    static Ideal from_generators(const FieldPtr& F, const std::vector<Elt>& gens);
    // Z-span of the given rows, assumed to be an O-module of full rank.
    static Ideal from_rows(const FieldPtr& F, const RatMat& rows);

    const FieldPtr& field() const { return F_; }
    const IntMat& hnf() const { return H_; }
    const Int& denom() const { return den_; }
    bool is_null() const { return !F_; }

    Rat norm() const;
    bool is_integral() const { return den_ == 1; }
    bool is_unit() const;
    bool contains(const Elt& x) const;
    bool contains(const Ideal& J) const;  // J subset of this
    std::vector<Elt> basis() const;
    // Smallest positive integer in the ideal (integral ideals only).
    Int min_integer() const;

    bool operator==(const Ideal& o) const { return den_ == o.den_ && H_ == o.H_; }
    bool operator!=(const Ideal& o) const { return !(*this == o); }
    std::string str() const;

private:
    Ideal(FieldPtr F, IntMat H, Int den) : F_(std::move(F)), H_(std::move(H)), den_(std::move(den)) {}

    FieldPtr F_;
    IntMat H_;
    Int den_ = 1;
};

Ideal operator*(const Ideal& a, const Ideal& b);
Ideal operator*(const Ideal& a, const Elt& x);
Ideal operator+(const Ideal& a, const Ideal& b);
Ideal inv(const Ideal& a);
Ideal pow(const Ideal& a, long k);
bool is_coprime(const Ideal& a, const Ideal& b);

// Prime ideal P = (p, beta), with tau in p P^{-1} \ pO for valuations.
struct PrimeIdeal {
    Ideal ideal;
    Int p;
    int f = 0;
    int e = 0;
    Elt beta;
    Elt tau;
    std::string label;  // e.g. "17a": p followed by the position above p

    Int norm() const;
    bool operator==(const PrimeIdeal& o) const { return ideal == o.ideal; }
    bool operator!=(const PrimeIdeal& o) const { return !(*this == o); }
    bool operator<(const PrimeIdeal& o) const;
};

// Primes above p with their ramification indices, ordered by residue degree
// and then by residue data; cached per field.
std::vector<std::pair<PrimeIdeal, int>> factor_rational_prime(const FieldPtr& F, const Int& p);
// Prime with the given label ("17a", "5", ...).
PrimeIdeal prime_by_label(const FieldPtr& F, const std::string& label);

int valuation(const Elt& x, const PrimeIdeal& P);
int valuation(const Ideal& I, const PrimeIdeal& P);
// Full factorisation of a nonzero fractional ideal.
std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const Ideal& I);
// Product of prime powers.
Ideal ideal_product(const FieldPtr& F, const std::vector<std::pair<PrimeIdeal, int>>& fac);

// O/P^k with small residue data (N(P)^k < 2^31 for the modulus entries).
class ResidueRing {
public:
    using Vec = std::vector<std::int64_t>;

    ResidueRing(const PrimeIdeal& P, int k);

    const PrimeIdeal& prime() const { return P_; }
    int exponent() const { return k_; }
    int dim() const { return n_; }
    std::uint64_t size() const { return size_; }
    std::uint64_t unit_count() const { return units_; }

    Vec reduce(const IntVec& v) const;
    // Image of a P-integral element.
    Vec image(const Elt& x) const;
    Elt lift(const Vec& a) const;
    Vec one() const;
    Vec zero() const { return Vec(static_cast<std::size_t>(n_), 0); }
    Vec add(const Vec& a, const Vec& b) const;
    Vec sub(const Vec& a, const Vec& b) const;
    Vec mul(const Vec& a, const Vec& b) const;
    Vec pow(const Vec& a, Int e) const;
    Vec inv(const Vec& a) const;  // a must be a unit
    bool is_unit(const Vec& a) const;
    bool is_zero(const Vec& a) const;

    // Mixed-radix index in [0, size()).
    std::uint64_t index(const Vec& a) const;
    Vec from_index(std::uint64_t i) const;

private:
    void reduce_in_place(std::vector<__int128>& v) const;

    PrimeIdeal P_;
    int k_ = 1;
    int n_ = 0;
    std::vector<std::vector<std::int64_t>> H_;   // HNF of P^k
    std::vector<std::vector<std::int64_t>> H1_;  // HNF of P
    std::vector<std::int64_t> mult_;             // n^3 table
    std::int64_t M_ = 0;   // a rational integer in P^k
    std::int64_t p_ = 0;
    std::uint64_t size_ = 0, units_ = 0;
};

// Cached O/P^k for the field of P.
std::shared_ptr<const ResidueRing> residue_ring(const PrimeIdeal& P, int k);

enum class LocalType { Split, Inert, Ramified };
const char* to_string(LocalType t);

struct LocalQuadratic {
    LocalType type;
    int disc_exponent;  // valuation of the relative discriminant at P
};

// Behaviour of P in F(sqrt(delta)), delta nonzero.
LocalQuadratic local_quadratic(const PrimeIdeal& P, const Elt& delta);
LocalType splitting_in_quadratic_ext(const PrimeIdeal& P, const Elt& delta);

// Deepest t <= max_level with x^2 = u mod P^t solvable (u a P-unit).
int square_depth(const PrimeIdeal& P, const Elt& u, int max_level);
// u * (tau/p)^v(u) style normalisation: an integral P-unit in the square class
// of x times P-adic even powers. Requires v_P(x) even.
Elt unitize(const Elt& x, const PrimeIdeal& P);

}  // namespace cmf
