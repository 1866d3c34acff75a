#pragma once

#include "cmf/arith.hpp"
#include "cmf/lattice.hpp"
#include "cmf/real.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cmf {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Exact element of a number field, stored as rational coordinates over the
// integral basis of its parent field.
class Elt {
public:
    Elt() = default;
    Elt(FieldPtr F, RatVec coords);

    static Elt from_rat(const FieldPtr& F, const Rat& q);
    static Elt from_ints(const FieldPtr& F, const IntVec& c);

    const FieldPtr& field() const { return F_; }
    const RatVec& coords() const { return c_; }
    const Rat& operator[](std::size_t i) const { return c_[i]; }
    int degree() const { return static_cast<int>(c_.size()); }

    bool is_zero() const;
    bool is_integral() const;
    Int denominator() const;
    // Coordinates scaled by the denominator.
    IntVec scaled_coords(Int* den = nullptr) const;
    IntVec int_coords() const;  // requires is_integral()

    // Row i = coordinates of x * w_i.
    RatMat mult_matrix() const;
    Rat norm() const;
    Rat trace() const;
    // Characteristic polynomial over Q, monic, coefficients low to high.
    RatVec charpoly() const;

    Elt inverse() const;
    Elt pow(long e) const;

    // Real embedding j (roots ordered decreasingly).
    Real embed(int j, mpfr_prec_t prec) const;
    double approx(int j) const;
    // Exact sign under embedding j, decided by adaptive refinement.
    int sign_at(int j) const;

    bool operator==(const Elt& o) const { return c_ == o.c_; }
    bool operator!=(const Elt& o) const { return !(*this == o); }

private:
    FieldPtr F_;
    RatVec c_;
};

Elt operator+(const Elt& a, const Elt& b);
Elt operator-(const Elt& a, const Elt& b);
Elt operator*(const Elt& a, const Elt& b);
Elt operator/(const Elt& a, const Elt& b);
Elt operator-(const Elt& a);
Elt operator*(const Elt& a, const Rat& q);
Elt operator+(const Elt& a, const Rat& q);

// A totally real field of degree 1..3 with a fixed integral basis.
class Field : public std::enable_shared_from_this<Field> {
public:
    // min_poly: integer coefficients c0..cn (monic). basis rows: coefficients of
    // w_i in powers of the root theta.
    static FieldPtr make(const IntVec& min_poly, const std::optional<RatMat>& basis = std::nullopt);
    // Q(sqrt m) for squarefree m > 1, polynomial x^2 - m with the standard basis.
    static FieldPtr quadratic(const Int& m);
    static FieldPtr rationals();

    int degree() const { return n_; }
    const IntVec& min_poly() const { return f_; }
    const RatMat& basis() const { return basis_; }
    const RatMat& basis_inverse() const { return basis_inv_; }
    const Int& disc() const { return disc_; }
    const Int& poly_disc() const { return poly_disc_; }
    // Coordinates of w_i * w_j.
    const IntVec& mult(int i, int j) const { return mult_[static_cast<std::size_t>(i * n_ + j)]; }

    FieldPtr self() const { return shared_from_this(); }
    Elt zero() const;
    Elt one() const;
    Elt theta() const;
    Elt basis_elt(int i) const;
    Elt from_power_coords(const RatVec& p) const;
    RatVec to_power_coords(const RatVec& c) const;

    const std::vector<double>& roots_approx() const { return roots_d_; }
    // Values w_i(theta_j) at the given precision; [j][i].
    std::vector<std::vector<Real>> basis_values(mpfr_prec_t prec) const;
    std::vector<Real> roots(mpfr_prec_t prec) const;
    // T2 Gram matrix of the integral basis.
    std::vector<std::vector<double>> t2_gram() const;

    bool is_galois() const { return !autos_.empty(); }
    // Coordinate maps (row i = image of w_i) of the automorphisms, identity first.
    const std::vector<RatMat>& automorphisms() const { return autos_; }
    Elt apply(const RatMat& sigma, const Elt& x) const;

    // Quadratic helpers: squarefree m with F = Q(sqrt m); fundamental discriminant.
    const Int& quad_m() const { return quad_m_; }
    Int fundamental_disc() const { return disc_; }
    Elt sqrt_m() const;
    Elt from_surd(const Rat& a, const Rat& b) const;  // a + b sqrt m
    std::pair<Rat, Rat> to_surd(const Elt& x) const;
    Elt conj(const Elt& x) const;  // nontrivial automorphism (quadratic)

    std::string describe() const;

    // Memo slot for unit generators (coordinates), filled by unit_generators().
    std::optional<std::vector<RatVec>> cached_units() const {
        std::lock_guard<std::mutex> lock(cache_mu_);
        return units_;
    }
    void store_units(std::vector<RatVec> u) const {
        std::lock_guard<std::mutex> lock(cache_mu_);
        units_ = std::move(u);
    }

    // Generic per-field memo used by higher layers (prime factorisations etc.).
    std::shared_ptr<void> memo_get(const std::string& key) const {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = memo_.find(key);
        return it == memo_.end() ? nullptr : it->second;
    }
    void memo_put(const std::string& key, std::shared_ptr<void> v) const {
        std::lock_guard<std::mutex> lock(cache_mu_);
        memo_.emplace(key, std::move(v));
    }

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

private:
    Field() = default;
    void finish();

    int n_ = 0;
    IntVec f_;
    RatMat basis_, basis_inv_;
    Int disc_, poly_disc_;
    std::vector<IntVec> mult_;
    std::vector<double> roots_d_;
    std::vector<RatMat> autos_;
    Int quad_m_;

    mutable std::mutex cache_mu_;
    mutable std::map<mpfr_prec_t, std::vector<std::vector<Real>>> value_cache_;
    mutable std::optional<std::vector<RatVec>> units_;
    mutable std::map<std::string, std::shared_ptr<void>> memo_;
};

Int poly_discriminant(const IntVec& f);

bool is_totally_negative(const Elt& x);
bool is_totally_positive(const Elt& x);

struct SquareOptions {
    // Cap on the bit size of the reconstruction target before giving up.
    unsigned max_bits = 4096;
};
std::optional<Elt> is_square(const Elt& x, const SquareOptions& opt = {});

// Fundamental unit eps0 > 1 of a real quadratic field (continued fractions).
Elt fundamental_unit(const FieldPtr& F);
Elt fundamental_totally_positive_unit(const FieldPtr& F);
// Multiplicatively independent units generating O_F^x modulo torsion; for
// degree 3 found by bounded search (least regulator pair).
std::vector<Elt> unit_generators(const FieldPtr& F);

}  // namespace cmf
