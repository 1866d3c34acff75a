#pragma once

#include "cmf/ideals.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace cmf {

// v_P(a/b - 1) >= e for P-units a, b.
bool mult_congruent(const Elt& a, const Elt& b, const PrimeIdeal& P, int e);

// 2 v_P(2) + 1.
int square_threshold(const PrimeIdeal& P);

// Integral alpha with F_P(sqrt(alpha)) unramified of degree 2 over F_P.
Elt unramified_quadratic_witness(const PrimeIdeal& P);

struct Congruence {
    Elt target;
    PrimeIdeal prime;
    int exponent = 1;
};

struct SolveOptions {
    int max_rounds = 256;
};

// a with a = target_i (mult.) mod P_i^{e_i} and sign(sigma_j(a)) = signs[j].
Elt approx_solve(const FieldPtr& F, const std::vector<int>& signs, const std::vector<Congruence>& cong,
                 const SolveOptions& opt = {});

struct Modulus {
    std::vector<std::pair<PrimeIdeal, int>> finite;
    bool infinite_all = true;

    Ideal finite_ideal(const FieldPtr& F) const;
};

struct PrincipalOptions {
    // Cap on the number of lattice points visited before giving up.
    long max_points = 20000000;
};

// Generator of I if I is principal, else none. Quadratic fields use the
// continued fraction test; otherwise the search covers a full fundamental
// domain of the unit group acting on generators, so a negative answer is a
// proof either way. Exceeding the point budget raises PrincipalityUndecided.
std::optional<Elt> principal_generator(const Ideal& I, const PrincipalOptions& opt = {});

// Exact principality test for quadratic fields via the continued fraction
// cycle of reduced ideals; cost grows with the regulator, not the unit.
std::optional<Elt> quadratic_generator(const Ideal& I);

// Precomputed unit images modulo a modulus, for repeated ray-class tests.
class RayContext {
public:
    RayContext(const FieldPtr& F, Modulus m);
    ~RayContext();

    const Modulus& modulus() const { return m_; }
    const FieldPtr& field() const { return F_; }

    // b with a = b*bb, b = 1 (mult.) mod m_0 and b totally positive, or none.
    std::optional<Elt> ray_equal(const Ideal& a, const Ideal& bb, const PrincipalOptions& opt = {}) const;
    // Unit u = -1^k0 prod u_i^k_i with u = t at every component and the given signs.
    std::optional<Elt> unit_with_image(const Elt& gamma) const;

    struct Component;

private:
    FieldPtr F_;
    Modulus m_;
    std::vector<Elt> gens_;  // -1 followed by unit generators
    std::vector<std::unique_ptr<Component>> comps_;
};

std::optional<Elt> ray_equal(const Ideal& a, const Ideal& b, const Modulus& m);

// Multiply x by an even power of units so that its embeddings are balanced.
Elt reduce_by_unit_squares(const Elt& x);

}  // namespace cmf
