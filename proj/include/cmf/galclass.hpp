#pragma once

#include "cmf/arith.hpp"

#include <string>
#include <vector>

namespace cmf {

enum class GaloisType { C4, V4, D4, A4, S4 };

std::string to_string(GaloisType t);
GaloisType galois_type_from_string(const std::string& s);
int closure_degree(GaloisType t);

// E = Q(sqrt d)(sqrt(a + b sqrt d)), d > 1 squarefree, delta totally negative.
GaloisType classify_quartic_cm(const Int& d, const Rat& a, const Rat& b);

// Monic integral minimal polynomial (c0..c4) of sqrt(c^2 delta) for the least
// c making it integral.
std::vector<Int> cm_quartic_poly(const Int& d, const Rat& a, const Rat& b);

// Exact irreducibility over Q of a monic integer quartic (c0..c4).
bool quartic_irreducible(const std::vector<Int>& f);

// Galois group of the splitting field of a monic irreducible integer quartic.
GaloisType classify_quartic_poly(const std::vector<Int>& f);

// Resolvent cubic y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2), c0..c3.
std::vector<Int> resolvent_cubic(const std::vector<Int>& f);

// Integer roots (with repetition removed) of a monic integer cubic.
std::vector<Int> cubic_integer_roots(const std::vector<Int>& g);

Int weyl_group_order(int g);

// Orbit size of a CM type under the closure group acting on the four CM types.
int reflex_degree_quartic(GaloisType t);

}  // namespace cmf
