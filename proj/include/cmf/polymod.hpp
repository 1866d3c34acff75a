#pragma once

#include "cmf/arith.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace cmf::fp {

// Dense polynomial over F_p, coefficients low to high, no trailing zeros.
using Poly = std::vector<std::int64_t>;

Poly reduce(const std::vector<Int>& f, std::int64_t p);
void trim(Poly& f);
int deg(const Poly& f);
Poly add(const Poly& a, const Poly& b, std::int64_t p);
Poly sub(const Poly& a, const Poly& b, std::int64_t p);
Poly mul(const Poly& a, const Poly& b, std::int64_t p);
// quotient and remainder
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, std::int64_t p);
Poly gcd(Poly a, Poly b, std::int64_t p);
Poly make_monic(const Poly& a, std::int64_t p);
Poly powmod(const Poly& base, Int e, const Poly& mod, std::int64_t p);
std::int64_t inv_mod(std::int64_t a, std::int64_t p);
std::int64_t pow_mod(std::int64_t a, Int e, std::int64_t p);

// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
std::vector<std::pair<Poly, int>> factor(const Poly& f, std::int64_t p);

}  // namespace cmf::fp
