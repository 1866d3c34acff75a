#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cmf {

using Int = mpz_class;
using Rat = mpq_class;

Int isqrt(const Int& n);
bool is_square(const Int& n, Int* root = nullptr);
std::optional<Rat> rational_sqrt(const Rat& q);

bool is_prime(const Int& n);
bool is_prime_u64(std::uint64_t n);
Int next_prime(const Int& n);

// Trial division; throws if a cofactor above limit^2 remains composite-unknown.
std::vector<std::pair<Int, int>> factor(const Int& n);
int valuation(const Int& n, const Int& p);

int kronecker(const Int& a, const Int& n);
bool is_fundamental_discriminant(const Int& d);
// Squarefree part with sign: d = s * k^2.
Int squarefree_part(const Int& d);

Int lcm_den(const std::vector<Rat>& v);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
// Inverse of a modulo m (m > 1, gcd(a, m) = 1).
Int invert_mod(const Int& a, const Int& m);
Int pow_int(const Int& b, unsigned long e);
Int floor_div(const Int& a, const Int& b);
Int binomial(unsigned n, unsigned k);
Int factorial(unsigned n);

std::string to_string(const Rat& q);
Rat parse_rat(const std::string& s);

// Bernoulli numbers B_0..B_n (B_1 = -1/2).
std::vector<Rat> bernoulli_numbers(unsigned n);

// Smallest-prime-factor sieve for fast factorisation of small integers.
class SpfSieve {
public:
    explicit SpfSieve(std::uint32_t limit);
    std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size()) - 1; }
    std::vector<std::pair<std::uint32_t, int>> factor(std::uint32_t n) const;
    bool is_prime(std::uint32_t n) const { return n >= 2 && spf_[n] == n; }

private:
    std::vector<std::uint32_t> spf_;
};

}  // namespace cmf
