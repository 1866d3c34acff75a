#include "cmf/census.hpp"
#include "cmf/error.hpp"

#include <algorithm>

namespace cmf {

namespace {

// Primes that can ramify: those dividing delta (numerator or denominator) and 2.
std::vector<PrimeIdeal> candidate_primes(const FieldPtr& F, const Elt& delta) {
    std::vector<PrimeIdeal> out;
    for (auto& [P, k] : factor_ideal(Ideal::principal(delta))) out.push_back(P);
    for (auto& [P, e] : factor_rational_prime(F, Int(2)))
        if (std::find(out.begin(), out.end(), P) == out.end()) out.push_back(P);
    return out;
}

void check_nonsquare(const Elt& delta) {
    if (delta.is_zero()) throw Error("ZeroElement", "delta must be nonzero");
    if (is_totally_negative(delta)) return;
    if (is_square(delta)) throw Error("DeltaSquare", "delta is a square in F");
}

}  // namespace

Ideal relative_discriminant(const FieldPtr& F, const Elt& delta) {
    check_nonsquare(delta);
    Ideal r = Ideal::unit(F);
    for (const PrimeIdeal& P : candidate_primes(F, delta)) {
        auto lq = local_quadratic(P, delta);
        if (lq.disc_exponent > 0) r = r * pow(P.ideal, lq.disc_exponent);
    }
    return r;
}

Int relative_discriminant_norm(const FieldPtr& F, const Elt& delta) {
    check_nonsquare(delta);
    Int N = 1;
    for (const PrimeIdeal& P : candidate_primes(F, delta)) {
        auto lq = local_quadratic(P, delta);
        if (lq.disc_exponent > 0) N *= pow_int(P.norm(), static_cast<unsigned long>(lq.disc_exponent));
    }
    return N;
}

}  // namespace cmf
