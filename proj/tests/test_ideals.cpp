#include <doctest.h>

#include "cmf/ideals.hpp"

#include <random>

using namespace cmf;

namespace {

int total_degree(const std::vector<std::pair<PrimeIdeal, int>>& fac) {
    int s = 0;
    for (auto& [P, e] : fac) s += P.f * e;
    return s;
}

}  // namespace

TEST_CASE("prime decomposition in Q(sqrt 2)") {
    auto F = Field::quadratic(2);
    auto f2 = factor_rational_prime(F, 2);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].second == 2);
    CHECK(f2[0].first.f == 1);

    auto f3 = factor_rational_prime(F, 3);
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].first.f == 2);
    CHECK(f3[0].first.ideal == Ideal::principal(F->from_surd(3, 0)));

    // PARI: 7 = (7, 3 + sqrt 2)(7, -3 + sqrt 2)
    auto f7 = factor_rational_prime(F, 7);
    REQUIRE(f7.size() == 2);
    CHECK(f7[0].first.label == "7a");
    CHECK(f7[1].first.label == "7b");
    CHECK(f7[0].first.ideal * f7[1].first.ideal == Ideal::principal(F->from_surd(7, 0)));
    bool found = false;
    for (auto& [P, e] : f7) found = found || P.ideal.contains(F->from_surd(3, 1));
    CHECK(found);
    CHECK(prime_by_label(F, "7b") == f7[1].first);
}

TEST_CASE("prime decomposition in the cyclic cubic") {
    auto C = Field::make({-1, -3, 0, 1});
    auto f2 = factor_rational_prime(C, 2);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].first.f == 3);
    auto f3 = factor_rational_prime(C, 3);
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].second == 3);
    for (long p : {17L, 19L, 37L}) CHECK(factor_rational_prime(C, p).size() == 3);
    for (long p : {5L, 7L, 11L, 13L}) CHECK(factor_rational_prime(C, p).size() == 1);
    for (long p : {2L, 3L, 5L, 17L, 19L, 23L}) CHECK(total_degree(factor_rational_prime(C, p)) == 3);
}

TEST_CASE("ideal arithmetic and normal form") {
    auto F = Field::quadratic(2);
    Elt d = F->from_surd(-5, -2);
    Ideal D = Ideal::principal(d);
    CHECK(D.norm() == 17);
    CHECK((D * inv(D)).is_unit());
    CHECK(Ideal::principal(-d) == D);
    CHECK(Ideal::principal(d * F->from_surd(3, 2)) == D);  // unit multiple

    auto fac = factor_ideal(D);
    REQUIRE(fac.size() == 1);
    CHECK(fac[0].first.label == "17a");
    CHECK(fac[0].second == 1);
    CHECK(ideal_product(F, fac) == D);

    Ideal Di = inv(D);
    CHECK(Di.norm() == Rat(1, 17));
    CHECK(Di.contains(F->from_surd(Rat(6, 17), Rat(1, 17))));
    CHECK(Di.contains(F->one()));
    CHECK_FALSE(D.contains(F->one()));
    CHECK(Di.contains(D));

    Ideal A = Ideal::principal(F->from_surd(6, 0));
    Ideal B = Ideal::principal(F->from_surd(4, 0));
    CHECK(A + B == Ideal::principal(F->from_surd(2, 0)));
    CHECK(pow(D, 3) == D * D * D);
    CHECK(pow(D, -1) == Di);
    CHECK(is_coprime(D, A));
    CHECK(Ideal::principal(F->from_surd(34, 0)).min_integer() == 34);
}

TEST_CASE("valuations are additive") {
    auto F = Field::quadratic(5);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> c(-40, 40);
    std::vector<PrimeIdeal> primes;
    for (long p : {2L, 3L, 5L, 11L, 19L})
        for (auto& [P, e] : factor_rational_prime(F, p)) primes.push_back(P);
    for (int i = 0; i < 25; ++i) {
        Elt x = Elt::from_ints(F, {c(rng), c(rng)}), y = Elt::from_ints(F, {c(rng), c(rng)});
        if (x.is_zero() || y.is_zero()) continue;
        for (auto& P : primes) CHECK(valuation(x * y, P) == valuation(x, P) + valuation(y, P));
        // the factorisation reproduces the ideal
        CHECK(ideal_product(F, factor_ideal(Ideal::principal(x))) == Ideal::principal(x));
    }
}

TEST_CASE("residue rings") {
    auto F = Field::quadratic(2);
    ResidueRing R(factor_rational_prime(F, 3)[0].first, 1);
    CHECK(R.size() == 9);
    CHECK(R.unit_count() == 8);

    auto P7 = prime_by_label(F, "7b");
    ResidueRing R7(P7, 2);
    CHECK(R7.size() == 49);
    CHECK(R7.unit_count() == 42);
    Elt x = F->from_surd(Rat(1, 5), Rat(1, 5));  // a unit at 7
    auto im = R7.image(x);
    CHECK(valuation(R7.lift(im) - x, P7) >= 2);
    auto inv = R7.inv(im);
    CHECK(R7.mul(im, inv) == R7.one());
    for (std::uint64_t i = 0; i < R7.size(); i += 7) CHECK(R7.index(R7.from_index(i)) == i);
}

TEST_CASE("local behaviour in quadratic extensions") {
    auto F = Field::quadratic(2);
    Elt d = F->from_surd(-5, -2);
    // |d_E| = 1088 = 8^2 * 17
    auto at = [&](const std::string& lbl, const Elt& delta) { return local_quadratic(prime_by_label(F, lbl), delta); };
    CHECK(at("17a", d).type == LocalType::Ramified);
    CHECK(at("17a", d).disc_exponent == 1);
    CHECK(at("2", d).type == LocalType::Split);
    CHECK(at("3", d).type == LocalType::Inert);
    CHECK(at("7a", d).type == LocalType::Inert);
    CHECK(at("7b", d).type == LocalType::Split);
    CHECK(at("17b", d).type == LocalType::Inert);

    // Q(zeta_8): |d_E| = 256 = 8^2 * 4
    Elt m1 = -F->one();
    CHECK(at("2", m1).type == LocalType::Ramified);
    CHECK(at("2", m1).disc_exponent == 2);

    // Q(sqrt 5)(sqrt(-5 + sqrt 5)): |d_E| = 8000 = 5^2 * 320 = 5^2 * 4^3 * 5
    auto F5 = Field::quadratic(5);
    Elt d5 = F5->from_surd(-5, 1);
    CHECK(local_quadratic(factor_rational_prime(F5, 2)[0].first, d5).disc_exponent == 3);
    CHECK(local_quadratic(factor_rational_prime(F5, 5)[0].first, d5).disc_exponent == 1);

    // Q(zeta_12) over Q(sqrt 3): unramified at every finite prime (|d_E| = 144 = 12^2)
    auto F3 = Field::quadratic(3);
    for (long p : {2L, 3L}) CHECK(local_quadratic(factor_rational_prime(F3, p)[0].first, -F3->one()).disc_exponent == 0);
}
