#include <doctest.h>

#include "cmf/rayclass.hpp"

using namespace cmf;

namespace {

// Exhaustive search over +-eps^k x, k below the order bound of the unit image.
bool brute_ray_trivial(const Elt& x, const PrimeIdeal& P, int e, int kmax) {
    const FieldPtr& F = x.field();
    Elt eps = fundamental_unit(F);
    Elt u = F->one();
    for (int k = 0; k < kmax; ++k, u = u * eps)
        for (int s : {1, -1}) {
            Elt y = u * Rat(s) * x;
            if (is_totally_positive(y) && mult_congruent(y, F->one(), P, e)) return true;
        }
    return false;
}

}  // namespace

TEST_CASE("multiplicative congruence and thresholds") {
    auto F = Field::quadratic(2);
    auto P2 = factor_rational_prime(F, 2)[0].first;
    auto P3 = factor_rational_prime(F, 3)[0].first;
    CHECK(mult_congruent(F->from_surd(7, 0), F->one(), P3, 1));
    CHECK_FALSE(mult_congruent(F->from_surd(1, 1), F->one(), P2, 2));
    CHECK(mult_congruent(F->from_surd(5, 0), F->one(), P2, 4));
    CHECK_FALSE(mult_congruent(F->from_surd(5, 0), F->one(), P2, 5));
    CHECK(square_threshold(P2) == 5);
    CHECK(square_threshold(P3) == 1);
    CHECK(square_threshold(factor_rational_prime(Field::quadratic(5), 2)[0].first) == 3);
}

TEST_CASE("unramified quadratic witnesses are inert") {
    auto F = Field::quadratic(2);
    for (long p : {2L, 3L, 7L, 17L})
        for (auto& [P, e] : factor_rational_prime(F, p))
            CHECK(local_quadratic(P, unramified_quadratic_witness(P)).type == LocalType::Inert);
    auto C = Field::make({-1, -3, 0, 1});
    for (long p : {2L, 3L, 17L})
        for (auto& [P, e] : factor_rational_prime(C, p))
            CHECK(local_quadratic(P, unramified_quadratic_witness(P)).type == LocalType::Inert);
}

TEST_CASE("approximation with signs") {
    auto F = Field::quadratic(2);
    auto P2 = factor_rational_prime(F, 2)[0].first;
    auto P7 = prime_by_label(F, "7a");
    Elt w7 = unramified_quadratic_witness(P7);
    Elt a = approx_solve(F, {1, -1}, {{F->one(), P2, 5}, {w7, P7, 3}});
    CHECK(mult_congruent(a, F->one(), P2, 5));
    CHECK(mult_congruent(a, w7, P7, 3));
    CHECK(a.sign_at(0) == 1);
    CHECK(a.sign_at(1) == -1);

    auto C = Field::make({-1, -3, 0, 1});
    auto Q = factor_rational_prime(C, 17)[1].first;
    Elt b = approx_solve(C, {-1, -1, -1}, {{C->one(), Q, 2}});
    CHECK(is_totally_negative(b));
    CHECK(mult_congruent(b, C->one(), Q, 2));
}

TEST_CASE("principal generators") {
    auto F = Field::quadratic(2);
    auto P17 = prime_by_label(F, "17a");
    auto g = principal_generator(P17.ideal);
    REQUIRE(g);
    CHECK(Ideal::principal(*g) == P17.ideal);

    // Q(sqrt 10) has class number 2: x^2 - 10 y^2 = +-2, +-3 have no solutions
    auto F10 = Field::quadratic(10);
    for (long p : {2L, 3L})
        for (auto& [P, e] : factor_rational_prime(F10, p)) CHECK_FALSE(quadratic_generator(P.ideal));
    auto sq = factor_rational_prime(F10, 3)[0].first.ideal;
    auto g2 = quadratic_generator(sq * sq);
    REQUIRE(g2);
    CHECK(Ideal::principal(*g2) == sq * sq);

    // Q(sqrt 79): class number 3, so the cube of any prime is principal
    auto F79 = Field::quadratic(79);
    int nonprincipal = 0;
    for (long p : {3L, 5L, 7L, 13L})
        for (auto& [P, e] : factor_rational_prime(F79, p)) {
            nonprincipal += !quadratic_generator(P.ideal);
            CHECK(quadratic_generator(pow(P.ideal, 3)));
        }
    CHECK(nonprincipal > 0);

    // the cubic search agrees on principal ideals
    auto C = Field::make({-1, -3, 0, 1});
    for (auto& [P, e] : factor_rational_prime(C, 19)) {
        auto h = principal_generator(P.ideal);
        REQUIRE(h);
        CHECK(Ideal::principal(*h) == P.ideal);
    }
}

TEST_CASE("ray class equality against exhaustive search") {
    auto F = Field::quadratic(2);
    auto P5 = factor_rational_prime(F, 5)[0].first;
    Modulus m;
    m.finite = {{P5, 2}};
    Ideal O = Ideal::unit(F);

    CHECK_FALSE(ray_equal(Ideal::principal(F->from_surd(3, 1)), O, m));
    CHECK_FALSE(brute_ray_trivial(F->from_surd(3, 1), P5, 2, 1300));

    Elt x = F->from_surd(51, 25);  // totally positive, = 1 mod 25
    auto b = ray_equal(Ideal::principal(x), O, m);
    REQUIRE(b);
    CHECK(Ideal::principal(*b) == Ideal::principal(x));
    CHECK(is_totally_positive(*b));
    CHECK(mult_congruent(*b, F->one(), P5, 2));

    for (long a = 1; a <= 12; ++a)
        for (long c = -3; c <= 3; ++c) {
            Elt y = F->from_surd(a, c);
            if (y.is_zero() || valuation(y, P5) != 0) continue;
            CHECK(bool(ray_equal(Ideal::principal(y), O, m)) == brute_ray_trivial(y, P5, 2, 1300));
        }
}

TEST_CASE("unit-square reduction keeps the ideal and signs") {
    auto F = Field::quadratic(2);
    Elt big = F->from_surd(3, 2).pow(37) * F->from_surd(-5, -2);
    Elt r = reduce_by_unit_squares(big);
    CHECK(F->to_surd(r) == std::pair<Rat, Rat>(-5, -2));
    CHECK(Ideal::principal(r) == Ideal::principal(big));
}
