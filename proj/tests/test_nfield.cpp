#include <doctest.h>

#include "cmf/error.hpp"
#include "cmf/nfield.hpp"

#include <cmath>
#include <random>

using namespace cmf;

TEST_CASE("quadratic fields: discriminant and integral basis") {
    auto F2 = Field::quadratic(2);
    CHECK(F2->disc() == 8);
    CHECK(F2->degree() == 2);
    CHECK(F2->is_galois());

    auto F5 = Field::quadratic(5);
    CHECK(F5->disc() == 5);
    // basis 1, (1 + sqrt 5)/2
    auto [a, b] = F5->to_surd(F5->basis_elt(1));
    CHECK(a == Rat(1, 2));
    CHECK(b == Rat(1, 2));

    CHECK(Field::quadratic(3)->disc() == 12);
    CHECK(Field::quadratic(13)->disc() == 13);
}

TEST_CASE("fundamental units") {
    auto F2 = Field::quadratic(2);
    auto u = fundamental_unit(F2);
    CHECK(F2->to_surd(u) == std::pair<Rat, Rat>(1, 1));
    CHECK(u.norm() == -1);
    auto e = fundamental_totally_positive_unit(F2);
    CHECK(F2->to_surd(e) == std::pair<Rat, Rat>(3, 2));
    CHECK(is_totally_positive(e));
    CHECK(e.approx(0) > e.approx(1));

    auto F5 = Field::quadratic(5);
    auto e5 = fundamental_totally_positive_unit(F5);
    CHECK(F5->to_surd(e5) == std::pair<Rat, Rat>(Rat(3, 2), Rat(1, 2)));

    auto F3 = Field::quadratic(3);
    CHECK(F3->to_surd(fundamental_unit(F3)) == std::pair<Rat, Rat>(2, 1));
}

TEST_CASE("cyclic cubic x^3 - 3x - 1") {
    auto C = Field::make({-1, -3, 0, 1});
    CHECK(C->disc() == 81);
    CHECK(C->is_galois());
    CHECK(C->automorphisms().size() == 3);
    auto r = C->roots_approx();
    REQUIRE(r.size() == 3);
    CHECK(r[0] > r[1]);
    CHECK(r[1] > r[2]);

    // regulator from PARI: 0.849287450646192528...
    auto us = unit_generators(C);
    REQUIRE(us.size() == 2);
    for (auto& u : us) CHECK(abs(u.norm()) == 1);
    double m[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] = std::log(std::fabs(us[static_cast<std::size_t>(i)].approx(j)));
    CHECK(std::fabs(std::fabs(m[0][0] * m[1][1] - m[0][1] * m[1][0]) - 0.8492874506461925) < 1e-10);

    // automorphisms permute the roots
    auto th = C->theta();
    for (auto& s : C->automorphisms()) {
        Elt img = C->apply(s, th);
        CHECK(img.charpoly() == th.charpoly());
    }
}

TEST_CASE("non totally real input is rejected") {
    for (IntVec f : {IntVec{1, 0, 1}, IntVec{-54, 0, 0, 1}, IntVec{-8, -6, 0, 1}}) {
        try {
            Field::make(f);
            FAIL("expected NotTotallyReal");
        } catch (const Error& e) {
            CHECK(e.kind() == "NotTotallyReal");
        }
    }
}

TEST_CASE("element arithmetic, norm, trace, charpoly") {
    auto F = Field::quadratic(2);
    Elt d = F->from_surd(-5, -2);
    CHECK(d.norm() == 17);
    CHECK(d.trace() == -10);
    CHECK(d.charpoly() == RatVec{17, 10, 1});
    CHECK(is_totally_negative(d));
    CHECK(d.sign_at(0) == -1);
    CHECK(d.sign_at(1) == -1);
    CHECK(d * d.inverse() == F->one());
    CHECK((d / d) == F->one());
    CHECK(d.pow(3) == d * d * d);
    CHECK(d.pow(-2) * d.pow(2) == F->one());
    Elt half = F->from_surd(Rat(1, 2), 0);
    CHECK_FALSE(half.is_integral());
    CHECK(half.denominator() == 2);
    CHECK(std::fabs(d.approx(0) - (-5 - 2 * std::sqrt(2.0))) < 1e-12);
    CHECK(std::fabs(d.approx(1) - (-5 + 2 * std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("embeddings at high precision") {
    auto F = Field::quadratic(2);
    Elt e = F->from_surd(3, 2);
    Real v = e.embed(0, 256);
    Real expect = Real(3L, 256) + 2 * sqrt(Real(2L, 256));
    CHECK(abs(v - expect) < ldexp_one(-250, 256));
}

TEST_CASE("square detection") {
    auto F = Field::quadratic(2);
    auto s = is_square(F->from_surd(17, 12));
    REQUIRE(s);
    CHECK((*s) * (*s) == F->from_surd(17, 12));
    CHECK(is_square(F->from_surd(3, 2)));  // (1 + sqrt 2)^2
    CHECK_FALSE(is_square(F->from_surd(1, 1)));
    CHECK_FALSE(is_square(F->from_surd(-1, 0)));

    auto C = Field::make({-1, -3, 0, 1});
    Elt x = C->theta() + Rat(2);
    auto r = is_square(x * x);
    REQUIRE(r);
    CHECK((*r) * (*r) == x * x);
    CHECK_FALSE(is_square(C->theta() * C->theta() * (C->theta() + Rat(3))));
}

TEST_CASE("norm is multiplicative on random elements") {
    std::mt19937 rng(11);
    auto C = Field::make({-1, -3, 0, 1});
    std::uniform_int_distribution<int> d(-9, 9);
    for (int i = 0; i < 30; ++i) {
        Elt x = Elt::from_ints(C, {d(rng), d(rng), d(rng)});
        Elt y = Elt::from_ints(C, {d(rng), d(rng), d(rng)});
        CHECK((x * y).norm() == x.norm() * y.norm());
        CHECK((x + y).trace() == x.trace() + y.trace());
        if (!x.is_zero()) CHECK(x * x.inverse() == C->one());
    }
}
