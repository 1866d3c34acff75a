#include <doctest.h>

#include "cmf/galclass.hpp"

using namespace cmf;

using V = std::vector<Int>;

// Galois groups of these polynomials as reported by PARI's polgalois.
TEST_CASE("Galois group of integer quartics") {
    CHECK(classify_quartic_poly(V{17, 0, 10, 0, 1}) == GaloisType::D4);
    CHECK(classify_quartic_poly(V{1, 0, 0, 0, 1}) == GaloisType::V4);
    CHECK(classify_quartic_poly(V{1, 1, 1, 1, 1}) == GaloisType::C4);
    CHECK(classify_quartic_poly(V{1, 1, 0, 0, 1}) == GaloisType::S4);
    CHECK(classify_quartic_poly(V{-2, 0, 0, 0, 1}) == GaloisType::D4);
    CHECK(classify_quartic_poly(V{5, 4, 3, 2, 1}) == GaloisType::S4);
    CHECK(classify_quartic_poly(V{12, 8, 0, 0, 1}) == GaloisType::A4);
}

TEST_CASE("quartic CM fields from (d, a, b)") {
    CHECK(classify_quartic_cm(2, -5, -2) == GaloisType::D4);
    CHECK(classify_quartic_cm(5, Rat(-5, 2), Rat(-1, 2)) == GaloisType::C4);  // Q(zeta_5)
    CHECK(classify_quartic_cm(2, -1, 0) == GaloisType::V4);                   // Q(zeta_8)
    CHECK(classify_quartic_cm(3, -1, 0) == GaloisType::V4);                   // Q(zeta_12)
    CHECK(cm_quartic_poly(2, -5, -2) == V{17, 0, 10, 0, 1});
    CHECK(cm_quartic_poly(5, Rat(-5, 2), Rat(-1, 2)) == V{5, 0, 5, 0, 1});
}

TEST_CASE("resolvent cubic and its integer roots") {
    // y^3 - 10 y^2 - 68 y + 680 = (y - 10)(y^2 - 68)
    V g = resolvent_cubic(V{17, 0, 10, 0, 1});
    CHECK(g == V{680, -68, -10, 1});
    CHECK(cubic_integer_roots(g) == V{10});
    CHECK(cubic_integer_roots(V{-6, 11, -6, 1}) == V{1, 2, 3});
    CHECK(cubic_integer_roots(V{1, 0, 0, 1}) == V{-1});
}

TEST_CASE("irreducibility") {
    CHECK_FALSE(quartic_irreducible(V{4, 0, 0, 0, 1}));  // (x^2 + 2x + 2)(x^2 - 2x + 2)
    CHECK_FALSE(quartic_irreducible(V{1, 0, -3, 0, 1}));
    CHECK_FALSE(quartic_irreducible(V{0, 1, 0, 0, 1}));
    CHECK(quartic_irreducible(V{17, 0, 10, 0, 1}));
    CHECK(quartic_irreducible(V{1, 1, 1, 1, 1}));
}

TEST_CASE("group orders, names and reflex degrees") {
    CHECK(weyl_group_order(2) == 8);
    CHECK(weyl_group_order(3) == 48);
    CHECK(closure_degree(GaloisType::D4) == 8);
    CHECK(closure_degree(GaloisType::C4) == 4);
    CHECK(closure_degree(GaloisType::S4) == 24);
    CHECK(reflex_degree_quartic(GaloisType::D4) == 4);
    CHECK(reflex_degree_quartic(GaloisType::C4) == 4);
    CHECK(reflex_degree_quartic(GaloisType::V4) == 2);
    for (auto t : {GaloisType::C4, GaloisType::V4, GaloisType::D4, GaloisType::A4, GaloisType::S4})
        CHECK(galois_type_from_string(to_string(t)) == t);
}
