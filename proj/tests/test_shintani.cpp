#include <doctest.h>

#include "cmf/shintani.hpp"

#include <map>

using namespace cmf;

namespace {

CMExtension example() {
    auto F = Field::quadratic(2);
    return CMExtension::make(F->from_surd(-5, -2));
}

// z = -m + (4m + n - 1)(6 + sqrt 2)/17
Elt z_of(const FieldPtr& F, long m, long n) {
    return F->from_surd(-m, 0) + F->from_surd(Rat(6, 17), Rat(1, 17)) * Rat(4 * m + n - 1);
}

}  // namespace

TEST_CASE("B2 polynomial") {
    CHECK(bernoulli2(0) == Rat(1, 6));
    CHECK(bernoulli2(1) == Rat(1, 6));
    CHECK(bernoulli2(Rat(1, 2)) == Rat(-1, 12));
}

TEST_CASE("Shintani set of the unit ideal") {
    auto F = Field::quadratic(2);
    auto eps = fundamental_totally_positive_unit(F);
    auto S = shintani_set(F, eps, Ideal::unit(F));
    REQUIRE(S.size() == 2);  // [O_F : Z + Z eps] = 2
    CHECK(S[0].z == F->from_surd(2, 1));
    CHECK(S[0].x == Rat(1, 2));
    CHECK(S[0].y == Rat(1, 2));
    CHECK(S[1].z == F->one());
}

TEST_CASE("Shintani set and characters for Q(sqrt 2)(sqrt(-5 - 2 sqrt 2))") {
    auto E = example();
    auto T = character_table(E);
    REQUIRE(T.rows.size() == 32);
    CHECK(E.F->to_surd(T.eps) == std::pair<Rat, Rat>(3, 2));
    CHECK(T.sign_sum() == 0);
    CHECK(T.bernoulli_sum() == Rat(4, 17));

    // chi from PARI: product over primes of D<z> of the splitting type in E/F
    const std::map<std::pair<long, long>, int> chi{
        {{0, 2}, 1},  {{0, 3}, 1},   {{0, 4}, -1}, {{1, 1}, 1},  {{1, 2}, -1}, {{1, 3}, -1}, {{1, 4}, -1},
        {{2, 1}, 1},  {{2, 2}, 1},   {{2, 3}, -1}, {{2, 4}, -1}, {{3, 1}, -1}, {{3, 2}, 1},  {{3, 3}, -1},
        {{3, 4}, 1},  {{4, 1}, 1},   {{4, 3}, 1},  {{5, 0}, 1},  {{5, 1}, -1}, {{5, 2}, 1},  {{5, 3}, -1},
        {{6, 0}, -1}, {{6, 1}, -1},  {{6, 2}, 1},  {{6, 3}, 1},  {{7, 0}, -1}, {{7, 1}, -1}, {{7, 2}, -1},
        {{7, 3}, 1},  {{8, 0}, -1},  {{8, 1}, 1},  {{8, 2}, 1}};
    int matched = 0;
    for (auto& [mn, c] : chi) {
        Elt z = z_of(E.F, mn.first, mn.second);
        for (auto& row : T.rows)
            if (row.point.z == z) {
                CHECK(row.sign == c);
                ++matched;
            }
    }
    CHECK(matched == 32);

    for (auto& row : T.rows) {
        CHECK(row.point.x > 0);
        CHECK(row.point.x <= 1);
        CHECK(row.point.y >= 0);
        CHECK(row.point.y < 1);
        CHECK(row.point.z == E.F->one() * row.point.x + T.eps * row.point.y);
        CHECK(row.point.ideal_part == E.rel_disc * row.point.z);
        CHECK(is_coprime(row.point.ideal_part, E.rel_disc));
    }
}

TEST_CASE("Hecke character on primes") {
    auto E = example();
    auto F = E.F;
    CHECK(hecke_char(E, Ideal::unit(F)) == 1);
    CHECK(hecke_char(E, prime_by_label(F, "2").ideal) == 1);
    CHECK(hecke_char(E, prime_by_label(F, "3").ideal) == -1);
    CHECK(hecke_char(E, prime_by_label(F, "7a").ideal) == -1);
    CHECK(hecke_char(E, prime_by_label(F, "7b").ideal) == 1);
    CHECK(hecke_char(E, prime_by_label(F, "17b").ideal) == -1);
    // multiplicative
    auto A = prime_by_label(F, "7a").ideal, B = prime_by_label(F, "3").ideal;
    CHECK(hecke_char(E, A * B) == hecke_char(E, A) * hecke_char(E, B));
    CHECK(hecke_char(E, A * A) == 1);
}

TEST_CASE("serial and parallel Shintani sets agree") {
    auto E = example();
    auto eps = fundamental_totally_positive_unit(E.F);
    const Ideal& D = E.rel_disc;
    auto a = shintani_set(E.F, eps, D, 4);
    auto b = shintani_set_serial(E.F, eps, D);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].z == b[i].z);
}
