#include <doctest.h>

#include "cmf/census.hpp"
#include "cmf/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace cmf;

namespace {

struct RelDiscCase {
    long d;
    Rat a, b;
    long norm;
};

}  // namespace

// Norms from PARI: nfdisc(minimal polynomial of sqrt(delta)) / d_F^2.
TEST_CASE("relative discriminant norms") {
    const std::vector<RelDiscCase> cases{
        {2, -5, -2, 17},
        {2, -1, 0, 4},
        {2, -69, 22, 3793},
        {2, -75, -7, 88432},
        {2, -65, 28, 10628},
        {2, -75, 6, 22212},
        {2, -110, 5, 192800},
        {5, Rat(-71, 2), Rat(-25, 2), 7664},
        {5, -27, -6, 8784},
        {5, -8, 2, 704},
        {5, -38, -12, 11584},
        {5, Rat(-89, 2), Rat(1, 2), 31664},
        {5, -5, 1, 320},
        {13, -106, -27, 28144},
        {3, -105, 5, 175200},
        {3, -1, 0, 1},
    };
    for (auto& c : cases) {
        auto F = Field::quadratic(c.d);
        Elt delta = F->from_surd(c.a, c.b);
        CAPTURE(c.d);
        CAPTURE(c.norm);
        CHECK(relative_discriminant_norm(F, delta) == c.norm);
        CHECK(relative_discriminant(F, delta).norm() == c.norm);
    }
}

TEST_CASE("fundamental discriminants for the census") {
    auto Ds = census_discriminants(200);
    CHECK(Ds == std::vector<long>{5, 8, 12, 13});
}

// Quartic CM fields with |d_E| <= 3000, found with PARI by running over
// x^4 + A x^2 + B and reducing with polredabs.
TEST_CASE("small census against an independent enumeration") {
    auto r = enumerate_quartic_cm(3000);
    CHECK(r.total == 26);
    CHECK(r.count(GaloisType::D4) == 6);
    CHECK(r.count(GaloisType::C4) == 3);
    CHECK(r.count(GaloisType::V4) == 17);
    std::vector<long> discs;
    for (auto& rec : r.records) discs.push_back(rec.dE.get_si());
    CHECK(discs == std::vector<long>{125,  144,  225,  256,  400,  441,  576,  576,  784,  1025, 1088, 1089, 1225,
                                     1521, 1525, 1600, 1936, 2048, 2197, 2304, 2304, 2312, 2601, 2704, 2725, 2873});
}

TEST_CASE("census at 10^4") {
    auto r = enumerate_quartic_cm(10000);
    CHECK(r.count(GaloisType::D4) == 27);
    CHECK(r.total == 72);
    auto s = enumerate_quartic_cm_serial(10000);
    CHECK(s.records == r.records);

    std::ostringstream os;
    write_census_csv(os, r);
    std::string csv = os.str();
    CHECK(csv.rfind("d_E,d_F,a,b,galois,weyl\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 73);
}

TEST_CASE("census checkpoints resume to the same result") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "cmf_census_checkpoint_test.json";
    fs::remove(path);
    CensusOptions opt;
    opt.checkpoint = path.string();
    long calls = 0;
    opt.progress = [&](long) { ++calls; };
    auto a = enumerate_quartic_cm(5000, opt);
    CHECK(fs::exists(path));
    CHECK(calls == static_cast<long>(census_discriminants(5000).size()));
    calls = 0;
    auto b = enumerate_quartic_cm(5000, opt);
    CHECK(calls == 0);
    CHECK(a.records == b.records);
    CHECK_THROWS_AS(enumerate_quartic_cm(6000, opt), Error);
    fs::remove(path);
}

TEST_CASE("Weil region matches a brute-force root test") {
    for (long q : {2L, 3L, 4L, 5L, 8L, 9L, 16L, 27L}) {
        long brute = 0, mismatch = 0;
        const long double M = 2 * std::sqrt(static_cast<long double>(q)) + 1e-12L;
        for (long a = -40; a <= 40; ++a)
            for (long b = -200; b <= 200; ++b) {
                long double c = b - 2 * q, disc = static_cast<long double>(a) * a - 4 * c;
                bool in = false;
                if (disc >= 0) {
                    long double s = std::sqrt(disc);
                    in = (-a - s) / 2 >= -M && (-a + s) / 2 <= M;
                }
                brute += in;
                mismatch += in != in_weil_region(q, a, b);
            }
        CAPTURE(q);
        CHECK(mismatch == 0);
        CHECK(static_cast<long>(weil_region(q).size()) == brute);
    }
}

TEST_CASE("Weil census rows") {
    auto r = weil_census_row(2, 6);
    CHECK(r.q == 64);
    CHECK(r.kept <= r.region);
    long sum = 0;
    for (auto& [t, n] : r.counts) sum += n;
    CHECK(sum == r.kept);

    std::vector<WeilRecord> par, ser;
    auto a = weil_census_row(3, 5, 0, &par);
    auto b = weil_census_row_serial(3, 5, &ser);
    CHECK(a.kept == b.kept);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].a == ser[i].a);
        CHECK(par[i].b == ser[i].b);
        CHECK(par[i].galois == ser[i].galois);
    }

    // x^4 + a x^3 + b x^2 + a q x + q^2 with q = 2, (a, b) = (0, 0): x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
    CHECK(in_weil_region(2, 0, 0));
    bool listed = false;
    std::vector<WeilRecord> recs;
    weil_census_row(2, 1, 0, &recs);
    for (auto& w : recs) listed = listed || (w.a == 0 && w.b == 0 && w.irreducible);
    CHECK_FALSE(listed);
}
