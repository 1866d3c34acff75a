#include <doctest.h>

#include "cmf/cmbuild.hpp"
#include "cmf/error.hpp"

using namespace cmf;

namespace {

CMInput base_input() {
    auto F = Field::quadratic(2);
    CMInput in;
    in.F = F;
    in.p = 7;
    in.P = prime_by_label(F, "7a");
    return in;
}

std::string failure_kind(const CMInput& in) {
    try {
        construct_cm(in);
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

}  // namespace

TEST_CASE("CM extensions and their discriminants") {
    auto F = Field::quadratic(2);
    auto E = CMExtension::make(F->from_surd(-5, -2));
    CHECK(E.abs_disc == 1088);
    CHECK(E.rel_disc.norm() == 17);
    CHECK(E.degree() == 4);
    CHECK(verify_non_galois(E));

    auto Z8 = CMExtension::make(-F->one());
    CHECK(Z8.abs_disc == 256);
    CHECK_FALSE(verify_non_galois(Z8));

    CHECK_THROWS_AS(CMExtension::make(F->from_surd(5, 2)), Error);  // not totally negative
}

TEST_CASE("construction over Q(sqrt 2), p = 7") {
    CMInput in = base_input();
    auto c = construct_cm(in);
    CHECK(c.q.label == "23b");
    // PARI: nfdisc(x^4 + 26 x^2 + 161) = 10304
    CHECK(c.E.abs_disc == 10304);
    CHECK(Ideal::principal(c.delta) == in.P.ideal * c.q.ideal);
    CHECK(is_totally_negative(c.delta));
    CHECK(c.e == 5);
    auto report = verify_construction(c.E, in, c.q);
    for (auto& k : report.checks) {
        CAPTURE(k.name);
        CAPTURE(k.detail);
        CHECK(k.pass);
    }
    CHECK(report.all_pass());
    CHECK(verify_non_galois(c.E));
}

TEST_CASE("split, inert and ramified side conditions") {
    CMInput in = base_input();
    auto F = in.F;
    in.U2 = {prime_by_label(F, "5")};
    in.R = {prime_by_label(F, "17a")};
    auto c = construct_cm(in);
    CHECK(local_quadratic(in.U2[0], c.delta).type == LocalType::Inert);
    CHECK(local_quadratic(in.R[0], c.delta).type == LocalType::Ramified);
    CHECK(Ideal::principal(c.delta) == in.P.ideal * c.q.ideal * in.R[0].ideal);
    CHECK(verify_construction(c.E, in, c.q).all_pass());

    CMInput in2 = in;
    in2.R.clear();
    in2.U2.clear();
    in2.U1 = {prime_by_label(F, "5")};
    auto c2 = construct_cm(in2);
    CHECK(local_quadratic(in2.U1[0], c2.delta).type == LocalType::Split);
}

TEST_CASE("families come out in increasing norm") {
    CMInput in = base_input();
    auto fam = construct_cm_family(in, 4);
    REQUIRE(fam.size() == 4);
    for (std::size_t i = 1; i < fam.size(); ++i) CHECK(fam[i - 1].q.p <= fam[i].q.p);
    CHECK(fam[0].q == construct_cm(in).q);
    for (auto& c : fam) CHECK(verify_construction(c.E, in, c.q).all_pass());
}

TEST_CASE("cyclic cubic base field") {
    auto C = Field::make({-1, -3, 0, 1});
    CMInput in;
    in.F = C;
    in.p = 17;
    in.P = factor_rational_prime(C, 17)[0].first;
    auto c = construct_cm(in);
    CHECK(verify_construction(c.E, in, c.q).all_pass());
    CHECK(verify_non_galois(c.E));
    CHECK(c.E.degree() == 6);
}

TEST_CASE("precondition failures") {
    CMInput in = base_input();
    auto F = in.F;

    CMInput overlap = in;
    overlap.R = {prime_by_label(F, "17a")};
    overlap.U1 = {prime_by_label(F, "17a")};
    CHECK(failure_kind(overlap) == "PreconditionFailed");

    CMInput inert_p = in;
    inert_p.p = 3;
    inert_p.P = prime_by_label(F, "3");
    CHECK(failure_kind(inert_p) == "PreconditionFailed");

    CMInput two = in;
    two.U1 = {prime_by_label(F, "2")};
    CHECK(failure_kind(two) == "PreconditionFailed");

    CMInput wrong = in;
    wrong.P = prime_by_label(F, "17a");
    CHECK(failure_kind(wrong) == "PreconditionFailed");

    CMInput tiny = in;
    tiny.scan_bound = 20;
    CHECK(failure_kind(tiny) == "NoPrimeFoundInBound");

    auto N = Field::make({-2, -4, 0, 1});  // non-Galois cubic, disc 148
    CMInput ng;
    ng.F = N;
    ng.p = 0;
    for (long p = 3; ng.p == 0; p += 2) {
        if (!is_prime(Int(p)) || kronecker(N->disc(), Int(p)) != 1) continue;
        auto fac = factor_rational_prime(N, p);
        if (fac.size() == 3) {
            ng.p = p;
            ng.P = fac[0].first;
        }
    }
    CHECK(failure_kind(ng) == "PreconditionFailed");
}
