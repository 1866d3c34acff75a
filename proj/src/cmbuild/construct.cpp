#include "cmf/census.hpp"
#include "cmf/cmbuild.hpp"
#include "cmf/error.hpp"

#include <algorithm>

namespace cmf {

namespace {

bool contains(const std::vector<PrimeIdeal>& S, const PrimeIdeal& P) {
    return std::find(S.begin(), S.end(), P) != S.end();
}

void add_unique(std::vector<PrimeIdeal>& S, const PrimeIdeal& P) {
    if (!contains(S, P)) S.push_back(P);
}

void fail(const std::string& msg) { throw Error("PreconditionFailed", msg); }

Int closure_disc(const CMInput& in) {
    if (in.closure_disc != 0) return in.closure_disc;
    if (in.F->degree() == 3 && !in.F->is_galois())
        fail("a non-Galois cubic field needs the discriminant of its Galois closure");
    return in.F->disc();
}

// p splits completely in the Galois closure of F.
bool splits_in_closure(const FieldPtr& F, const Int& p) {
    auto fac = factor_rational_prime(F, p);
    if (static_cast<int>(fac.size()) != F->degree()) return false;
    for (auto& [P, e] : fac)
        if (P.f != 1 || e != 1) return false;
    if (F->degree() == 3 && !F->is_galois()) return kronecker(F->disc(), p) == 1;
    return true;
}

struct Setup {
    std::vector<PrimeIdeal> T1, T2, excluded;
    int e = 1;
    Modulus m;
    Elt a;
    Ideal n;
};

Setup prepare(const CMInput& in) {
    validate_input(in);
    const FieldPtr& F = in.F;
    const Int dS = closure_disc(in);
    Setup s;

    // primes that must split, and those to be made inert
    for (auto& P : in.U1) add_unique(s.T1, P);
    for (auto& [ell, k] : factor(abs(in.p * dS)))
        for (auto& [P, e] : factor_rational_prime(F, ell))
            if (P != in.P) add_unique(s.T1, P);
    std::vector<PrimeIdeal> cand = in.U2;
    for (auto& [P, e] : factor_rational_prime(F, Int(2))) add_unique(cand, P);
    for (auto& P : cand)
        if (!contains(s.T1, P) && !contains(in.R, P) && P != in.P) add_unique(s.T2, P);

    // modulus: square threshold per prime (or the uniform exponent), all real places
    int v2 = 0;
    for (auto* T : {&s.T1, &s.T2})
        for (auto& P : *T) v2 = std::max(v2, P.p == 2 ? P.e : 0);
    s.e = 2 * v2 + 1;
    for (auto* T : {&s.T1, &s.T2})
        for (auto& P : *T) s.m.finite.emplace_back(P, in.uniform_exponent ? s.e : square_threshold(P));
    s.m.infinite_all = true;

    // a with prescribed residues and all embeddings negative
    std::vector<Congruence> cong;
    for (auto& [P, k] : s.m.finite)
        cong.push_back({contains(s.T1, P) ? F->one() : unramified_quadratic_witness(P), P, k});
    s.a = approx_solve(F, std::vector<int>(static_cast<std::size_t>(F->degree()), -1), cong);

    Ideal den = in.P.ideal;
    for (auto& r : in.R) den = den * r.ideal;
    s.n = Ideal::principal(s.a) * inv(den);

    s.excluded = s.T1;
    s.excluded.insert(s.excluded.end(), s.T2.begin(), s.T2.end());
    s.excluded.insert(s.excluded.end(), in.R.begin(), in.R.end());
    s.excluded.push_back(in.P);
    return s;
}

CMConstruction finish(const CMInput& in, const Setup& s, const PrimeIdeal& q, const Elt& b) {
    CMConstruction c;
    c.q = q;
    c.delta = reduce_by_unit_squares(s.a * b);
    c.T1 = s.T1;
    c.T2 = s.T2;
    c.e = s.e;
    c.m = s.m;
    c.a = s.a;
    c.b = b;
    Ideal expected = in.P.ideal * q.ideal;
    for (auto& r : in.R) expected = expected * r.ideal;
    if (Ideal::principal(c.delta) != expected) throw Error("InternalError", "delta O_F differs from p q R");
    c.E = CMExtension::make(c.delta);
    return c;
}

}  // namespace

void validate_input(const CMInput& in) {
    if (!in.F) throw UsageError("no field given");
    const FieldPtr& F = in.F;
    auto same_field = [&](const PrimeIdeal& P) { return P.ideal.field() == F; };
    if (!is_prime(in.p)) fail("p must be a rational prime");
    if (!same_field(in.P) || in.P.p != in.p) fail("the prime p must lie above p");
    if (in.scan_bound < 2) fail("scan bound must be at least 2");
    const Int dS = closure_disc(in);
    if (!splits_in_closure(F, in.p)) fail("p = " + in.p.get_str() + " does not split completely in the Galois closure of F");
    for (auto& r : in.R) {
        if (!same_field(r)) fail("R contains a prime of another field");
        if (r.p == in.p || dS % r.p == 0) fail("R must avoid primes dividing p d_{F^s} (" + r.label + ")");
    }
    for (auto* U : {&in.U1, &in.U2})
        for (auto& u : *U) {
            if (!same_field(u)) fail("U1/U2 contain a prime of another field");
            if (u.p == 2 || u.p == in.p || dS % u.p == 0)
                fail("U1 and U2 must avoid primes dividing 2 p d_{F^s} (" + u.label + ")");
        }
    auto disjoint = [](const std::vector<PrimeIdeal>& A, const std::vector<PrimeIdeal>& B) {
        return std::none_of(A.begin(), A.end(), [&](const PrimeIdeal& P) { return contains(B, P); });
    };
    if (!disjoint(in.R, in.U1) || !disjoint(in.R, in.U2) || !disjoint(in.U1, in.U2))
        fail("R, U1 and U2 must be pairwise disjoint");
}

std::vector<CMConstruction> construct_cm_family(const CMInput& in, int count) {
    const Setup s = prepare(in);
    const FieldPtr& F = in.F;
    RayContext ctx(F, s.m);
    std::vector<CMConstruction> out;
    // degree-one primes by increasing norm
    for (long ell = 2; ell <= in.scan_bound && static_cast<int>(out.size()) < count; ++ell) {
        if (!is_prime_u64(static_cast<std::uint64_t>(ell))) continue;
        for (auto& [Q, e] : factor_rational_prime(F, Int(ell))) {
            if (Q.f != 1 || contains(s.excluded, Q)) continue;
            auto b = ctx.ray_equal(Q.ideal, s.n);
            if (!b) continue;
            out.push_back(finish(in, s, Q, *b));
            if (static_cast<int>(out.size()) >= count) break;
        }
    }
    if (out.empty())
        throw Error("NoPrimeFoundInBound", "no prime of norm <= " + std::to_string(in.scan_bound) + " in the ray class of n");
    return out;
}

CMConstruction construct_cm(const CMInput& in) { return construct_cm_family(in, 1).front(); }

}  // namespace cmf
