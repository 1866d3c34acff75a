#include "cmf/error.hpp"
#include "cmf/rayclass.hpp"

#include <cmath>

namespace cmf {

bool mult_congruent(const Elt& a, const Elt& b, const PrimeIdeal& P, int e) {
    if (a.is_zero() || b.is_zero()) throw Error("NotCoprime", "zero is not a unit at " + P.label);
    if (valuation(a, P) != 0 || valuation(b, P) != 0) throw Error("NotCoprime", "arguments must be units at " + P.label);
    if (a == b) return true;
    return valuation(a / b - b.field()->one(), P) >= e;
}

int square_threshold(const PrimeIdeal& P) { return P.p == 2 ? 2 * P.e + 1 : 1; }

namespace {

// Coordinate box [0, p)^n enumerated with c0 varying fastest.
IntVec box_point(std::uint64_t idx, int n, long p) {
    IntVec c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        c[static_cast<std::size_t>(i)] = static_cast<long>(idx % static_cast<std::uint64_t>(p));
        idx /= static_cast<std::uint64_t>(p);
    }
    return c;
}

}  // namespace

Elt unramified_quadratic_witness(const PrimeIdeal& P) {
    const FieldPtr& F = P.ideal.field();
    const int n = F->degree();
    const long p = P.p.get_si();
    const ResidueRing& R = *residue_ring(P, 1);
    std::uint64_t box = 1;
    for (int i = 0; i < n; ++i) box *= static_cast<std::uint64_t>(p);
    if (P.p != 2) {
        const Int half = (P.norm() - 1) / 2;
        for (std::uint64_t i = 1; i < box; ++i) {
            Elt x = Elt::from_ints(F, box_point(i, n, p));
            auto r = R.image(x);
            if (!R.is_unit(r)) continue;
            if (R.pow(r, half) != R.one()) return x;
        }
        throw Error("InternalError", "no quadratic non-residue found");
    }
    // x^2 + a1 x + a0 irreducible over the residue field gives a1^2 - 4 a0
    std::vector<ResidueRing::Vec> field_elts;
    for (std::uint64_t i = 0; i < R.size(); ++i) field_elts.push_back(R.from_index(i));
    for (std::uint64_t i1 = 1; i1 < box; ++i1) {
        Elt a1 = Elt::from_ints(F, box_point(i1, n, p));
        auto r1 = R.image(a1);
        if (R.is_zero(r1)) continue;
        for (std::uint64_t i0 = 0; i0 < box; ++i0) {
            Elt a0 = Elt::from_ints(F, box_point(i0, n, p));
            auto r0 = R.image(a0);
            bool has_root = false;
            for (auto& x : field_elts) {
                auto v = R.add(R.add(R.mul(x, x), R.mul(r1, x)), r0);
                if (R.is_zero(v)) {
                    has_root = true;
                    break;
                }
            }
            if (!has_root) return a1 * a1 - a0 * Rat(4);
        }
    }
    throw Error("InternalError", "no irreducible quadratic found");
}

namespace {

std::vector<std::vector<double>> invert_matrix(std::vector<std::vector<double>> A) {
    const std::size_t n = A.size();
    std::vector<std::vector<double>> I(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(I[c], I[piv]);
        double d = A[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            A[c][k] /= d;
            I[c][k] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = A[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                A[r][k] -= f * A[c][k];
                I[r][k] -= f * I[c][k];
            }
        }
    }
    return I;
}

bool signs_match(const Elt& a, const std::vector<int>& signs) {
    if (a.is_zero()) return false;
    for (std::size_t j = 0; j < signs.size(); ++j)
        if (a.sign_at(static_cast<int>(j)) != signs[j]) return false;
    return true;
}

}  // namespace

Elt approx_solve(const FieldPtr& F, const std::vector<int>& signs, const std::vector<Congruence>& cong,
                 const SolveOptions& opt) {
    const int n = F->degree();
    if (static_cast<int>(signs.size()) != n) throw UsageError("approx_solve: one sign per real embedding required");
    for (std::size_t i = 0; i < cong.size(); ++i)
        for (std::size_t j = i + 1; j < cong.size(); ++j)
            if (cong[i].prime == cong[j].prime) throw Error("DomainError", "congruence primes must be distinct");
    std::vector<Ideal> Q;
    for (auto& c : cong) Q.push_back(pow(c.prime.ideal, c.exponent));
    Ideal M = Ideal::unit(F);
    for (auto& q : Q) M = M * q;
    // CRT with idempotents c_i = 1 mod Q_i, 0 mod Q_j (j != i)
    Elt a0 = F->zero();
    for (std::size_t i = 0; i < cong.size(); ++i) {
        if (valuation(cong[i].target, cong[i].prime) != 0)
            throw Error("NotCoprime", "target not a unit at " + cong[i].prime.label);
        Ideal B = Ideal::unit(F);
        for (std::size_t j = 0; j < cong.size(); ++j)
            if (j != i) B = B * Q[j];
        IntMat S = Q[i].hnf();
        for (auto& r : B.hnf()) S.push_back(r);
        IntVec one(static_cast<std::size_t>(n), 0);
        one[0] = 1;
        auto x = solve_in_lattice(S, one);
        if (!x) throw Error("InternalError", "CRT idempotent not found");
        IntVec y(static_cast<std::size_t>(n), 0);
        for (int r = 0; r < n; ++r)
            for (int k = 0; k < n; ++k) y[static_cast<std::size_t>(k)] += (*x)[static_cast<std::size_t>(n + r)] * B.hnf()[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
        const ResidueRing& R = *residue_ring(cong[i].prime, cong[i].exponent);
        Elt t = R.lift(R.image(cong[i].target));
        a0 = a0 + Elt::from_ints(F, y) * t;
    }
    {
        IntVec v = a0.int_coords();
        reduce_mod_hnf(v, M.hnf());
        a0 = Elt::from_ints(F, v);
    }
    if (signs_match(a0, signs)) return a0;
    const Int m = M.min_integer();
    const double md = m.get_d();
    std::vector<std::vector<double>> V(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) V[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = F->basis_elt(i).approx(j);
    auto Vi = invert_matrix(V);
    double spread = 0;  // rounding error of a lambda coordinate vector, in embedding units
    for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += 0.5 * std::fabs(V[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
        spread = std::max(spread, s);
    }
    std::vector<double> a0v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) a0v[static_cast<std::size_t>(j)] = a0.approx(j);
    for (int round = 1; round <= opt.max_rounds; ++round) {
        const double Rscale = md * spread * round + 1.0;
        std::vector<double> tgt(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) tgt[static_cast<std::size_t>(j)] = (signs[static_cast<std::size_t>(j)] * Rscale - a0v[static_cast<std::size_t>(j)]) / md;
        IntVec lam(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double s = 0;
            for (int j = 0; j < n; ++j) s += Vi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * tgt[static_cast<std::size_t>(j)];
            lam[static_cast<std::size_t>(i)] = Int(static_cast<long>(std::llround(s)));
        }
        Elt a = a0 + Elt::from_ints(F, lam) * Rat(m);
        if (signs_match(a, signs)) return a;
    }
    throw Error("SearchBudgetExceeded", "sign correction did not converge");
}

Ideal Modulus::finite_ideal(const FieldPtr& F) const {
    Ideal r = Ideal::unit(F);
    for (auto& [P, k] : finite) r = r * pow(P.ideal, k);
    return r;
}

}  // namespace cmf
