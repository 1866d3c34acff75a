#include "cmf/error.hpp"
#include "cmf/ideals.hpp"

#include <sstream>

namespace cmf {

Ideal Ideal::unit(const FieldPtr& F) {
    return from_rows(F, identity_rat(static_cast<std::size_t>(F->degree())));
}

Ideal Ideal::principal(const Elt& x) {
    if (x.is_zero()) throw Error("ZeroIdeal", "principal ideal of zero");
    return from_rows(x.field(), x.mult_matrix());
}

Ideal Ideal::from_generators(const FieldPtr& F, const std::vector<Elt>& gens) {
    RatMat rows;
    for (const Elt& g : gens) {
        if (g.is_zero()) continue;
        for (auto& r : g.mult_matrix()) rows.push_back(r);
    }
    if (rows.empty()) throw Error("ZeroIdeal", "no nonzero generators");
    return from_rows(F, rows);
}

Ideal Ideal::from_rows(const FieldPtr& F, const RatMat& rows) {
    const std::size_t n = static_cast<std::size_t>(F->degree());
    Int den = 1;
    for (auto& r : rows) den = lcm(den, lcm_den(r));
    IntMat A;
    A.reserve(rows.size());
    for (auto& r : rows) {
        IntVec v(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rat q = r[i] * den;
            v[i] = q.get_num();
        }
        A.push_back(std::move(v));
    }
    IntMat H = cmf::hnf(A);
    if (H.size() != n) throw Error("ZeroIdeal", "generators do not span a full-rank lattice");
    Int g = den;
    for (auto& r : H)
        for (auto& x : r) g = gcd(g, x);
    if (g != 1) {
        den /= g;
        for (auto& r : H)
            for (auto& x : r) x /= g;
    }
    return Ideal(F, std::move(H), std::move(den));
}

Rat Ideal::norm() const {
    Int d = 1;
    for (std::size_t i = 0; i < H_.size(); ++i) d *= H_[i][i];
    Rat r(d, pow_int(den_, static_cast<unsigned long>(H_.size())));
    r.canonicalize();
    return r;
}

bool Ideal::is_unit() const { return den_ == 1 && norm() == 1; }

bool Ideal::contains(const Elt& x) const {
    IntVec v(H_.size());
    for (std::size_t i = 0; i < H_.size(); ++i) {
        Rat q = x[i] * den_;
        if (q.get_den() != 1) return false;
        v[i] = q.get_num();
    }
    reduce_mod_hnf(v, H_);
    for (auto& c : v)
        if (c != 0) return false;
    return true;
}

bool Ideal::contains(const Ideal& J) const {
    for (const Elt& b : J.basis())
        if (!contains(b)) return false;
    return true;
}

std::vector<Elt> Ideal::basis() const {
    std::vector<Elt> out;
    for (auto& r : H_) {
        RatVec c(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            c[i] = Rat(r[i], den_);
            c[i].canonicalize();
        }
        out.emplace_back(F_, std::move(c));
    }
    return out;
}

Int Ideal::min_integer() const {
    if (den_ != 1) throw Error("DomainError", "min_integer of a non-integral ideal");
    RatMat R(H_.size(), RatVec(H_.size()));
    for (std::size_t i = 0; i < H_.size(); ++i)
        for (std::size_t j = 0; j < H_.size(); ++j) R[i][j] = H_[i][j];
    auto Hi = inverse_rat(R);
    // m * e_0 lies in the lattice iff m * (row 0 of H^{-1}) is integral
    return lcm_den((*Hi)[0]);
}

std::string Ideal::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < H_.size(); ++i) {
        os << (i ? "," : "") << "[";
        for (std::size_t j = 0; j < H_[i].size(); ++j) os << (j ? "," : "") << H_[i][j].get_str();
        os << "]";
    }
    os << "]/" << den_.get_str();
    return os.str();
}

Ideal operator*(const Ideal& a, const Ideal& b) {
    RatMat rows;
    auto A = a.basis(), B = b.basis();
    for (auto& x : A)
        for (auto& y : B) rows.push_back((x * y).coords());
    return Ideal::from_rows(a.field(), rows);
}

Ideal operator*(const Ideal& a, const Elt& x) {
    if (x.is_zero()) throw Error("ZeroIdeal", "product with zero");
    RatMat rows;
    for (auto& b : a.basis()) rows.push_back((b * x).coords());
    return Ideal::from_rows(a.field(), rows);
}

Ideal operator+(const Ideal& a, const Ideal& b) {
    RatMat rows;
    for (auto& x : a.basis()) rows.push_back(x.coords());
    for (auto& x : b.basis()) rows.push_back(x.coords());
    return Ideal::from_rows(a.field(), rows);
}

Ideal inv(const Ideal& a) {
    // x = c.w lies in a^{-1} iff c . M(b_j) is integral for every basis
    // element b_j; the solutions form the dual of the column lattice of
    // [M(b_0) | ... | M(b_{n-1})].
    const FieldPtr& F = a.field();
    const std::size_t n = static_cast<std::size_t>(F->degree());
    std::vector<RatMat> Ms;
    for (auto& b : a.basis()) Ms.push_back(b.mult_matrix());
    Int D = 1;
    for (auto& M : Ms)
        for (auto& r : M) D = lcm(D, lcm_den(r));
    IntMat cols;
    for (auto& M : Ms)
        for (std::size_t j = 0; j < n; ++j) {
            IntVec v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = Rat(M[i][j] * D).get_num();
            cols.push_back(std::move(v));
        }
    IntMat B = hnf(cols);
    RatMat Br(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) Br[i][j] = B[i][j];
    auto Bi = inverse_rat(Br);
    if (!Bi) throw Error("ZeroIdeal", "inverse of a degenerate lattice");
    RatMat dual = transpose(*Bi);
    for (auto& r : dual)
        for (auto& x : r) x *= D;
    return Ideal::from_rows(F, dual);
}

Ideal pow(const Ideal& a, long k) {
    if (k < 0) return pow(inv(a), -k);
    Ideal r = Ideal::unit(a.field());
    Ideal b = a;
    while (k > 0) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

bool is_coprime(const Ideal& a, const Ideal& b) { return (a + b).is_unit(); }

}  // namespace cmf
