#include "cmf/error.hpp"
#include "cmf/nfield.hpp"

#include <cmath>

namespace cmf {

namespace {

void same_field(const Elt& a, const Elt& b) {
    if (a.field() != b.field()) throw Error("FieldMismatch", "elements belong to different fields");
}

}  // namespace

Elt::Elt(FieldPtr F, RatVec coords) : F_(std::move(F)), c_(std::move(coords)) {
    if (!F_ || static_cast<int>(c_.size()) != F_->degree()) throw Error("DomainError", "coordinate count mismatch");
    for (auto& x : c_) x.canonicalize();
}

Elt Elt::from_rat(const FieldPtr& F, const Rat& q) { return F->one() * q; }

Elt Elt::from_ints(const FieldPtr& F, const IntVec& c) {
    RatVec r;
    for (const Int& x : c) r.emplace_back(x);
    return Elt(F, r);
}

bool Elt::is_zero() const {
    for (const Rat& x : c_)
        if (x != 0) return false;
    return true;
}

bool Elt::is_integral() const {
    for (const Rat& x : c_)
        if (x.get_den() != 1) return false;
    return true;
}

Int Elt::denominator() const { return lcm_den(c_); }

IntVec Elt::scaled_coords(Int* den) const {
    Int d = denominator();
    IntVec r;
    for (const Rat& x : c_) r.push_back(x.get_num() * (d / x.get_den()));
    if (den) *den = d;
    return r;
}

IntVec Elt::int_coords() const {
    if (!is_integral()) throw Error("DomainError", "element is not integral");
    IntVec r;
    for (const Rat& x : c_) r.push_back(x.get_num());
    return r;
}

Elt operator+(const Elt& a, const Elt& b) {
    same_field(a, b);
    RatVec c = a.coords();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return Elt(a.field(), std::move(c));
}

Elt operator-(const Elt& a, const Elt& b) {
    same_field(a, b);
    RatVec c = a.coords();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
    return Elt(a.field(), std::move(c));
}

Elt operator-(const Elt& a) {
    RatVec c = a.coords();
    for (auto& x : c) x = -x;
    return Elt(a.field(), std::move(c));
}

Elt operator*(const Elt& a, const Rat& q) {
    RatVec c = a.coords();
    for (auto& x : c) x *= q;
    return Elt(a.field(), std::move(c));
}

Elt operator+(const Elt& a, const Rat& q) { return a + a.field()->one() * q; }

Elt operator*(const Elt& a, const Elt& b) {
    same_field(a, b);
    const Field& F = *a.field();
    const int n = F.degree();
    RatVec c(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (b[static_cast<std::size_t>(j)] == 0) continue;
            Rat ab = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
            const IntVec& m = F.mult(i, j);
            for (int k = 0; k < n; ++k)
                if (m[static_cast<std::size_t>(k)] != 0) c[static_cast<std::size_t>(k)] += ab * Rat(m[static_cast<std::size_t>(k)]);
        }
    }
    return Elt(a.field(), std::move(c));
}

Elt operator/(const Elt& a, const Elt& b) { return a * b.inverse(); }

RatMat Elt::mult_matrix() const {
    const int n = degree();
    RatMat M;
    for (int i = 0; i < n; ++i) M.push_back((*this * F_->basis_elt(i)).coords());
    return M;
}

Rat Elt::norm() const { return det_rat(mult_matrix()); }

Rat Elt::trace() const {
    RatMat M = mult_matrix();
    Rat t = 0;
    for (std::size_t i = 0; i < M.size(); ++i) t += M[i][i];
    return t;
}

RatVec Elt::charpoly() const {
    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
    const RatMat A = mult_matrix();
    const std::size_t n = A.size();
    RatVec c(n + 1, 0);
    c[n] = 1;
    RatMat M(n, RatVec(n, 0));
    for (std::size_t k = 1; k <= n; ++k) {
        M = mul_rat(A, M);
        for (std::size_t i = 0; i < n; ++i) M[i][i] += c[n - k + 1];
        RatMat AM = mul_rat(A, M);
        Rat tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += AM[i][i];
        c[n - k] = -tr / Rat(static_cast<long>(k));
    }
    return c;
}

Elt Elt::inverse() const {
    if (is_zero()) throw Error("ZeroElement", "inverse of zero");
    auto inv = inverse_rat(mult_matrix());
    if (!inv) throw Error("ZeroElement", "singular multiplication matrix");
    return Elt(F_, vec_mat(F_->one().coords(), *inv));
}

Elt Elt::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Elt r = F_->one(), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Real Elt::embed(int j, mpfr_prec_t prec) const {
    auto vals = F_->basis_values(prec + 16);
    Real s(0L, prec + 16);
    for (int i = 0; i < degree(); ++i)
        if (c_[static_cast<std::size_t>(i)] != 0)
            s += Real(c_[static_cast<std::size_t>(i)], prec + 16) * vals[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    return s.with_prec(prec);
}

double Elt::approx(int j) const { return embed(j, 64).to_double(); }

int Elt::sign_at(int j) const {
    if (is_zero()) return 0;
    const int n = degree();
    if (n == 1) return sgn(c_[0]);
    if (n == 2) {
        auto [a, b] = F_->to_surd(*this);
        if (j == 1) b = -b;
        // sign of a + b sqrt m
        int sa = sgn(a), sb = sgn(b);
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        Rat lhs = a * a, rhs = b * b * Rat(F_->quad_m());
        return lhs > rhs ? sa : sb;
    }
    for (mpfr_prec_t prec = 96;; prec *= 2) {
        auto vals = F_->basis_values(prec);
        Real s(0L, prec), scale(0L, prec);
        for (int i = 0; i < n; ++i) {
            Real t = Real(c_[static_cast<std::size_t>(i)], prec) * vals[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            s += t;
            scale += abs(t);
        }
        Real err = scale * ldexp_one(-static_cast<long>(prec) + 12, prec);
        if (abs(s) > err) return s.sign();
        if (prec > 1 << 16) throw Error("InternalError", "sign refinement did not terminate");
    }
}

bool is_totally_negative(const Elt& x) {
    if (x.is_zero()) throw Error("ZeroElement", "total negativity of zero");
    // all roots of the (real-rooted) characteristic polynomial are negative iff
    // every coefficient is positive
    for (const Rat& c : x.charpoly())
        if (c <= 0) return false;
    return true;
}

bool is_totally_positive(const Elt& x) {
    if (x.is_zero()) throw Error("ZeroElement", "total positivity of zero");
    RatVec c = x.charpoly();
    const std::size_t n = c.size() - 1;
    for (std::size_t k = 0; k <= n; ++k) {
        int want = ((n - k) % 2 == 0) ? 1 : -1;
        if (sgn(c[k]) != want) return false;
    }
    return true;
}

namespace {

std::optional<Elt> square_root_quadratic(const Elt& x) {
    const Field& F = *x.field();
    auto [a, b] = F.to_surd(x);
    const Rat m(F.quad_m());
    if (b == 0) {
        if (auto r = rational_sqrt(a)) return F.one() * *r;
        if (auto r = rational_sqrt(a / m)) return F.sqrt_m() * *r;
        return std::nullopt;
    }
    auto n = rational_sqrt(a * a - m * b * b);
    if (!n) return std::nullopt;
    for (int s : {1, -1}) {
        Rat u2 = (a + Rat(s) * *n) / 2;
        auto u = rational_sqrt(u2);
        if (!u || *u == 0) continue;
        Rat v = b / (2 * *u);
        Elt y = F.from_surd(*u, v);
        if (y * y == x) return y;
    }
    return std::nullopt;
}

// Non-square certificate: x reduces to a non-residue under some ring map O -> F_l
// given by a simple root r of the minimal polynomial mod a small prime l.
bool local_nonsquare(const Elt& x) {
    const Field& F = *x.field();
    const int n = F.degree();
    Int bden = 1;
    for (auto& row : F.basis())
        for (auto& c : row) bden = lcm(bden, Int(c.get_den()));
    const Int xden = x.denominator();
    int tried = 0;
    for (long l = 3; l < 400 && tried < 24; l += 2) {
        if (!is_prime_u64(static_cast<std::uint64_t>(l))) continue;
        if (F.poly_disc() % l == 0 || bden % l == 0 || xden % l == 0) continue;
        for (long r = 0; r < l; ++r) {
            Int fr = 0;
            for (int k = n; k >= 0; --k) fr = (fr * r + F.min_poly()[static_cast<std::size_t>(k)]) % l;
            if (fr != 0) continue;
            ++tried;
            Int v = 0;
            for (int i = 0; i < n; ++i) {
                Int wi = 0;  // w_i(r) mod l
                const RatVec& row = F.basis()[static_cast<std::size_t>(i)];
                for (int k = n - 1; k >= 0; --k) {
                    const Rat& c = row[static_cast<std::size_t>(k)];
                    Int cv = c.get_num() * Int(invert_mod(Int(c.get_den()), Int(l)));
                    wi = (wi * r + cv) % l;
                }
                const Rat& xi = x[static_cast<std::size_t>(i)];
                Int xv = xi.get_num() * Int(invert_mod(Int(xi.get_den()), Int(l)));
                v = (v + xv * wi) % l;
            }
            v = ((v % l) + l) % l;
            if (v != 0 && kronecker(v, Int(l)) == -1) return true;
        }
    }
    return false;
}

std::optional<Elt> square_root_numeric(const Elt& x, const SquareOptions& opt) {
    const FieldPtr& F = x.field();
    const int n = F->degree();
    for (int j = 0; j < n; ++j)
        if (x.sign_at(j) < 0) return std::nullopt;  // certificate: a negative embedding
    Rat N = x.norm();
    if (!rational_sqrt(N)) return std::nullopt;  // certificate: norm not a square
    if (local_nonsquare(x)) return std::nullopt;
    // z = d^2 x is integral; a square root of z, if any, is integral
    Int d = x.denominator();
    Elt z = x * Rat(d * d);
    Int hmax = 1;
    for (auto& c : z.coords()) hmax = std::max(hmax, Int(abs(c.get_num())));
    unsigned bits = static_cast<unsigned>(mpz_sizeinbase(hmax.get_mpz_t(), 2));
    if (bits > opt.max_bits) throw Error("InconclusiveHeightBound", "element too large for square reconstruction");
    const mpfr_prec_t P = 128 + 2 * bits + 8 * static_cast<unsigned>(mpz_sizeinbase(F->disc().get_mpz_t(), 2));
    auto vals = F->basis_values(P);
    std::vector<Real> sq;
    for (int j = 0; j < n; ++j) sq.push_back(sqrt(z.embed(j, P)));
    // invert the embedding matrix V[j][i] = w_i(theta_j)
    std::vector<std::vector<Real>> A(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) A[static_cast<std::size_t>(j)] = vals[static_cast<std::size_t>(j)];
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<Real> rhs;
        for (int j = 0; j < n; ++j) rhs.push_back(j > 0 && (mask >> (j - 1)) & 1 ? -sq[static_cast<std::size_t>(j)] : sq[static_cast<std::size_t>(j)]);
        // Gaussian elimination on a copy
        auto M = A;
        auto b = rhs;
        for (int c = 0; c < n; ++c) {
            int piv = c;
            for (int r = c + 1; r < n; ++r)
                if (abs(M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) > abs(M[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)])) piv = r;
            std::swap(M[static_cast<std::size_t>(c)], M[static_cast<std::size_t>(piv)]);
            std::swap(b[static_cast<std::size_t>(c)], b[static_cast<std::size_t>(piv)]);
            for (int r = c + 1; r < n; ++r) {
                Real f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] / M[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
                for (int k = c; k < n; ++k) M[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -= f * M[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
                b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(c)];
            }
        }
        std::vector<Real> y(static_cast<std::size_t>(n), Real(0L, P));
        for (int c = n - 1; c >= 0; --c) {
            Real s = b[static_cast<std::size_t>(c)];
            for (int k = c + 1; k < n; ++k) s -= M[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(k)];
            y[static_cast<std::size_t>(c)] = s / M[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
        }
        IntVec cand;
        for (auto& v : y) {
            Int r;
            mpfr_get_z(r.get_mpz_t(), v.get(), MPFR_RNDN);
            cand.push_back(r);
        }
        Elt w = Elt::from_ints(F, cand);
        if (w * w == z) return w * Rat(Rat(1) / Rat(d));
    }
    // The reconstruction ran at a precision exceeding the coordinate height, so a
    // root would have been recovered exactly: failure certifies non-squareness.
    return std::nullopt;
}

}  // namespace

std::optional<Elt> is_square(const Elt& x, const SquareOptions& opt) {
    if (x.is_zero()) throw Error("ZeroElement", "square test of zero");
    const int n = x.degree();
    if (n == 1) {
        if (auto r = rational_sqrt(x[0])) return x.field()->one() * *r;
        return std::nullopt;
    }
    if (n == 2) return square_root_quadratic(x);
    return square_root_numeric(x, opt);
}

}  // namespace cmf
