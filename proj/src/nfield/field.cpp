#include "cmf/error.hpp"
#include "cmf/nfield.hpp"
#include "cmf/polymod.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cmf {

namespace {

using QPoly = RatVec;  // low to high

QPoly qmul(const QPoly& a, const QPoly& b) {
    QPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Reduce modulo the monic integer polynomial f, returning exactly deg f coefficients.
QPoly qreduce(QPoly a, const IntVec& f) {
    const std::size_t n = f.size() - 1;
    for (std::size_t k = a.size(); k-- > n;) {
        Rat c = a[k];
        if (c == 0) continue;
        for (std::size_t i = 0; i <= n; ++i) a[k - n + i] -= c * Rat(f[i]);
    }
    a.resize(n, 0);
    return a;
}

IntVec zmul(const IntVec& a, const IntVec& b) {
    IntVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

IntVec lift(const fp::Poly& p) {
    IntVec r;
    for (auto c : p) r.emplace_back(static_cast<long>(c));
    if (r.empty()) r.emplace_back(0);
    return r;
}

// True iff p divides [O_F : Z[theta]] (Dedekind criterion).
bool dedekind_index_divisor(const IntVec& f, long p) {
    auto facs = fp::factor(fp::reduce(f, p), p);
    IntVec g{1}, h{1};
    fp::Poly gbar{1}, hbar{1};
    for (auto& [q, e] : facs) {
        g = zmul(g, lift(q));
        gbar = fp::mul(gbar, q, p);
        for (int i = 1; i < e; ++i) {
            h = zmul(h, lift(q));
            hbar = fp::mul(hbar, q, p);
        }
    }
    IntVec gh = zmul(g, h);
    gh.resize(std::max(gh.size(), f.size()), 0);
    IntVec F1(gh.size(), 0);
    for (std::size_t i = 0; i < gh.size(); ++i) {
        Int fi = i < f.size() ? f[i] : Int(0);
        Int d = fi - gh[i];
        if (!mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p)))
            throw Error("InternalError", "Dedekind lift not divisible by p");
        F1[i] = d / p;
    }
    fp::Poly F1bar = fp::reduce(F1, p);
    fp::Poly d = fp::gcd(fp::gcd(F1bar, gbar, p), hbar, p);
    return fp::deg(d) > 0;
}

std::vector<double> real_roots_approx(const IntVec& f) {
    const int n = static_cast<int>(f.size()) - 1;
    std::vector<long double> r;
    if (n == 1) {
        r.push_back(-static_cast<long double>(f[0].get_d()));
    } else if (n == 2) {
        long double b = f[1].get_d(), c = f[0].get_d();
        long double s = std::sqrt(b * b - 4 * c);
        r.push_back((-b + s) / 2);
        r.push_back((-b - s) / 2);
    } else {
        long double a = f[2].get_d(), b = f[1].get_d(), c = f[0].get_d();
        long double p = b - a * a / 3, q = 2 * a * a * a / 27 - a * b / 3 + c;
        long double m = 2 * std::sqrt(-p / 3);
        long double arg = 3 * q / (p * m);
        arg = std::max<long double>(-1, std::min<long double>(1, arg));
        long double th = std::acos(arg) / 3;
        for (int k = 0; k < 3; ++k) r.push_back(m * std::cos(th - 2 * M_PIl * k / 3) - a / 3);
        for (auto& x : r) {
            for (int it = 0; it < 4; ++it) {
                long double v = ((x + a) * x + b) * x + c;
                long double d = (3 * x + 2 * a) * x + b;
                if (d != 0) x -= v / d;
            }
        }
    }
    std::sort(r.begin(), r.end(), std::greater<long double>());
    return std::vector<double>(r.begin(), r.end());
}

}  // namespace

Int poly_discriminant(const IntVec& f) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n == 1) return 1;
    if (n == 2) return f[1] * f[1] - 4 * f[0] * f[2];
    if (n == 3) {
        // a x^3 + b x^2 + c x + d
        const Int &a = f[3], &b = f[2], &c = f[1], &d = f[0];
        return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
    }
    throw Error("DomainError", "discriminant only for degree <= 3");
}

FieldPtr Field::make(const IntVec& f, const std::optional<RatMat>& basis) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n < 1 || n > 3) throw Error("UnsupportedDegree", "degree must be 1, 2 or 3");
    if (f.back() != 1) throw Error("NotMonic", "minimal polynomial must be monic");
    // rational roots of a monic integer polynomial are integer divisors of f[0]
    if (n >= 2) {
        if (f[0] == 0) throw Error("Reducible", "polynomial has root 0");
        for (auto& [p, e] : factor(f[0])) (void)p, (void)e;
        std::vector<Int> divs{1};
        for (auto& [p, e] : factor(f[0])) {
            std::size_t sz = divs.size();
            Int pk = 1;
            for (int k = 1; k <= e; ++k) {
                pk *= p;
                for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
            }
        }
        for (const Int& d : divs)
            for (int s : {1, -1}) {
                Int x = d * s, v = 0;
                for (int i = n; i >= 0; --i) v = v * x + f[static_cast<std::size_t>(i)];
                if (v == 0) throw Error("Reducible", "polynomial has rational root " + x.get_str());
            }
    }
    Int pd = poly_discriminant(f);
    if (pd == 0) throw Error("NotSquarefree", "polynomial has a repeated root");
    if (pd < 0) throw Error("NotTotallyReal", "polynomial has a complex root");

    std::shared_ptr<Field> F(new Field());
    F->n_ = n;
    F->f_ = f;
    F->poly_disc_ = pd;
    if (basis) {
        if (static_cast<int>(basis->size()) != n) throw Error("BadBasis", "basis must have n elements");
        F->basis_ = *basis;
        for (auto& row : F->basis_) row.resize(static_cast<std::size_t>(n), 0);
    } else if (n == 1) {
        F->basis_ = {{Rat(1)}};
    } else if (n == 2) {
        Int m = squarefree_part(pd);
        Int k = isqrt(pd / m);
        Rat b(f[1]);
        // sqrt m = (2 theta + b)/k
        Rat mm = m % 4;
        if (mm < 0) mm += 4;
        if (mm == 1)
            F->basis_ = {{Rat(1), Rat(0)}, {(1 + b / Rat(k)) / 2, Rat(1) / Rat(k)}};
        else
            F->basis_ = {{Rat(1), Rat(0)}, {b / Rat(k), Rat(2) / Rat(k)}};
        for (auto& row : F->basis_)
            for (auto& x : row) x.canonicalize();
    } else {
        for (auto& [p, e] : factor(pd)) {
            if (e < 2) continue;
            if (!p.fits_slong_p()) throw Error("NonMonogenicBasisRequired", "cannot certify basis at large prime");
            if (dedekind_index_divisor(f, p.get_si()))
                throw Error("NonMonogenicBasisRequired",
                            "{1, theta, theta^2} is not maximal at p = " + p.get_str() + "; supply an integral basis");
        }
        F->basis_ = identity_rat(3);
    }
    auto inv = inverse_rat(F->basis_);
    if (!inv) throw Error("BadBasis", "basis elements are linearly dependent");
    F->basis_inv_ = *inv;
    F->finish();
    if (basis) {
        // must be an order containing 1 whose discriminant is compatible with disc(f)
        Rat q = Rat(F->poly_disc_) / Rat(F->disc_);
        if (q.get_den() != 1 || !is_square(q.get_num()))
            throw Error("BadBasis", "basis discriminant does not divide the polynomial discriminant by a square");
    }
    return F;
}

FieldPtr Field::quadratic(const Int& m) {
    if (m <= 1 || squarefree_part(m) != m) throw Error("DomainError", "m must be squarefree and > 1");
    return make(IntVec{-m, 0, 1});
}

FieldPtr Field::rationals() { return make(IntVec{0, 1}); }

void Field::finish() {
    const int n = n_;
    // power basis products theta^k (k < 2n-1) reduced mod f, then into basis coordinates
    mult_.assign(static_cast<std::size_t>(n * n), IntVec());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            QPoly p = qreduce(qmul(basis_[static_cast<std::size_t>(i)], basis_[static_cast<std::size_t>(j)]), f_);
            RatVec c = vec_mat(p, basis_inv_);
            IntVec ic;
            for (auto& x : c) {
                if (x.get_den() != 1) throw Error("BadBasis", "basis is not closed under multiplication / not integral");
                ic.push_back(x.get_num());
            }
            mult_[static_cast<std::size_t>(i * n + j)] = ic;
        }
    // 1 must be in the lattice; require w_0 = 1 for a canonical embedding of Z
    RatVec one_c = vec_mat(RatVec{Rat(1)} , RatMat{basis_inv_[0]});
    for (int i = 0; i < n; ++i)
        if (basis_inv_[0][static_cast<std::size_t>(i)] != (i == 0 ? 1 : 0))
            throw Error("BadBasis", "first basis element must be 1");
    (void)one_c;
    // discriminant = det(Tr(w_i w_j)); trace of w_k = trace of its multiplication matrix
    std::vector<Int> tr(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) tr[static_cast<std::size_t>(k)] += mult(k, i)[static_cast<std::size_t>(i)];
    IntMat T(static_cast<std::size_t>(n), IntVec(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const IntVec& c = mult(i, j);
            Int t = 0;
            for (int k = 0; k < n; ++k) t += c[static_cast<std::size_t>(k)] * tr[static_cast<std::size_t>(k)];
            T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t;
        }
    disc_ = det_int(T);
    roots_d_ = real_roots_approx(f_);
    if (n == 2) quad_m_ = squarefree_part(poly_disc_);

    // automorphisms
    autos_.clear();
    autos_.push_back(identity_rat(static_cast<std::size_t>(n)));
    auto image_map = [&](const QPoly& g) {
        // g = image of theta in power coordinates; returns coordinate map
        RatMat A;
        std::vector<QPoly> gp{QPoly{Rat(1)}};
        for (int k = 1; k < n; ++k) gp.push_back(qreduce(qmul(gp.back(), g), f_));
        for (int i = 0; i < n; ++i) {
            QPoly img(static_cast<std::size_t>(n), 0);
            for (int k = 0; k < n; ++k)
                for (int t = 0; t < n && t < static_cast<int>(gp[static_cast<std::size_t>(k)].size()); ++t)
                    img[static_cast<std::size_t>(t)] += basis_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                                                        gp[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)];
            A.push_back(vec_mat(img, basis_inv_));
        }
        return A;
    };
    if (n == 2) {
        autos_.push_back(image_map(QPoly{Rat(-f_[1]), Rat(-1)}));
    } else if (n == 3 && is_square(poly_disc_)) {
        const mpfr_prec_t P = 256 + 4 * static_cast<mpfr_prec_t>(mpz_sizeinbase(poly_disc_.get_mpz_t(), 2));
        std::vector<Real> r = roots(P);
        for (int shift : {1, 2}) {
            // solve g(r_j) = r_{j+shift} via Vandermonde
            RatMat V;
            std::vector<Real> rhs;
            for (int j = 0; j < 3; ++j) rhs.push_back(r[static_cast<std::size_t>((j + shift) % 3)]);
            // Cramer with reals
            auto det3 = [](const std::vector<std::vector<Real>>& M) {
                return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                       M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                       M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
            };
            std::vector<std::vector<Real>> M(3);
            for (int j = 0; j < 3; ++j) {
                M[static_cast<std::size_t>(j)] = {Real(1L, P), r[static_cast<std::size_t>(j)],
                                                  r[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(j)]};
            }
            Real D = det3(M);
            QPoly g(3);
            for (int k = 0; k < 3; ++k) {
                auto Mk = M;
                for (int j = 0; j < 3; ++j) Mk[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = rhs[static_cast<std::size_t>(j)];
                Real ak = det3(Mk) / D * Real(poly_disc_, P);
                mpz_class z;
                mpfr_get_z(z.get_mpz_t(), ak.get(), MPFR_RNDN);
                g[static_cast<std::size_t>(k)] = Rat(z, poly_disc_);
                g[static_cast<std::size_t>(k)].canonicalize();
            }
            // verify f(g(theta)) = 0
            QPoly acc{Rat(0)};
            QPoly pw{Rat(1)};
            for (int k = 0; k <= 3; ++k) {
                QPoly term = pw;
                for (auto& x : term) x *= Rat(f_[static_cast<std::size_t>(k)]);
                acc.resize(std::max(acc.size(), term.size()), 0);
                for (std::size_t t = 0; t < term.size(); ++t) acc[t] += term[t];
                pw = qreduce(qmul(pw, g), f_);
            }
            acc = qreduce(acc, f_);
            bool zero = std::all_of(acc.begin(), acc.end(), [](const Rat& x) { return x == 0; });
            if (!zero) throw Error("InternalError", "automorphism reconstruction failed");
            autos_.push_back(image_map(g));
        }
    } else if (n == 3) {
        autos_.clear();  // not Galois
    }
}

Elt Field::zero() const { return Elt(self(), RatVec(static_cast<std::size_t>(n_), 0)); }

Elt Field::one() const {
    RatVec c(static_cast<std::size_t>(n_), 0);
    c[0] = 1;
    return Elt(self(), c);
}

Elt Field::basis_elt(int i) const {
    RatVec c(static_cast<std::size_t>(n_), 0);
    c[static_cast<std::size_t>(i)] = 1;
    return Elt(self(), c);
}

Elt Field::theta() const {
    RatVec p(static_cast<std::size_t>(n_), 0);
    if (n_ == 1)
        p[0] = Rat(-f_[0]);
    else
        p[1] = 1;
    return from_power_coords(p);
}

Elt Field::from_power_coords(const RatVec& p) const { return Elt(self(), vec_mat(p, basis_inv_)); }

RatVec Field::to_power_coords(const RatVec& c) const { return vec_mat(c, basis_); }

std::vector<Real> Field::roots(mpfr_prec_t prec) const {
    const mpfr_prec_t wp = prec + 32;
    std::vector<Real> out;
    if (n_ == 1) {
        out.emplace_back(Rat(-f_[0]), prec);
        return out;
    }
    if (n_ == 2) {
        Real s = sqrt(Real(poly_disc_, wp));
        Real b(f_[1], wp);
        out.push_back(((s - b) / 2).with_prec(prec));
        out.push_back(((-s - b) / 2).with_prec(prec));
        return out;
    }
    for (double seed : roots_d_) {
        Real x(seed, wp);
        for (int it = 0; it < 200; ++it) {
            Real v(f_[3], wp), d(0L, wp);
            for (int i = 2; i >= 0; --i) {
                d = d * x + v;
                v = v * x + Real(f_[static_cast<std::size_t>(i)], wp);
            }
            Real step = v / d;
            x -= step;
            if (step.is_zero() || step.exponent() < x.exponent() - static_cast<long>(wp) + 4) break;
        }
        out.push_back(x.with_prec(prec));
    }
    return out;
}

std::vector<std::vector<Real>> Field::basis_values(mpfr_prec_t prec) const {
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = value_cache_.find(prec);
        if (it != value_cache_.end()) return it->second;
    }
    std::vector<Real> r = roots(prec + 16);
    std::vector<std::vector<Real>> vals(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
        for (int i = 0; i < n_; ++i) {
            Real acc(0L, prec + 16), pw(1L, prec + 16);
            for (int k = 0; k < n_; ++k) {
                acc += Real(basis_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], prec + 16) * pw;
                pw *= r[static_cast<std::size_t>(j)];
            }
            vals[static_cast<std::size_t>(j)].push_back(acc.with_prec(prec));
        }
    }
    std::lock_guard<std::mutex> lock(cache_mu_);
    if (value_cache_.size() < 16) value_cache_.emplace(prec, vals);
    return vals;
}

std::vector<std::vector<double>> Field::t2_gram() const {
    auto vals = basis_values(128);
    std::vector<std::vector<double>> G(static_cast<std::size_t>(n_), std::vector<double>(static_cast<std::size_t>(n_), 0.0));
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            Real s(0L, 128);
            for (int j = 0; j < n_; ++j) s += vals[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * vals[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            G[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = s.to_double();
        }
    return G;
}

Elt Field::apply(const RatMat& sigma, const Elt& x) const { return Elt(self(), vec_mat(x.coords(), sigma)); }

Elt Field::sqrt_m() const {
    if (n_ != 2) throw Error("DomainError", "sqrt_m requires a quadratic field");
    // sqrt m = (2 theta + b)/k
    Int k = isqrt(poly_disc_ / quad_m_);
    return (theta() * Rat(2) + Rat(f_[1])) * Rat(Rat(1) / Rat(k));
}

Elt Field::from_surd(const Rat& a, const Rat& b) const { return one() * a + sqrt_m() * b; }

std::pair<Rat, Rat> Field::to_surd(const Elt& x) const {
    if (n_ != 2) throw Error("DomainError", "to_surd requires a quadratic field");
    // x = u + v theta (power coordinates), theta = (k sqrt m - b)/2
    RatVec p = to_power_coords(x.coords());
    Int k = isqrt(poly_disc_ / quad_m_);
    Rat a = p[0] - p[1] * Rat(f_[1]) / 2;
    Rat b = p[1] * Rat(k) / 2;
    a.canonicalize();
    b.canonicalize();
    return {a, b};
}

Elt Field::conj(const Elt& x) const {
    if (n_ != 2) throw Error("DomainError", "conj requires a quadratic field");
    return apply(autos_[1], x);
}

std::string Field::describe() const {
    std::ostringstream os;
    os << "Q[x]/(";
    bool first = true;
    for (int i = n_; i >= 0; --i) {
        const Int& c = f_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Int a = abs(c);
        if (i == 0 || a != 1) os << a;
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    os << ")";
    return os.str();
}

}  // namespace cmf
