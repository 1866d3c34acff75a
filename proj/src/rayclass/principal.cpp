#include "cmf/error.hpp"
#include "cmf/rayclass.hpp"

#include <cmath>
#include <set>

namespace cmf {

namespace {

// log|x_j| for every embedding, at a precision adequate for the size of x.
std::vector<Real> log_embeddings(const Elt& x) {
    std::size_t bits = 64;
    for (auto& c : x.coords())
        bits = std::max(bits, mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2));
    const mpfr_prec_t P = static_cast<mpfr_prec_t>(2 * bits + 128);
    std::vector<Real> out;
    for (int j = 0; j < x.degree(); ++j) out.push_back(log(abs(x.embed(j, P))));
    return out;
}

std::vector<std::vector<double>> unit_logs(const std::vector<Elt>& units) {
    std::vector<std::vector<double>> L;
    for (auto& u : units) {
        std::vector<double> row;
        for (int j = 0; j < u.degree(); ++j) row.push_back(std::log(std::fabs(u.approx(j))));
        L.push_back(row);
    }
    return L;
}

// Real solution k of sum_i k_i * L[i][j] = -t[j] for j < r (r = #units).
std::vector<double> log_solve(const std::vector<std::vector<double>>& L, const std::vector<double>& t) {
    const std::size_t r = L.size();
    std::vector<double> k(r, 0.0);
    if (r == 1) {
        k[0] = -t[0] / L[0][0];
    } else if (r == 2) {
        double det = L[0][0] * L[1][1] - L[1][0] * L[0][1];
        k[0] = (-t[0] * L[1][1] + t[1] * L[1][0]) / det;
        k[1] = (-t[1] * L[0][0] + t[0] * L[0][1]) / det;
    }
    return k;
}

}  // namespace

Elt reduce_by_unit_squares(const Elt& x) {
    const FieldPtr& F = x.field();
    if (F->degree() == 1) return x;
    auto units = unit_generators(F);
    auto L = unit_logs(units);
    Elt y = x;
    for (int iter = 0; iter < 4; ++iter) {
        auto lg = log_embeddings(y);
        Real mean = lg[0];
        for (std::size_t j = 1; j < lg.size(); ++j) mean = mean + lg[j];
        mean = mean / static_cast<long>(lg.size());
        std::vector<double> t;
        for (auto& v : lg) t.push_back((v - mean).to_double());
        auto k = log_solve(L, t);
        bool moved = false;
        Elt m = F->one();
        for (std::size_t i = 0; i < units.size(); ++i) {
            long ki = std::lround(k[i] / 2.0);
            if (ki != 0) {
                moved = true;
                m = m * units[i].pow(2 * ki);
            }
        }
        if (!moved) break;
        y = y * m;
    }
    return y;
}

namespace {

// floor((P + sqrt D)/Q) for non-square D > 0.
Int quad_floor(const Int& P, const Int& Q, const Int& D, const Int& s) {
    // k <= (P + sqrt D)/Q  <=>  sign(Q)*(kQ - P) <= sign(Q)*sqrt(D)
    auto le = [&](const Int& k) {
        Int t = k * Q - P;
        if (Q > 0) return t <= 0 || t * t < D;
        return t > 0 && t * t > D;
    };
    Int k = Q > 0 ? floor_div(P + s, Q) : floor_div(P + s + 1, Q);
    while (!le(k)) --k;
    while (le(k + 1)) ++k;
    return k;
}

}  // namespace

std::optional<Elt> quadratic_generator(const Ideal& I) {
    const FieldPtr& F = I.field();
    if (F->degree() != 2) throw UsageError("quadratic_generator requires a quadratic field");
    const Int D = F->disc();
    const Int s = isqrt(D);
    const int dpar = D % 2 == 0 ? 0 : 1;
    const Int m = F->quad_m();
    // standard coordinates over (1, w), w = (dpar + sqrt D)/2
    auto std_coords = [&](const Elt& x) {
        auto [u, v] = F->to_surd(x);
        Rat c0 = dpar ? u - v : u, c1 = dpar ? v * 2 : v;
        if (c0.get_den() != 1 || c1.get_den() != 1) throw Error("InternalError", "non-integral ideal basis");
        return std::make_pair(c0.get_num(), c1.get_num());
    };
    const Int den = I.denom();
    auto B = I.basis();
    auto [x1, y1] = std_coords(B[0] * Rat(den));
    auto [x2, y2] = std_coords(B[1] * Rat(den));
    Int g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), y1.get_mpz_t(), y2.get_mpz_t());
    Int a = abs(Int(y2 / g) * x1 - Int(y1 / g) * x2);
    Int c = u * x1 + v * x2;
    if (a % g != 0 || c % g != 0) throw Error("InternalError", "ideal lattice is not an O-module");
    const Int k = g;
    a /= k;
    c /= k;
    c = c - floor_div(c, a) * a;
    // primitive part a * (Z + Z xi0), xi0 = (P0 + sqrt D)/Q0
    Int P = 2 * c + dpar, Q = 2 * a;
    if ((D - P * P) % Q != 0) throw Error("InternalError", "primitive ideal data inconsistent");
    const Elt sqrtD = F->sqrt_m() * Rat(isqrt(D / m));
    Elt prod = F->one();
    std::set<std::pair<Int, Int>> seen;
    for (;;) {
        if (abs(Q) == 2) {
            Elt gen = prod.inverse() * Rat(a * k) * Rat(Int(1), den);
            if (Ideal::principal(gen) != I) throw Error("InternalError", "continued fraction generator check failed");
            return gen;
        }
        if (!seen.insert({P, Q}).second) return std::nullopt;
        Int q = quad_floor(P, Q, D, s);
        Int P1 = q * Q - P;
        Int Q1 = (D - P1 * P1) / Q;
        P = P1;
        Q = Q1;
        Rat invQ(Int(1), Q);
        invQ.canonicalize();
        prod = prod * ((sqrtD + Rat(P)) * invQ);
    }
}

std::optional<Elt> principal_generator(const Ideal& I, const PrincipalOptions& opt) {
    const FieldPtr& F = I.field();
    const int n = F->degree();
    const Int d = I.denom();
    const Rat NJ = I.norm() * Rat(pow_int(d, static_cast<unsigned long>(n)));  // norm of the integral ideal d*I
    const Rat dinv(Int(1), d);
    std::vector<Elt> B;
    for (auto& b : I.basis()) B.push_back(b * Rat(d));
    if (n == 1) return B[0] * dinv;
    if (n == 2) return quadratic_generator(I);
    {
        // exact LLL on the trace form keeps the floating point Gram well conditioned
        RatMat T(B.size(), RatVec(B.size()));
        for (std::size_t a = 0; a < B.size(); ++a)
            for (std::size_t b = a; b < B.size(); ++b) T[a][b] = T[b][a] = (B[a] * B[b]).trace();
        IntMat U = lll_gram(T);
        std::vector<Elt> R;
        for (auto& row : U) {
            Elt x = F->zero();
            for (std::size_t k = 0; k < B.size(); ++k)
                if (row[k] != 0) x = x + B[k] * Rat(row[k]);
            R.push_back(x);
        }
        B = std::move(R);
    }
    auto units = unit_generators(F);
    auto L = unit_logs(units);
    double rho = 0;
    for (int j = 0; j < n; ++j) {
        double s = 0;
        for (auto& row : L) s += 0.5 * std::fabs(row[static_cast<std::size_t>(j)]);
        rho = std::max(rho, s);
    }
    const double Nd = NJ.get_d();
    const double bound = n * std::pow(Nd, 2.0 / n) * std::exp(2 * rho) * (1 + 1e-9) + 1e-9;
    std::vector<std::vector<double>> emb(B.size(), std::vector<double>(static_cast<std::size_t>(n)));
    for (std::size_t k = 0; k < B.size(); ++k)
        for (int j = 0; j < n; ++j) emb[k][static_cast<std::size_t>(j)] = B[k].approx(j);
    std::vector<std::vector<double>> G(B.size(), std::vector<double>(B.size(), 0.0));
    for (std::size_t a = 0; a < B.size(); ++a)
        for (std::size_t b = 0; b < B.size(); ++b)
            for (int j = 0; j < n; ++j) G[a][b] += emb[a][static_cast<std::size_t>(j)] * emb[b][static_cast<std::size_t>(j)];
    long visited = 0;
    std::optional<Elt> found;
    bool budget = false;
    enumerate_short_vectors(G, bound, [&](const std::vector<long>& x) {
        if (++visited > opt.max_points) {
            budget = true;
            return false;
        }
        double nv = 1;
        for (int j = 0; j < n; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < B.size(); ++k) s += static_cast<double>(x[k]) * emb[k][static_cast<std::size_t>(j)];
            nv *= s;
        }
        if (std::fabs(std::fabs(nv) - Nd) > 1e-6 * Nd + 1e-6) return true;
        Elt g = F->zero();
        for (std::size_t k = 0; k < B.size(); ++k)
            if (x[k] != 0) g = g + B[k] * Rat(x[k]);
        Rat N = g.norm();
        if (N != NJ && N != -NJ) return true;
        found = g;
        return false;
    });
    if (found) return *found * dinv;
    if (budget) throw Error("PrincipalityUndecided", "lattice point budget exhausted before the generator bound was covered");
    return std::nullopt;
}

// ---------------------------------------------------------------------------

struct RayContext::Component {
    bool is_sign = false;
    std::shared_ptr<const ResidueRing> ring;
    int n_emb = 0;
    std::uint64_t size = 0;
    std::vector<std::int32_t> id;          // element index -> position in the subgroup table
    std::vector<std::int32_t> exps;        // flattened exponent vectors
    std::vector<std::uint64_t> elems;
    IntMat kernel;                         // HNF of the relation lattice
    int m = 0;

    std::uint64_t op(std::uint64_t a, std::uint64_t b) const {
        if (is_sign) return a ^ b;
        return ring->index(ring->mul(ring->from_index(a), ring->from_index(b)));
    }

    std::uint64_t encode(const Elt& x) const {
        if (is_sign) {
            std::uint64_t mask = 0;
            for (int j = 0; j < n_emb; ++j)
                if (x.sign_at(j) < 0) mask |= std::uint64_t(1) << j;
            return mask;
        }
        return ring->index(ring->image(x));
    }

    std::uint64_t identity() const { return is_sign ? 0 : ring->index(ring->one()); }

    void build(const std::vector<std::uint64_t>& gens) {
        m = static_cast<int>(gens.size());
        if (size > (std::uint64_t(1) << 26)) throw Error("WorkloadExceeded", "modulus component too large for unit tables");
        id.assign(size, -1);
        elems = {identity()};
        exps.assign(static_cast<std::size_t>(m), 0);
        id[elems[0]] = 0;
        IntMat rel;
        for (int i = 0; i < m; ++i) {
            std::uint64_t g = gens[static_cast<std::size_t>(i)];
            std::uint64_t x = g;
            long k = 1;
            while (id[x] < 0) {
                x = op(x, g);
                ++k;
            }
            IntVec r(static_cast<std::size_t>(m), 0);
            for (int c = 0; c < m; ++c) r[static_cast<std::size_t>(c)] = exps[static_cast<std::size_t>(id[x]) * static_cast<std::size_t>(m) + static_cast<std::size_t>(c)];
            r[static_cast<std::size_t>(i)] -= k;
            rel.push_back(r);
            const std::size_t cur = elems.size();
            std::uint64_t pw = g;
            for (long j = 1; j < k; ++j) {
                for (std::size_t t = 0; t < cur; ++t) {
                    std::uint64_t y = op(elems[t], pw);
                    id[y] = static_cast<std::int32_t>(elems.size());
                    elems.push_back(y);
                    for (int c = 0; c < m; ++c) exps.push_back(exps[t * static_cast<std::size_t>(m) + static_cast<std::size_t>(c)] + (c == i ? static_cast<std::int32_t>(j) : 0));
                }
                pw = op(pw, g);
            }
        }
        kernel = hnf(rel);
    }

    std::optional<IntVec> solve(std::uint64_t target) const {
        if (id[target] < 0) return std::nullopt;
        IntVec k(static_cast<std::size_t>(m));
        for (int c = 0; c < m; ++c) k[static_cast<std::size_t>(c)] = exps[static_cast<std::size_t>(id[target]) * static_cast<std::size_t>(m) + static_cast<std::size_t>(c)];
        return k;
    }
};

RayContext::RayContext(const FieldPtr& F, Modulus m) : F_(F), m_(std::move(m)) {
    gens_.push_back(-F->one());
    for (auto& u : unit_generators(F)) gens_.push_back(u);
    for (auto& [P, k] : m_.finite) {
        auto c = std::make_unique<Component>();
        c->ring = residue_ring(P, k);
        c->size = c->ring->size();
        std::vector<std::uint64_t> g;
        for (auto& u : gens_) g.push_back(c->encode(u));
        c->build(g);
        comps_.push_back(std::move(c));
    }
    if (m_.infinite_all) {
        auto c = std::make_unique<Component>();
        c->is_sign = true;
        c->n_emb = F->degree();
        c->size = std::uint64_t(1) << F->degree();
        std::vector<std::uint64_t> g;
        for (auto& u : gens_) g.push_back(c->encode(u));
        c->build(g);
        comps_.push_back(std::move(c));
    }
}

RayContext::~RayContext() = default;

std::optional<Elt> RayContext::unit_with_image(const Elt& gamma) const {
    const std::size_t m = gens_.size();
    IntVec k0(m, 0);
    IntMat L = identity_int(m);
    for (auto& c : comps_) {
        std::uint64_t target;
        if (c->is_sign) {
            target = c->encode(gamma);  // u must carry the signs of gamma
        } else {
            auto g = c->ring->image(gamma);
            if (!c->ring->is_unit(g)) throw Error("NotCoprime", "ideal not coprime to the modulus");
            target = c->ring->index(c->ring->inv(g));
        }
        auto kc = c->solve(target);
        if (!kc) return std::nullopt;
        // intersect k0 + L with kc + Lc
        IntMat S = L;
        for (auto& r : c->kernel) S.push_back(r);
        IntVec diff(m);
        for (std::size_t i = 0; i < m; ++i) diff[i] = (*kc)[i] - k0[i];
        auto x = solve_in_lattice(S, diff);
        if (!x) return std::nullopt;
        for (std::size_t r = 0; r < L.size(); ++r)
            for (std::size_t i = 0; i < m; ++i) k0[i] += (*x)[r] * L[r][i];
        IntMat K = integer_kernel(S);
        IntMat rows;
        for (auto& kv : K) {
            IntVec v(m, 0);
            for (std::size_t r = 0; r < L.size(); ++r)
                for (std::size_t i = 0; i < m; ++i) v[i] += kv[r] * L[r][i];
            rows.push_back(v);
        }
        L = hnf(rows);
    }
    // bring the exponents toward a balanced u*gamma
    std::vector<double> target(m, 0.0);
    if (m > 1) {
        std::vector<Elt> units(gens_.begin() + 1, gens_.end());
        auto lg = log_embeddings(gamma);
        Real mean = lg[0];
        for (std::size_t j = 1; j < lg.size(); ++j) mean = mean + lg[j];
        mean = mean / static_cast<long>(lg.size());
        std::vector<double> t;
        for (auto& v : lg) t.push_back((v - mean).to_double());
        auto k = log_solve(unit_logs(units), t);
        for (std::size_t i = 0; i + 1 < m; ++i) target[i + 1] = k[i];
    }
    for (std::size_t i = 0; i < L.size() && i < m; ++i) {
        const Int& piv = L[i][i];
        if (piv == 0) continue;
        Rat off = Rat(k0[i]) - Rat(static_cast<long>(std::llround(target[i])));
        Int c = floor_div(off.get_num() + piv / 2, piv);
        if (i == 0) c = floor_div(k0[i], piv);
        for (std::size_t j = i; j < m; ++j) k0[j] -= c * L[i][j];
    }
    Elt u = F_->one();
    if (k0[0] % 2 != 0) u = -u;
    for (std::size_t i = 1; i < m; ++i)
        if (k0[i] != 0) u = u * gens_[i].pow(k0[i].get_si());
    return u;
}

std::optional<Elt> RayContext::ray_equal(const Ideal& a, const Ideal& bb, const PrincipalOptions& opt) const {
    Ideal J = a * inv(bb);
    auto gamma = principal_generator(J, opt);
    if (!gamma) return std::nullopt;
    auto u = unit_with_image(*gamma);
    if (!u) return std::nullopt;
    Elt b = *u * *gamma;
    // replay every condition exactly
    for (int j = 0; j < F_->degree(); ++j)
        if (m_.infinite_all && b.sign_at(j) <= 0) throw Error("InternalError", "ray generator fails the sign condition");
    for (auto& [P, k] : m_.finite)
        if (!mult_congruent(b, F_->one(), P, k)) throw Error("InternalError", "ray generator fails a congruence");
    if (bb * b != a) throw Error("InternalError", "ray generator does not map b to a");
    return b;
}

std::optional<Elt> ray_equal(const Ideal& a, const Ideal& b, const Modulus& m) {
    RayContext ctx(a.field(), m);
    return ctx.ray_equal(a, b);
}

}  // namespace cmf
