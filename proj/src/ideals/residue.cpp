#include "cmf/error.hpp"
#include "cmf/ideals.hpp"

#include <limits>

namespace cmf {

namespace {

std::vector<std::vector<std::int64_t>> small_hnf(const Ideal& I) {
    std::vector<std::vector<std::int64_t>> H;
    for (auto& r : I.hnf()) {
        std::vector<std::int64_t> row;
        for (auto& x : r) {
            if (!x.fits_slong_p() || abs(x) >= Int(1) << 31) throw Error("WorkloadExceeded", "residue ring modulus too large");
            row.push_back(x.get_si());
        }
        H.push_back(std::move(row));
    }
    return H;
}

std::int64_t floor_div64(__int128 a, std::int64_t b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return static_cast<std::int64_t>(q);
}

}  // namespace

ResidueRing::ResidueRing(const PrimeIdeal& P, int k) : P_(P), k_(k) {
    if (k < 1) throw Error("DomainError", "residue ring exponent must be positive");
    const FieldPtr& F = P.ideal.field();
    n_ = F->degree();
    Ideal Pk = cmf::pow(P.ideal, k);
    H_ = small_hnf(Pk);
    H1_ = small_hnf(P.ideal);
    Int M = Pk.min_integer();
    if (M >= Int(1) << 31) throw Error("WorkloadExceeded", "residue ring modulus too large");
    M_ = M.get_si();
    p_ = P.p.get_si();
    mult_.resize(static_cast<std::size_t>(n_ * n_ * n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int l = 0; l < n_; ++l) mult_[static_cast<std::size_t>((i * n_ + j) * n_ + l)] = F->mult(i, j)[static_cast<std::size_t>(l)].get_si();
    size_ = 1;
    for (int i = 0; i < n_; ++i) size_ *= static_cast<std::uint64_t>(H_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
    std::uint64_t q = 1;
    for (int i = 0; i < P.f; ++i) q *= static_cast<std::uint64_t>(p_);
    units_ = size_ / q * (q - 1);
}

void ResidueRing::reduce_in_place(std::vector<__int128>& v) const {
    for (auto& x : v) {
        x %= M_;
        if (x < 0) x += M_;
    }
    for (int i = 0; i < n_; ++i) {
        const auto& row = H_[static_cast<std::size_t>(i)];
        std::int64_t q = floor_div64(v[static_cast<std::size_t>(i)], row[static_cast<std::size_t>(i)]);
        if (q == 0) continue;
        for (int l = i; l < n_; ++l) v[static_cast<std::size_t>(l)] -= static_cast<__int128>(q) * row[static_cast<std::size_t>(l)];
    }
}

ResidueRing::Vec ResidueRing::reduce(const IntVec& v) const {
    std::vector<__int128> w(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        Int r = v[static_cast<std::size_t>(i)] % Int(M_);
        w[static_cast<std::size_t>(i)] = r.get_si();
    }
    reduce_in_place(w);
    Vec out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(w[static_cast<std::size_t>(i)]);
    return out;
}

ResidueRing::Vec ResidueRing::image(const Elt& x) const {
    if (x.is_integral()) return reduce(x.int_coords());
    Int d = x.denominator();
    const int s = valuation(d, P_.p);
    if (s == 0) {
        Vec y = reduce((x * Rat(d)).int_coords());
        Int dinv = invert_mod(d, Int(M_));
        Vec c = zero();
        c[0] = dinv.get_si();
        return mul(y, reduce(lift(c).int_coords()));
    }
    // x = w / m with w, m integral and m a P-unit
    Elt t = P_.tau * Rat(Int(1), P_.p);
    Elt ts = t.pow(static_cast<long>(P_.e) * s);
    Elt w = x * Rat(d) * ts;
    Elt m = ts * Rat(d);
    if (!w.is_integral() || !m.is_integral()) throw Error("NotCoprime", "element is not integral at " + P_.label);
    Vec mv = reduce(m.int_coords());
    if (!is_unit(mv)) throw Error("NotCoprime", "element is not integral at " + P_.label);
    return mul(reduce(w.int_coords()), inv(mv));
}

Elt ResidueRing::lift(const Vec& a) const {
    IntVec c;
    for (auto x : a) c.emplace_back(static_cast<long>(x));
    return Elt::from_ints(P_.ideal.field(), c);
}

ResidueRing::Vec ResidueRing::one() const {
    Vec o = zero();
    o[0] = 1;
    std::vector<__int128> w(o.begin(), o.end());
    reduce_in_place(w);
    for (int i = 0; i < n_; ++i) o[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(w[static_cast<std::size_t>(i)]);
    return o;
}

ResidueRing::Vec ResidueRing::add(const Vec& a, const Vec& b) const {
    std::vector<__int128> w(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) w[static_cast<std::size_t>(i)] = static_cast<__int128>(a[static_cast<std::size_t>(i)]) + b[static_cast<std::size_t>(i)];
    reduce_in_place(w);
    Vec out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(w[static_cast<std::size_t>(i)]);
    return out;
}

ResidueRing::Vec ResidueRing::sub(const Vec& a, const Vec& b) const {
    std::vector<__int128> w(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) w[static_cast<std::size_t>(i)] = static_cast<__int128>(a[static_cast<std::size_t>(i)]) - b[static_cast<std::size_t>(i)];
    reduce_in_place(w);
    Vec out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(w[static_cast<std::size_t>(i)]);
    return out;
}

ResidueRing::Vec ResidueRing::mul(const Vec& a, const Vec& b) const {
    std::vector<__int128> w(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (b[static_cast<std::size_t>(j)] == 0) continue;
            __int128 ab = static_cast<__int128>(a[static_cast<std::size_t>(i)]) * b[static_cast<std::size_t>(j)] % M_;
            const std::int64_t* m = &mult_[static_cast<std::size_t>((i * n_ + j) * n_)];
            for (int l = 0; l < n_; ++l) w[static_cast<std::size_t>(l)] += ab * m[l];
        }
    }
    reduce_in_place(w);
    Vec out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(w[static_cast<std::size_t>(i)]);
    return out;
}

ResidueRing::Vec ResidueRing::pow(const Vec& a, Int e) const {
    if (e < 0) return pow(inv(a), -e);
    Vec r = one(), b = a;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul(r, b);
        e >>= 1;
        if (e > 0) b = mul(b, b);
    }
    return r;
}

ResidueRing::Vec ResidueRing::inv(const Vec& a) const {
    if (!is_unit(a)) throw Error("NotCoprime", "inverting a non-unit residue");
    return pow(a, Int(static_cast<unsigned long>(units_ - 1)));
}

bool ResidueRing::is_unit(const Vec& a) const {
    std::vector<__int128> w(a.begin(), a.end());
    for (auto& x : w) {
        x %= p_;
        if (x < 0) x += p_;
    }
    for (int i = 0; i < n_; ++i) {
        const auto& row = H1_[static_cast<std::size_t>(i)];
        std::int64_t q = floor_div64(w[static_cast<std::size_t>(i)], row[static_cast<std::size_t>(i)]);
        for (int l = i; l < n_; ++l) w[static_cast<std::size_t>(l)] -= static_cast<__int128>(q) * row[static_cast<std::size_t>(l)];
    }
    for (auto x : w)
        if (x != 0) return true;
    return false;
}

bool ResidueRing::is_zero(const Vec& a) const {
    for (auto x : a)
        if (x != 0) return false;
    return true;
}

std::uint64_t ResidueRing::index(const Vec& a) const {
    std::uint64_t r = 0;
    for (int i = n_ - 1; i >= 0; --i)
        r = r * static_cast<std::uint64_t>(H_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]) + static_cast<std::uint64_t>(a[static_cast<std::size_t>(i)]);
    return r;
}

ResidueRing::Vec ResidueRing::from_index(std::uint64_t idx) const {
    Vec a(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        std::uint64_t m = static_cast<std::uint64_t>(H_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
        a[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(idx % m);
        idx /= m;
    }
    return a;
}

std::shared_ptr<const ResidueRing> residue_ring(const PrimeIdeal& P, int k) {
    const FieldPtr& F = P.ideal.field();
    const std::string key = "ring:" + P.label + ":" + std::to_string(k);
    if (auto c = F->memo_get(key)) return std::static_pointer_cast<const ResidueRing>(c);
    auto R = std::make_shared<ResidueRing>(P, k);
    F->memo_put(key, std::const_pointer_cast<ResidueRing>(R));
    return R;
}

// ---------------------------------------------------------------------------
// Local behaviour of quadratic extensions

const char* to_string(LocalType t) {
    switch (t) {
        case LocalType::Split: return "Split";
        case LocalType::Inert: return "Inert";
        case LocalType::Ramified: return "Ramified";
    }
    return "?";
}

Elt unitize(const Elt& x, const PrimeIdeal& P) {
    Int d = x.denominator();
    Elt y = x * Rat(d * d);
    int v = valuation(y, P);
    if (v % 2 != 0) throw Error("DomainError", "odd valuation has no unit square class");
    if (v > 0) y = y * (P.tau * Rat(Int(1), P.p)).pow(v);
    if (!y.is_integral()) throw Error("InternalError", "unitize produced a non-integral element");
    return y;
}

namespace {

struct SquareTable {
    std::vector<std::vector<bool>> levels;  // [t-1][index] for O/P^t
};

std::shared_ptr<SquareTable> square_table(const PrimeIdeal& P, int max_level) {
    const FieldPtr& F = P.ideal.field();
    const std::string key = "squares:" + P.label + ":" + std::to_string(max_level);
    if (auto c = F->memo_get(key)) return std::static_pointer_cast<SquareTable>(c);
    auto tab = std::make_shared<SquareTable>();
    for (int t = 1; t <= max_level; ++t) {
        const ResidueRing& R = *residue_ring(P, t);
        std::vector<bool> sq(R.size(), false);
        for (std::uint64_t i = 0; i < R.size(); ++i) {
            auto x = R.from_index(i);
            if (!R.is_unit(x)) continue;
            sq[R.index(R.mul(x, x))] = true;
        }
        tab->levels.push_back(std::move(sq));
    }
    F->memo_put(key, tab);
    return tab;
}

}  // namespace

int square_depth(const PrimeIdeal& P, const Elt& u, int max_level) {
    auto tab = square_table(P, max_level);
    int t = 0;
    for (int l = 1; l <= max_level; ++l) {
        const ResidueRing& R = *residue_ring(P, l);
        auto x = R.image(u);
        if (!R.is_unit(x)) throw Error("NotCoprime", "square_depth needs a unit");
        if (tab->levels[static_cast<std::size_t>(l - 1)][R.index(x)])
            t = l;
        else
            break;
    }
    return t;
}

LocalQuadratic local_quadratic(const PrimeIdeal& P, const Elt& delta) {
    if (delta.is_zero()) throw Error("ZeroElement", "quadratic extension by zero");
    const int v = valuation(delta, P);
    const bool even = P.p == 2;
    if (v % 2 != 0) return {LocalType::Ramified, even ? 2 * P.e + 1 : 1};
    Elt u = unitize(delta, P);
    if (!even) {
        const ResidueRing& R = *residue_ring(P, 1);
        Int q = P.norm();
        auto r = R.pow(R.image(u), (q - 1) / 2);
        return {r == R.one() ? LocalType::Split : LocalType::Inert, 0};
    }
    const int top = 2 * P.e + 1;
    const int t = square_depth(P, u, top);
    if (t >= top) return {LocalType::Split, 0};
    if (t == 2 * P.e) return {LocalType::Inert, 0};
    return {LocalType::Ramified, top - t};
}

LocalType splitting_in_quadratic_ext(const PrimeIdeal& P, const Elt& delta) {
    if (is_square(delta)) throw Error("DeltaSquare", "delta is a square in F");
    return local_quadratic(P, delta).type;
}

}  // namespace cmf
