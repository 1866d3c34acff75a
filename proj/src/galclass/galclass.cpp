#include "cmf/galclass.hpp"

#include "cmf/error.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace cmf {

std::string to_string(GaloisType t) {
    switch (t) {
        case GaloisType::C4: return "C4";
        case GaloisType::V4: return "V4";
        case GaloisType::D4: return "D4";
        case GaloisType::A4: return "A4";
        case GaloisType::S4: return "S4";
    }
    return "?";
}

GaloisType galois_type_from_string(const std::string& s) {
    for (auto t : {GaloisType::C4, GaloisType::V4, GaloisType::D4, GaloisType::A4, GaloisType::S4})
        if (to_string(t) == s) return t;
    throw UsageError("unknown Galois type '" + s + "'");
}

int closure_degree(GaloisType t) {
    switch (t) {
        case GaloisType::C4:
        case GaloisType::V4: return 4;
        case GaloisType::D4: return 8;
        case GaloisType::A4: return 12;
        case GaloisType::S4: return 24;
    }
    return 0;
}

namespace {

bool rat_is_square(const Rat& q) { return q >= 0 && rational_sqrt(q).has_value(); }

bool int_is_square(const Int& n) { return n >= 0 && is_square(n); }

Int eval(const std::vector<Int>& g, const Int& y) {
    Int r = 0;
    for (std::size_t k = g.size(); k-- > 0;) r = r * y + g[k];
    return r;
}

// Integer root of g in [lo, hi] where g is monotone on the integers of the range.
std::optional<Int> monotone_root(const std::vector<Int>& g, Int lo, Int hi) {
    if (lo > hi) return std::nullopt;
    Int vlo = eval(g, lo), vhi = eval(g, hi);
    if (vlo == 0) return lo;
    if (vhi == 0) return hi;
    if (sgn(vlo) == sgn(vhi)) return std::nullopt;
    const int s = sgn(vlo);
    while (hi - lo > 1) {
        Int mid = floor_div(lo + hi, 2);
        Int v = eval(g, mid);
        if (v == 0) return mid;
        if (sgn(v) == s) lo = mid;
        else hi = mid;
    }
    return std::nullopt;
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> ds{1};
    for (auto& [p, k] : factor(abs(n))) {
        const std::size_t cur = ds.size();
        Int pk = 1;
        for (int i = 1; i <= k; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < cur; ++j) ds.push_back(ds[j] * pk);
        }
    }
    const std::size_t cur = ds.size();
    for (std::size_t j = 0; j < cur; ++j) ds.push_back(-ds[j]);
    return ds;
}

Int cubic_disc(const std::vector<Int>& g) {
    const Int& D = g[0];
    const Int& C = g[1];
    const Int& B = g[2];
    return B * B * C * C - 4 * C * C * C - 4 * B * B * B * D - 27 * D * D + 18 * B * C * D;
}

void check_monic_quartic(const std::vector<Int>& f) {
    if (f.size() != 5 || f[4] != 1) throw UsageError("expected a monic quartic given as c0..c4");
}

}  // namespace

std::vector<Int> cm_quartic_poly(const Int& d, const Rat& a, const Rat& b) {
    // x^4 - 2 c^2 a x^2 + c^4 (a^2 - d b^2); per prime the least v_p(c) making both integral
    const Rat t = 2 * a, N = a * a - b * b * Rat(d);
    auto v = [](const Rat& q, const Int& p) { return q == 0 ? 1 << 20 : valuation(q.get_num(), p) - valuation(q.get_den(), p); };
    Int c = 1;
    for (auto& [p, k] : factor(lcm(a.get_den(), b.get_den()))) {
        int e = 0;
        while (v(t, p) + 2 * e < 0 || v(N, p) + 4 * e < 0) ++e;
        c *= pow_int(p, static_cast<unsigned long>(e));
    }
    const Int c2 = c * c;
    Rat T = t * Rat(c2), M = N * Rat(c2 * c2);
    T.canonicalize();
    M.canonicalize();
    return {M.get_num(), 0, -T.get_num(), 0, 1};
}

GaloisType classify_quartic_cm(const Int& d, const Rat& a, const Rat& b) {
    if (d <= 1 || squarefree_part(d) != d) throw UsageError("d must be a squarefree integer > 1");
    const Rat N = a * a - b * b * Rat(d);
    if (!(a < 0 && N > 0)) throw Error("NotTotallyNegative", "delta = a + b sqrt(d) must be totally negative");
    if (b == 0) return GaloisType::V4;
    if (rat_is_square(N)) return GaloisType::V4;
    if (rat_is_square(N * Rat(d))) return GaloisType::C4;
    return GaloisType::D4;
}

std::vector<Int> cubic_integer_roots(const std::vector<Int>& g) {
    if (g.size() != 4 || g[3] != 1) throw UsageError("expected a monic cubic given as c0..c3");
    Int M = 1 + std::max({abs(g[0]), abs(g[1]), abs(g[2])});
    std::set<Int> roots;
    auto add = [&](const std::optional<Int>& r) {
        if (r) roots.insert(*r);
    };
    // critical points of g: (-c2 -+ sqrt(c2^2 - 3 c1)) / 3
    Int disc = g[2] * g[2] - 3 * g[1];
    if (disc <= 0) {
        add(monotone_root(g, -M, M));
    } else {
        Int s = isqrt(disc);
        Int k1 = floor_div(-g[2] - s, 3), k2 = floor_div(-g[2] + s, 3);
        add(monotone_root(g, -M, k1 - 1));
        add(monotone_root(g, k1 + 1, k2 - 1));
        add(monotone_root(g, k2 + 1, M));
        for (const Int& k : {k1, k2})
            if (eval(g, k) == 0) roots.insert(k);
    }
    return {roots.begin(), roots.end()};
}

std::vector<Int> resolvent_cubic(const std::vector<Int>& f) {
    check_monic_quartic(f);
    const Int &d = f[0], &c = f[1], &b = f[2], &a = f[3];
    return {-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1};
}

bool quartic_irreducible(const std::vector<Int>& f) {
    check_monic_quartic(f);
    const Int &c0 = f[0], &c1 = f[1], &c2 = f[2], &c3 = f[3];
    if (c0 == 0) return false;
    auto ds = divisors(c0);
    for (const Int& r : ds)
        if (eval(f, r) == 0) return false;
    // (x^2 + p x + q)(x^2 + r x + s), q s = c0
    for (const Int& q : ds) {
        Int s = c0 / q;
        if (q != s) {
            Int num = c1 - q * c3, den = s - q;
            if (num % den != 0) continue;
            Int p = num / den, r = c3 - p;
            if (q + s + p * r == c2) return false;
        } else {
            if (q * c3 != c1) continue;
            Int D = c3 * c3 - 4 * (c2 - 2 * q);
            if (int_is_square(D)) return false;
        }
    }
    return true;
}

GaloisType classify_quartic_poly(const std::vector<Int>& f) {
    if (!quartic_irreducible(f)) throw Error("Reducible", "quartic is reducible over Q");
    auto R = resolvent_cubic(f);
    auto roots = cubic_integer_roots(R);
    const Int disc = cubic_disc(R);
    if (roots.empty()) return int_is_square(disc) ? GaloisType::A4 : GaloisType::S4;
    if (roots.size() > 1) return GaloisType::V4;
    // one rational root r: D4 or C4 (Kappe-Warren)
    const Int& r = roots[0];
    const Int &d = f[0], &b = f[2], &a = f[3];
    auto splits = [&](const Int& t) { return int_is_square(t) || int_is_square(t * disc); };
    if (splits(r * r - 4 * d) && splits(a * a - 4 * (b - r))) return GaloisType::C4;
    return GaloisType::D4;
}

Int weyl_group_order(int g) {
    if (g < 1) throw UsageError("g must be positive");
    return pow_int(2, static_cast<unsigned long>(g)) * factorial(static_cast<unsigned>(g));
}

int reflex_degree_quartic(GaloisType t) {
    // Roots +-1, +-2 stand for +-sqrt(delta), +-sqrt(delta'); complex conjugation is negation.
    using Perm = std::array<int, 3>;  // images of 1 and 2 at indices 1 and 2
    auto apply = [](const Perm& g, int x) { return x > 0 ? g[static_cast<std::size_t>(x)] : -g[static_cast<std::size_t>(-x)]; };
    std::vector<Perm> gens;
    const Perm conj{0, -1, -2};
    switch (t) {
        case GaloisType::D4: gens = {Perm{0, 2, -1}, Perm{0, 2, 1}}; break;
        case GaloisType::C4: gens = {Perm{0, 2, -1}}; break;
        case GaloisType::V4: gens = {conj, Perm{0, 2, 1}}; break;
        default: throw Error("NotCM", "closure group " + to_string(t) + " does not occur for quartic CM fields");
    }
    // orbit of the type {1, 2} as an unordered pair
    auto key = [](int x, int y) { return std::make_pair(std::min(x, y), std::max(x, y)); };
    std::set<std::pair<int, int>> orbit{key(1, 2)};
    std::vector<std::pair<int, int>> todo{key(1, 2)};
    while (!todo.empty()) {
        auto [x, y] = todo.back();
        todo.pop_back();
        for (auto& g : gens) {
            auto k = key(apply(g, x), apply(g, y));
            if (orbit.insert(k).second) todo.push_back(k);
        }
    }
    return static_cast<int>(orbit.size());
}

}  // namespace cmf
