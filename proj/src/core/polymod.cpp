#include "cmf/polymod.hpp"

#include "cmf/error.hpp"

#include <algorithm>

namespace cmf::fp {

namespace {

std::int64_t mulm(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t modp(const Int& x, std::int64_t p) {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
    return r.get_si();
}

}  // namespace

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly reduce(const std::vector<Int>& f, std::int64_t p) {
    Poly r;
    for (const Int& c : f) r.push_back(modp(c, p));
    trim(r);
    return r;
}

Poly add(const Poly& a, const Poly& b, std::int64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = s % p;
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, std::int64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t s = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
        r[i] = ((s % p) + p) % p;
    }
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulm(a[i], b[j], p)) % p;
    trim(r);
    return r;
}

std::int64_t pow_mod(std::int64_t a, Int e, std::int64_t p) {
    std::int64_t r = 1 % p;
    a %= p;
    if (a < 0) a += p;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw Error("DomainError", "inverse of zero mod p");
    return pow_mod(a, Int(static_cast<long>(p - 2)), p);
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, std::int64_t p) {
    if (b.empty()) throw Error("DomainError", "polynomial division by zero");
    Poly r = a, q;
    const int db = deg(b);
    const std::int64_t li = inv_mod(b.back(), p);
    if (deg(r) >= db) q.assign(static_cast<std::size_t>(deg(r) - db + 1), 0);
    while (!r.empty() && deg(r) >= db) {
        const int s = deg(r) - db;
        const std::int64_t c = mulm(r.back(), li, p);
        q[static_cast<std::size_t>(s)] = c;
        for (int i = 0; i <= db; ++i) {
            auto& t = r[static_cast<std::size_t>(i + s)];
            t = ((t - mulm(c, b[static_cast<std::size_t>(i)], p)) % p + p) % p;
        }
        trim(r);
    }
    trim(q);
    return {q, r};
}

Poly make_monic(const Poly& a, std::int64_t p) {
    if (a.empty()) return a;
    const std::int64_t li = inv_mod(a.back(), p);
    Poly r = a;
    for (auto& c : r) c = mulm(c, li, p);
    return r;
}

Poly gcd(Poly a, Poly b, std::int64_t p) {
    while (!b.empty()) {
        Poly r = divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a, p);
}

Poly powmod(const Poly& base, Int e, const Poly& mod, std::int64_t p) {
    Poly r{1};
    Poly b = divmod(base, mod, p).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = divmod(mul(r, b, p), mod, p).second;
        b = divmod(mul(b, b, p), mod, p).second;
        e >>= 1;
    }
    return r;
}

namespace {

// Split a squarefree product of distinct monic linear factors into roots.
void split_linear(const Poly& g, std::int64_t p, std::vector<std::int64_t>& roots) {
    if (deg(g) <= 0) return;
    if (deg(g) == 1) {
        roots.push_back(((-g[0]) % p + p) % p);
        return;
    }
    if (p <= 64) {
        for (std::int64_t x = 0; x < p; ++x) {
            std::int64_t v = 0;
            for (int i = deg(g); i >= 0; --i) v = (mulm(v, x, p) + g[static_cast<std::size_t>(i)]) % p;
            if (v == 0) roots.push_back(x);
        }
        return;
    }
    for (std::int64_t a = 1;; ++a) {
        Poly h = powmod(Poly{a, 1}, Int(static_cast<long>((p - 1) / 2)), g, p);
        h = sub(h, Poly{1}, p);
        Poly d = gcd(g, h, p);
        if (deg(d) > 0 && deg(d) < deg(g)) {
            split_linear(d, p, roots);
            split_linear(divmod(g, d, p).first, p, roots);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f0, std::int64_t p) {
    Poly f = make_monic(f0, p);
    if (deg(f) > 3) throw Error("DomainError", "factorisation mod p limited to degree 3");
    std::vector<std::pair<Poly, int>> out;
    if (deg(f) <= 0) return out;
    Poly xp = powmod(Poly{0, 1}, Int(static_cast<long>(p)), f, p);
    Poly lin = gcd(f, sub(xp, Poly{0, 1}, p), p);
    std::vector<std::int64_t> roots;
    split_linear(lin, p, roots);
    std::sort(roots.begin(), roots.end());
    Poly rest = f;
    for (std::int64_t r : roots) {
        Poly l{(p - r) % p, 1};
        int e = 0;
        for (;;) {
            auto [q, rem] = divmod(rest, l, p);
            if (!rem.empty()) break;
            rest = q;
            ++e;
        }
        out.emplace_back(l, e);
    }
    if (deg(rest) > 0) {
        // no roots remain, so rest is irreducible of degree 2 or 3, or the square of
        // an irreducible quadratic (impossible for degree <= 3)
        out.emplace_back(make_monic(rest, p), 1);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    return out;
}

}  // namespace cmf::fp
