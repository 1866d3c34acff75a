#include "cmf/arith.hpp"

#include "cmf/error.hpp"

#include <algorithm>
#include <mutex>

namespace cmf {

Int isqrt(const Int& n) {
    if (n < 0) throw Error("DomainError", "isqrt of negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n, Int* root) {
    if (n < 0) return false;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
    if (root) *root = isqrt(n);
    return true;
}

std::optional<Rat> rational_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    Int a, b;
    if (!is_square(q.get_num(), &a) || !is_square(q.get_den(), &b)) return std::nullopt;
    Rat r(a, b);
    r.canonicalize();
    return r;
}

bool is_prime(const Int& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

bool is_prime_u64(std::uint64_t n) { return is_prime(Int(static_cast<unsigned long>(n))); }

Int next_prime(const Int& n) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

namespace {

Int pollard_brent(const Int& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Int y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1;
        const unsigned long m = 128;
        auto f = [&](const Int& v) {
            Int t = v * v + c;
            return Int(t % n);
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    Int d = x - y;
                    q = (q * abs(d)) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                Int d = x - ys;
                d = abs(d);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec(const Int& n, std::vector<Int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, int>> factor(const Int& n0) {
    if (n0 == 0) throw Error("DomainError", "factor(0)");
    Int n = abs(n0);
    std::vector<Int> primes;
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            primes.emplace_back(p);
            n /= p;
        }
    }
    // wheel trial division up to 10^5
    static const int inc[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    unsigned long p = 7;
    for (int i = 0; p <= 100000 && n > 1; p += inc[i++ & 7]) {
        if (Int(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            primes.emplace_back(p);
            n /= p;
        }
    }
    if (n > 1) factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Int, int>> out;
    for (const Int& q : primes) {
        if (!out.empty() && out.back().first == q)
            ++out.back().second;
        else
            out.emplace_back(q, 1);
    }
    return out;
}

int valuation(const Int& n, const Int& p) {
    if (n == 0) throw Error("DomainError", "valuation of zero");
    Int m = n;
    int v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++v;
    }
    return v;
}

int kronecker(const Int& a, const Int& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

bool is_fundamental_discriminant(const Int& d) {
    if (d == 0 || d == 1) return false;
    Int r = d % 4;
    if (r < 0) r += 4;
    if (r == 1) return squarefree_part(d) == d;
    if (r != 0) return false;
    Int m = d / 4;
    Int r4 = m % 4;
    if (r4 < 0) r4 += 4;
    if (r4 != 2 && r4 != 3) return false;
    return squarefree_part(m) == m;
}

Int squarefree_part(const Int& d) {
    if (d == 0) return 0;
    Int s = d < 0 ? Int(-1) : Int(1);
    for (auto& [p, e] : factor(d))
        if (e % 2) s *= p;
    return s;
}

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Int invert_mod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("invert_mod: not invertible");
    return r;
}

Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Int lcm_den(const std::vector<Rat>& v) {
    Int l = 1;
    for (const Rat& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    return l;
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int binomial(unsigned n, unsigned k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Int factorial(unsigned n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

std::string to_string(const Rat& q) { return q.get_str(); }

Rat parse_rat(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw UsageError("not a rational number: '" + s + "'");
    q.canonicalize();
    return q;
}

std::vector<Rat> bernoulli_numbers(unsigned n) {
    static std::mutex mu;
    static std::vector<Rat> cache{Rat(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= n) {
        // sum_{k<m} C(m+1,k) B_k = -(m+1) B_m
        unsigned m = static_cast<unsigned>(cache.size());
        Rat s = 0;
        for (unsigned k = 0; k < m; ++k) s += Rat(binomial(m + 1, k)) * cache[k];
        Rat b = -s / Rat(m + 1);
        b.canonicalize();
        cache.push_back(b);
    }
    return std::vector<Rat>(cache.begin(), cache.begin() + n + 1);
}

SpfSieve::SpfSieve(std::uint32_t limit) : spf_(static_cast<std::size_t>(limit) + 1, 0) {
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf_[i]) continue;
        for (std::uint64_t j = i; j <= limit; j += i)
            if (!spf_[j]) spf_[j] = i;
    }
}

std::vector<std::pair<std::uint32_t, int>> SpfSieve::factor(std::uint32_t n) const {
    std::vector<std::pair<std::uint32_t, int>> out;
    while (n > 1) {
        std::uint32_t p = spf_[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

}  // namespace cmf
