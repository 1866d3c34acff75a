#include "cmf/error.hpp"
#include "cmf/ideals.hpp"
#include "cmf/polymod.hpp"

#include <algorithm>
#include <cctype>

namespace cmf {

Int PrimeIdeal::norm() const { return pow_int(p, static_cast<unsigned long>(f)); }

bool PrimeIdeal::operator<(const PrimeIdeal& o) const {
    if (p != o.p) return p < o.p;
    if (ideal.field() != o.ideal.field()) return ideal.field() < o.ideal.field();
    return label < o.label;
}

namespace {

using PrimeList = std::vector<std::pair<PrimeIdeal, int>>;

Elt eval_poly(const fp::Poly& h, const Elt& a) {
    Elt r = a.field()->zero();
    for (std::size_t k = h.size(); k-- > 0;) r = r * a + Rat(Int(static_cast<long>(h[k])));
    return r;
}

// An integral element generating a subring whose index is prime to p.
std::pair<Elt, IntVec> kummer_generator(const FieldPtr& F, const Int& p) {
    const int n = F->degree();
    std::vector<Elt> cands;
    if (n == 2) cands.push_back(F->basis_elt(1));
    if (n == 3) {
        cands.push_back(F->theta() * Rat(F->theta().denominator()));
        for (long a = -3; a <= 3; ++a)
            for (long b = 1; b <= 3; ++b) cands.push_back(F->basis_elt(1) * Rat(b) + F->basis_elt(2) * Rat(a));
        for (long a = 1; a <= 3; ++a) cands.push_back(F->basis_elt(1) + F->basis_elt(2) * Rat(a));
    }
    for (const Elt& a : cands) {
        RatVec cp = a.charpoly();
        IntVec g;
        for (auto& c : cp) g.push_back(c.get_num());
        Int pd = poly_discriminant(g);
        if (pd == 0) continue;
        Int idx2 = pd / F->disc();
        Int idx = isqrt(abs(idx2));
        if (idx % p != 0) return {a, g};
    }
    throw Error("IndexDivisor", "p = " + p.get_str() + " divides the index of every tried monogenic suborder");
}

PrimeList compute_primes(const FieldPtr& F, const Int& p) {
    const int n = F->degree();
    PrimeList out;
    if (n == 1) {
        PrimeIdeal P;
        P.ideal = Ideal::principal(F->one() * Rat(p));
        P.p = p;
        P.f = P.e = 1;
        P.beta = F->one() * Rat(p);
        P.tau = F->one();
        P.label = p.get_str();
        out.emplace_back(P, 1);
        return out;
    }
    if (!p.fits_slong_p() || p > Int(1) << 31) throw Error("DomainError", "prime too large for residue arithmetic");
    const std::int64_t pl = p.get_si();
    auto [alpha, g] = kummer_generator(F, p);
    auto facs = fp::factor(fp::reduce(g, pl), pl);
    struct Entry {
        PrimeIdeal P;
        int e;
        fp::Poly h;
    };
    std::vector<Entry> entries;
    int total = 0;
    for (auto& [h, mult] : facs) {
        Entry en;
        en.h = h;
        en.e = mult;
        PrimeIdeal& P = en.P;
        P.p = p;
        P.f = fp::deg(h);
        P.e = mult;
        P.beta = eval_poly(h, alpha);
        P.ideal = Ideal::from_generators(F, {F->one() * Rat(p), P.beta});
        if (P.ideal.norm() != Rat(pow_int(p, static_cast<unsigned long>(P.f))))
            throw Error("InternalError", "Kummer-Dedekind prime has unexpected norm");
        Ideal pinv = inv(P.ideal);
        bool found = false;
        for (const Elt& b : pinv.basis()) {
            Elt t = b * Rat(p);
            bool in_pO = true;
            for (auto& c : t.coords())
                if (Rat(c / p).get_den() != 1) in_pO = false;
            if (!in_pO) {
                P.tau = t;
                found = true;
                break;
            }
        }
        if (!found) throw Error("InternalError", "no uniformiser complement found");
        total += P.e * P.f;
        entries.push_back(std::move(en));
    }
    if (total != n) throw Error("InternalError", "sum e*f differs from the degree");
    // degree-1 primes ordered by their root, others by coefficients
    std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
        if (a.P.f != b.P.f) return a.P.f < b.P.f;
        if (a.P.f == 1) return (pl - a.h[0]) % pl < (pl - b.h[0]) % pl;
        return a.h < b.h;
    });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        entries[i].P.label = p.get_str();
        if (entries.size() > 1) entries[i].P.label += static_cast<char>('a' + i);
        out.emplace_back(entries[i].P, entries[i].e);
    }
    return out;
}

}  // namespace

std::vector<std::pair<PrimeIdeal, int>> factor_rational_prime(const FieldPtr& F, const Int& p) {
    if (p < 2 || !is_prime(p)) throw Error("DomainError", "not a prime: " + p.get_str());
    const std::string key = "primes:" + p.get_str();
    if (auto c = F->memo_get(key)) return *std::static_pointer_cast<PrimeList>(c);
    auto v = std::make_shared<PrimeList>(compute_primes(F, p));
    F->memo_put(key, v);
    return *v;
}

PrimeIdeal prime_by_label(const FieldPtr& F, const std::string& label) {
    std::size_t i = 0;
    while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i]))) ++i;
    if (i == 0) throw UsageError("bad prime label '" + label + "'");
    Int p(label.substr(0, i));
    auto primes = factor_rational_prime(F, p);
    if (i == label.size()) {
        if (primes.size() != 1) throw UsageError("prime label '" + label + "' is ambiguous: " + p.get_str() + " is not inert or totally ramified");
        return primes[0].first;
    }
    if (i + 1 != label.size()) throw UsageError("bad prime label '" + label + "'");
    for (auto& [P, e] : primes)
        if (P.label == label) return P;
    throw UsageError("no prime labelled '" + label + "'");
}

int valuation(const Elt& x, const PrimeIdeal& P) {
    if (x.is_zero()) throw Error("ZeroElement", "valuation of zero");
    Int d = x.denominator();
    Elt y = x * Rat(d);
    const Rat pinv(Int(1), P.p);
    int v = 0;
    for (;;) {
        Elt z = y * P.tau * pinv;
        if (!z.is_integral()) break;
        y = std::move(z);
        ++v;
    }
    return v - P.e * valuation(d, P.p);
}

int valuation(const Ideal& I, const PrimeIdeal& P) {
    int best = 0;
    bool first = true;
    for (const Elt& b : I.basis()) {
        if (b.is_zero()) continue;
        int v = valuation(b, P);
        if (first || v < best) best = v;
        first = false;
    }
    return best;
}

std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const Ideal& I) {
    // support of I lies in the support of the integral ideal den*I and of den
    const Int& den = I.denom();
    Rat N = I.norm() * Rat(pow_int(den, static_cast<unsigned long>(I.field()->degree())));
    std::vector<Int> ps;
    for (auto& [p, k] : factor(N.get_num())) ps.push_back(p);
    for (auto& [p, k] : factor(den)) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::vector<std::pair<PrimeIdeal, int>> out;
    for (const Int& p : ps)
        for (auto& [P, e] : factor_rational_prime(I.field(), p)) {
            int v = valuation(I, P);
            if (v != 0) out.emplace_back(P, v);
        }
    return out;
}

Ideal ideal_product(const FieldPtr& F, const std::vector<std::pair<PrimeIdeal, int>>& fac) {
    Ideal r = Ideal::unit(F);
    for (auto& [P, k] : fac) r = r * pow(P.ideal, k);
    return r;
}

}  // namespace cmf
