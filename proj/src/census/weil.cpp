#include "cmf/census.hpp"
#include "cmf/error.hpp"

#include <omp.h>

#include <ostream>

namespace cmf {

namespace {

using i128 = __int128;

// L >= c * sqrt(q)
bool ge_surd(i128 L, i128 c, i128 q) {
    if (c <= 0) return L >= 0 || L * L <= c * c * q;
    return L >= 0 && L * L >= c * c * q;
}

long isqrt_long(long n) { return isqrt(Int(n)).get_si(); }

struct RowAccum {
    long region = 0, kept = 0;
    std::map<GaloisType, long> counts;
    std::vector<WeilRecord> recs;
};

void scan_a(long q, long a, RowAccum& acc, bool keep) {
    // b between 2|a|sqrt(q) - 2q and a^2/4 + 2q
    const long lo = isqrt_long(4 * a * a * q) - 2 * q - 1;
    const long hi = (a * a) / 4 + 2 * q + 1;
    const Int Q(q);
    for (long b = lo; b <= hi; ++b) {
        if (!in_weil_region(q, a, b)) continue;
        ++acc.region;
        std::vector<Int> f{Q * Q, Int(a) * Q, Int(b), Int(a), Int(1)};
        if (!quartic_irreducible(f)) {
            if (keep) acc.recs.push_back({q, a, b, false, GaloisType::S4});
            continue;
        }
        GaloisType t = classify_quartic_poly(f);
        ++acc.kept;
        ++acc.counts[t];
        if (keep) acc.recs.push_back({q, a, b, true, t});
    }
}

long checked_power(long p, int n) {
    if (p < 2 || !is_prime(Int(p))) throw UsageError("p must be prime");
    if (n < 1) throw UsageError("n must be positive");
    Int q = pow_int(Int(p), static_cast<unsigned long>(n));
    if (q > Int(1) << 40) throw Error("WorkloadExceeded", "q = p^n too large for the Weil census");
    return q.get_si();
}

WeilRow finish(int n, long q, std::vector<RowAccum>& parts, std::vector<WeilRecord>* records) {
    WeilRow row;
    row.n = n;
    row.q = q;
    for (auto& acc : parts) {
        row.region += acc.region;
        row.kept += acc.kept;
        for (auto& [t, c] : acc.counts) row.counts[t] += c;
        if (records) records->insert(records->end(), acc.recs.begin(), acc.recs.end());
    }
    return row;
}

}  // namespace

bool in_weil_region(long q, long a, long b) {
    const i128 A = a, B = b, Q = q;
    if (A * A < 4 * (B - 2 * Q)) return false;
    if (A * A > 16 * Q) return false;
    return ge_surd(B + 2 * Q, 2 * A, Q) && ge_surd(B + 2 * Q, -2 * A, Q);
}

std::vector<WeilPair> weil_region(long q) {
    if (q < 1) throw UsageError("q must be positive");
    std::vector<WeilPair> out;
    const long amax = isqrt_long(16 * q);
    for (long a = -amax; a <= amax; ++a) {
        const long lo = isqrt_long(4 * a * a * q) - 2 * q - 1;
        const long hi = (a * a) / 4 + 2 * q + 1;
        for (long b = lo; b <= hi; ++b)
            if (in_weil_region(q, a, b)) out.push_back({a, b});
    }
    return out;
}

WeilRow weil_census_row_serial(long p, int n, std::vector<WeilRecord>* records) {
    const long q = checked_power(p, n);
    const long amax = isqrt_long(16 * q);
    std::vector<RowAccum> parts(static_cast<std::size_t>(2 * amax + 1));
    for (long a = -amax; a <= amax; ++a) scan_a(q, a, parts[static_cast<std::size_t>(a + amax)], records != nullptr);
    return finish(n, q, parts, records);
}

WeilRow weil_census_row(long p, int n, int jobs, std::vector<WeilRecord>* records) {
    const long q = checked_power(p, n);
    const long amax = isqrt_long(16 * q);
    std::vector<RowAccum> parts(static_cast<std::size_t>(2 * amax + 1));
    const int nt = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
    for (long a = -amax; a <= amax; ++a) scan_a(q, a, parts[static_cast<std::size_t>(a + amax)], records != nullptr);
    return finish(n, q, parts, records);
}

std::vector<WeilRow> weil_census(long p, int n_lo, int n_hi, int jobs) {
    if (n_lo > n_hi) throw UsageError("empty n range");
    std::vector<WeilRow> rows;
    for (int n = n_lo; n <= n_hi; ++n) rows.push_back(weil_census_row(p, n, jobs));
    return rows;
}

void write_weil_csv(std::ostream& os, const std::vector<WeilRecord>& recs) {
    os << "q,a,b,galois\n";
    for (auto& r : recs)
        if (r.irreducible) os << r.q << ',' << r.a << ',' << r.b << ',' << to_string(r.galois) << '\n';
}

}  // namespace cmf
