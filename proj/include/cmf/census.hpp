#pragma once

#include "cmf/galclass.hpp"
#include "cmf/ideals.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cmf {

// Relative discriminant of F(sqrt(delta))/F for a non-square delta.
Ideal relative_discriminant(const FieldPtr& F, const Elt& delta);
// Its norm, without building the ideal.
Int relative_discriminant_norm(const FieldPtr& F, const Elt& delta);

// ---------------------------------------------------------------------------
// Quartic CM fields ordered by discriminant

struct CensusRecord {
    Int dE;
    Int dF;
    Int m;     // F = Q(sqrt m)
    Rat a, b;  // delta = a + b sqrt m
    GaloisType galois = GaloisType::D4;

    bool operator==(const CensusRecord& o) const {
        return dE == o.dE && dF == o.dF && a == o.a && b == o.b && galois == o.galois;
    }
};

struct CensusResult {
    long X = 0;
    std::map<GaloisType, long> counts;
    long total = 0;
    std::vector<CensusRecord> records;  // sorted by (dE, dF, a, b)

    long count(GaloisType t) const {
        auto it = counts.find(t);
        return it == counts.end() ? 0 : it->second;
    }
};

struct CensusOptions {
    int jobs = 0;                 // 0: OpenMP default
    std::string checkpoint;       // empty: no checkpointing
    // Called after each real quadratic field is finished (fundamental discriminant).
    std::function<void(long)> progress;
};

// Fundamental discriminants D > 1 with D^2 <= X.
std::vector<long> census_discriminants(long X);
// All quartic CM fields with real quadratic subfield of discriminant D and |d_E| <= X.
std::vector<CensusRecord> census_for_discriminant(long D, long X);

CensusResult enumerate_quartic_cm(long X, const CensusOptions& opt = {});
CensusResult enumerate_quartic_cm_serial(long X);

// Columns d_E, d_F, a, b, galois, weyl.
void write_census_csv(std::ostream& os, const CensusResult& r);

// ---------------------------------------------------------------------------
// Quartic Weil polynomials x^4 + a x^3 + b x^2 + a q x + q^2

struct WeilPair {
    long a, b;
    bool operator==(const WeilPair& o) const { return a == o.a && b == o.b; }
};

// Pairs whose polynomial x^2 + a x + (b - 2q) has both roots in [-2 sqrt q, 2 sqrt q].
std::vector<WeilPair> weil_region(long q);
bool in_weil_region(long q, long a, long b);

struct WeilRow {
    int n = 0;
    long q = 0;
    long region = 0;
    long kept = 0;  // irreducible (hence without real roots)
    std::map<GaloisType, long> counts;

    long count(GaloisType t) const {
        auto it = counts.find(t);
        return it == counts.end() ? 0 : it->second;
    }
    double d4_proportion() const { return kept ? static_cast<double>(count(GaloisType::D4)) / static_cast<double>(kept) : 0.0; }
};

struct WeilRecord {
    long q, a, b;
    bool irreducible;
    GaloisType galois;
};

WeilRow weil_census_row(long p, int n, int jobs = 0, std::vector<WeilRecord>* records = nullptr);
WeilRow weil_census_row_serial(long p, int n, std::vector<WeilRecord>* records = nullptr);
std::vector<WeilRow> weil_census(long p, int n_lo, int n_hi, int jobs = 0);

// Columns q, a, b, galois (irreducible polynomials only).
void write_weil_csv(std::ostream& os, const std::vector<WeilRecord>& recs);

}  // namespace cmf
