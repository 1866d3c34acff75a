#pragma once

#include "cmf/rayclass.hpp"

#include <string>
#include <vector>

namespace cmf {

// E = F(sqrt(delta)) with delta totally negative and not a square.
struct CMExtension {
    FieldPtr F;
    Elt delta;
    Ideal rel_disc;
    Int abs_disc;  // |d_E| = d_F^2 N(rel_disc)

    static CMExtension make(const Elt& delta);
    int degree() const { return 2 * F->degree(); }
};

struct CMInput {
    FieldPtr F;
    Int p;
    PrimeIdeal P;  // above p
    std::vector<PrimeIdeal> R, U1, U2;
    long scan_bound = 100000;
    // Discriminant of the Galois closure of F; 0 means d_F (Galois F only).
    Int closure_disc = 0;
    // One exponent e for every prime of the modulus instead of 2 v_P(2) + 1 per prime.
    bool uniform_exponent = false;
};

struct CMConstruction {
    PrimeIdeal q;
    Elt delta;  // a * b times a unit square, balanced
    CMExtension E;
    // intermediate data of the construction
    std::vector<PrimeIdeal> T1, T2;
    int e = 0;  // largest exponent in the modulus
    Modulus m;
    Elt a, b;
};

// Throws Error("PreconditionFailed", ...) naming the violated condition.
void validate_input(const CMInput& in);

CMConstruction construct_cm(const CMInput& in);
// The first `count` accepted primes of the same scan (shared setup).
std::vector<CMConstruction> construct_cm_family(const CMInput& in, int count);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<Check> checks;
    bool all_pass() const;
};

// Independent replay: factorisation of delta, ramification support, U1 split,
// U2 inert, total negativity.
VerifyReport verify_construction(const CMExtension& E, const CMInput& in, const PrimeIdeal& q);

// True iff E/Q is not Galois.
bool verify_non_galois(const CMExtension& E);

}  // namespace cmf
