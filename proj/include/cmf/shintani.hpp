#pragma once

#include "cmf/cmbuild.hpp"

#include <vector>

namespace cmf {

// z = x + y*eps with 0 < x <= 1, 0 <= y < 1.
struct ShintaniPoint {
    Rat x, y;
    Elt z;
    Ideal ideal_part;  // D * z
};

// Points of D^{-1} in the half-open parallelogram spanned by 1 and eps whose
// ideal D<z> is coprime to D, sorted by (x, y). Real quadratic F only.
std::vector<ShintaniPoint> shintani_set(const FieldPtr& F, const Elt& eps, const Ideal& D, int jobs = 0);
std::vector<ShintaniPoint> shintani_set_serial(const FieldPtr& F, const Elt& eps, const Ideal& D);

// chi_{E/F}(a) for an integral ideal a coprime to the relative discriminant.
int hecke_char(const CMExtension& E, const Ideal& a);

struct CharacterRow {
    ShintaniPoint point;
    int sign;
};

struct CharacterTable {
    Elt eps;  // totally positive fundamental unit
    std::vector<CharacterRow> rows;

    int sign_sum() const;
    // sum of c * B2(x), B2(t) = t^2 - t + 1/6
    Rat bernoulli_sum() const;
};

CharacterTable character_table(const CMExtension& E, int jobs = 0);

Rat bernoulli2(const Rat& t);

}  // namespace cmf
