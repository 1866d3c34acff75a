#include "cmf/shintani.hpp"

#include "cmf/error.hpp"

#include <omp.h>

#include <algorithm>

namespace cmf {

namespace {

struct Frame {
    Elt v1, v2;
    Rat x1, y1, x2, y2;  // v_k = x_k + y_k eps
    Int ilo, ihi, jlo, jhi;
};

// (x, y) with z = x + y eps.
std::pair<Rat, Rat> cone_coords(const Elt& z, const Elt& eps) {
    const Rat &a = eps[0], &b = eps[1];
    const Rat y = z[1] / b;
    return {z[0] - y * a, y};
}

Frame make_frame(const FieldPtr& F, const Elt& eps, const Ideal& D) {
    if (F->degree() != 2) throw UsageError("Shintani sets are implemented for real quadratic fields only");
    if (!D.is_integral()) throw UsageError("D must be an integral ideal");
    if (!is_totally_positive(eps) || eps[1] == 0) throw UsageError("eps must be a totally positive irrational unit");
    Frame fr;
    auto B = inv(D).basis();
    fr.v1 = B[0];
    fr.v2 = B[1];
    std::tie(fr.x1, fr.y1) = cone_coords(fr.v1, eps);
    std::tie(fr.x2, fr.y2) = cone_coords(fr.v2, eps);
    // (i, j) = A^{-1} (x, y) over the corners of the unit square
    const Rat det = fr.x1 * fr.y2 - fr.x2 * fr.y1;
    Rat imin = 0, imax = 0, jmin = 0, jmax = 0;
    for (int cx = 0; cx <= 1; ++cx)
        for (int cy = 0; cy <= 1; ++cy) {
            Rat i = (Rat(cx) * fr.y2 - Rat(cy) * fr.x2) / det;
            Rat j = (Rat(cy) * fr.x1 - Rat(cx) * fr.y1) / det;
            imin = std::min(imin, i), imax = std::max(imax, i);
            jmin = std::min(jmin, j), jmax = std::max(jmax, j);
        }
    fr.ilo = floor_div(imin.get_num(), imin.get_den());
    fr.ihi = -floor_div(-imax.get_num(), imax.get_den());
    fr.jlo = floor_div(jmin.get_num(), jmin.get_den());
    fr.jhi = -floor_div(-jmax.get_num(), jmax.get_den());
    return fr;
}

void scan_row(const Frame& fr, const Ideal& D, const Int& i, std::vector<ShintaniPoint>& out) {
    const Rat I(i);
    for (Int j = fr.jlo; j <= fr.jhi; ++j) {
        const Rat J(j);
        Rat x = I * fr.x1 + J * fr.x2;
        Rat y = I * fr.y1 + J * fr.y2;
        if (!(x > 0 && x <= 1 && y >= 0 && y < 1)) continue;
        Elt z = fr.v1 * I + fr.v2 * J;
        Ideal part = D * z;
        if (!is_coprime(part, D)) continue;
        out.push_back({x, y, z, part});
    }
}

void sort_points(std::vector<ShintaniPoint>& pts) {
    std::sort(pts.begin(), pts.end(), [](const ShintaniPoint& a, const ShintaniPoint& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
}

}  // namespace

std::vector<ShintaniPoint> shintani_set_serial(const FieldPtr& F, const Elt& eps, const Ideal& D) {
    const Frame fr = make_frame(F, eps, D);
    std::vector<ShintaniPoint> out;
    for (Int i = fr.ilo; i <= fr.ihi; ++i) scan_row(fr, D, i, out);
    sort_points(out);
    return out;
}

std::vector<ShintaniPoint> shintani_set(const FieldPtr& F, const Elt& eps, const Ideal& D, int jobs) {
    const Frame fr = make_frame(F, eps, D);
    const long rows = Int(fr.ihi - fr.ilo + 1).get_si();
    std::vector<std::vector<ShintaniPoint>> part(static_cast<std::size_t>(rows));
    const int nt = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (long r = 0; r < rows; ++r) scan_row(fr, D, fr.ilo + r, part[static_cast<std::size_t>(r)]);
    std::vector<ShintaniPoint> out;
    for (auto& p : part) out.insert(out.end(), p.begin(), p.end());
    sort_points(out);
    return out;
}

int hecke_char(const CMExtension& E, const Ideal& a) {
    if (!a.is_integral()) throw UsageError("hecke_char expects an integral ideal");
    int s = 1;
    for (auto& [P, k] : factor_ideal(a)) {
        if (valuation(E.rel_disc, P) > 0) throw Error("NotCoprimeToConductor", "ideal divisible by the ramified prime " + P.label);
        if (splitting_in_quadratic_ext(P, E.delta) == LocalType::Inert && k % 2 == 1) s = -s;
    }
    return s;
}

Rat bernoulli2(const Rat& t) { return t * t - t + Rat(1, 6); }

int CharacterTable::sign_sum() const {
    int s = 0;
    for (auto& r : rows) s += r.sign;
    return s;
}

Rat CharacterTable::bernoulli_sum() const {
    Rat s = 0;
    for (auto& r : rows) s += Rat(r.sign) * bernoulli2(r.point.x);
    return s;
}

CharacterTable character_table(const CMExtension& E, int jobs) {
    CharacterTable T;
    T.eps = fundamental_totally_positive_unit(E.F);
    for (auto& p : shintani_set(E.F, T.eps, E.rel_disc, jobs)) T.rows.push_back({p, hecke_char(E, p.ideal_part)});
    return T;
}

}  // namespace cmf
