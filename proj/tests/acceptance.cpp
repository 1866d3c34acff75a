// Acceptance runner: one PASS/FAIL line per criterion.
//   cmf_acceptance            run all twelve
//   cmf_acceptance --only K   run criterion K
// Exit status is 1 if any selected criterion fails.

#include "cmf/cli.hpp"
#include "cmf/error.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace cmf;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing data file " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

std::string data(const std::string& name) { return std::string(CMF_TEST_DATA) + "/" + name; }

struct TableRow {
    long m, n;
    Rat x, y;
    int c;
};

std::vector<TableRow> cli_table() {
    const char* argv[] = {"cmtool", "shintani", "table", "--example", "paper"};
    std::ostringstream out, err;
    if (cli::run(5, argv, out, err) != 0) throw std::runtime_error("shintani table failed: " + err.str());
    std::vector<TableRow> rows;
    std::istringstream in(out.str());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'm') continue;
        std::stringstream ss(line);
        std::string f[5];
        for (auto& s : f) std::getline(ss, s, ',');
        rows.push_back({std::stol(f[0]), std::stol(f[1]), parse_rat(f[2]), parse_rat(f[3]), std::stoi(f[4])});
    }
    return rows;
}

CMExtension example() {
    auto F = Field::quadratic(2);
    return CMExtension::make(F->from_surd(-5, -2));
}

// ---- criteria ----------------------------------------------------------------

Verdict c1() {
    auto t0 = Clock::now();
    auto rows = cli_table();
    const double secs = since(t0);
    // z = x + y (3 + 2 sqrt 2) = -m + (4m + n - 1)(6 + sqrt 2)/17
    std::set<std::pair<Rat, Rat>> expected, got;
    std::map<std::pair<long, long>, std::pair<Rat, Rat>> by_index;
    for (auto& r : read_csv(data("shintani_index.csv"))) {
        long m = std::stol(r[0]), n = std::stol(r[1]);
        Rat k(4 * m + n - 1, 17), a = Rat(-m) + 6 * k, b = k;
        Rat y = b / 2, x = a - 3 * y;
        x.canonicalize();
        y.canonicalize();
        expected.insert({x, y});
        by_index[{m, n}] = {x, y};
    }
    bool labels = true;
    for (auto& r : rows) {
        got.insert({r.x, r.y});
        auto it = by_index.find({r.m, r.n});
        labels = labels && it != by_index.end() && it->second == std::make_pair(r.x, r.y);
    }
    bool ok = rows.size() == 32 && expected.size() == 32 && got == expected && labels && secs < 1.0;
    return {ok, std::to_string(rows.size()) + " points, exact match " + (got == expected ? "yes" : "no") +
                    ", (m,n) labels " + (labels ? "consistent" : "inconsistent") + ", " + fmt("%.3f s", secs)};
}

Verdict c2() {
    auto t0 = Clock::now();
    auto rows = cli_table();
    const double secs = since(t0);
    std::map<std::pair<long, long>, int> ref;
    for (auto& r : read_csv(data("reference_signs.csv"))) ref[{std::stol(r[0]), std::stol(r[1])}] = std::stoi(r[2]);
    int equal = 0, negated = 0;
    for (auto& r : rows) {
        auto it = ref.find({r.m, r.n});
        if (it == ref.end()) continue;
        equal += it->second == r.c;
        negated += it->second == -r.c;
    }
    bool ok = rows.size() == 32 && equal == 32 && secs < 1.0;
    std::string d = std::to_string(equal) + "/32 cells equal the reference grid";
    if (negated == 32) d += "; the reference grid is the negative of the computed character on all 32 cells";
    return {ok, d + ", " + fmt("%.3f s", secs)};
}

Verdict c3() {
    auto T = character_table(example());
    Rat s = T.bernoulli_sum();
    return {s == Rat(4, 17) && T.rows.size() == 32, "sum c B2(x) = " + to_string(s)};
}

Verdict c4() {
    auto t0 = Clock::now();
    auto E = example();
    auto T = character_table(E);
    auto L = lerch_real_quadratic(E, T, 1, 1, 192);
    auto H = hecke_L_quadratic(E, 192);
    const double secs = since(t0);
    Real diff = abs(L.total - H.lderiv);
    bool ok = diff < Real(1e-10, 192) && secs < 60;
    return {ok, "L'/L(0) = " + L.total.str(30) + ", path difference " + diff.str(3) + ", " + fmt("%.1f s", secs)};
}

Verdict c5() {
    auto t0 = Clock::now();
    auto r = faltings_quartic(example(), 1, 1, 192);
    const double secs = since(t0);
    Real cond = -log(Real(136L, 256)) / 4;
    Real cond_gap = abs(r.conductor_term - cond);
    bool ok = r.oracle.conductor == 136 && cond_gap < ldexp_one(-180, 192) &&
              r.closed_form_residual < Real(1e-25, 192) && secs < 60;
    return {ok, "h_Fal = " + r.h_fal.str(25) + ", conductor term " + r.conductor_term.str(20) + " (gap " +
                    cond_gap.str(3) + "), rearrangement residual " + r.closed_form_residual.str(3) + ", " +
                    fmt("%.1f s", secs)};
}

Verdict c6() {
    auto t0 = Clock::now();
    Real worst(0L, 192);
    for (long D : {3L, 4L, 7L, 8L, 11L}) {
        auto l = lerch_check(D, 192);
        if (l.residual > worst) worst = l.residual;
    }
    const double secs = since(t0);
    return {worst < Real(1e-20, 192) && secs < 10, "max residual " + worst.str(3) + ", " + fmt("%.1f s", secs)};
}

Verdict c7() {
    auto t0 = Clock::now();
    Real eta(0L, 192), falt(0L, 192);
    bool threw = false;
    for (long D : {3L, 4L, 23L}) {
        auto e = eta_cm_check(D, 192);
        if (e.residual > eta) eta = e.residual;
        try {
            auto f = faltings_imag_quadratic(D, 192);
            if (f.residual > falt) falt = f.residual;
        } catch (const Error&) {
            threw = true;
        }
    }
    const double secs = since(t0);
    bool ok = !threw && eta < Real(1e-12, 192) && falt < Real(1e-20, 192) && secs < 30;
    return {ok, "eta residual " + eta.str(3) + ", Faltings two-path residual " + falt.str(3) + ", " +
                    fmt("%.1f s", secs)};
}

Verdict c8() {
    auto t0 = Clock::now();
    auto a = enumerate_quartic_cm(10000);
    auto b = enumerate_quartic_cm(100000);
    const double secs = since(t0);
    bool ok = a.count(GaloisType::D4) == 27 && a.total == 72 && b.count(GaloisType::D4) == 395 && b.total == 613;
    return {ok, "10^4: D4 " + std::to_string(a.count(GaloisType::D4)) + " / total " + std::to_string(a.total) +
                    "; 10^5: D4 " + std::to_string(b.count(GaloisType::D4)) + " / total " + std::to_string(b.total) +
                    ", " + fmt("%.1f s", secs)};
}

Verdict c9() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(9);
    const std::vector<FieldPtr> fields{Field::quadratic(2), Field::quadratic(5), Field::make({-1, -3, 0, 1})};
    int runs = 0, good = 0, exhausted = 0;
    std::string first_bad;
    for (int i = 0; runs < 20 && exhausted < 40; ++i) {
        const FieldPtr& F = fields[static_cast<std::size_t>(i % 3)];
        std::uniform_int_distribution<long> pp(3, F->degree() == 3 ? 80 : 60);
        long p = pp(rng);
        if (!is_prime(Int(p)) || F->disc() % p == 0) continue;
        auto fac = factor_rational_prime(F, p);
        if (static_cast<int>(fac.size()) != F->degree()) continue;
        CMInput in;
        in.F = F;
        in.p = p;
        in.P = fac[rng() % fac.size()].first;
        std::vector<PrimeIdeal> pool;
        for (long ell : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L})
            if (ell != p && F->disc() % ell != 0)
                for (auto& [Q, e] : factor_rational_prime(F, ell)) pool.push_back(Q);
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::size_t k = rng() % 3;  // 0..2 primes in each of R, U1, U2
        in.R.assign(pool.begin(), pool.begin() + static_cast<long>(k));
        in.U1.assign(pool.begin() + 2, pool.begin() + 2 + static_cast<long>(rng() % 2));
        in.U2.assign(pool.begin() + 3, pool.begin() + 3 + static_cast<long>(rng() % 2));
        try {
            auto c = construct_cm(in);
            ++runs;
            Ideal expect = in.P.ideal * c.q.ideal;
            for (auto& r : in.R) expect = expect * r.ideal;
            bool ok = Ideal::principal(c.delta) == expect && is_totally_negative(c.delta);
            for (auto& u : in.U1) ok = ok && local_quadratic(u, c.delta).type == LocalType::Split;
            for (auto& u : in.U2) ok = ok && local_quadratic(u, c.delta).type == LocalType::Inert;
            if (F->degree() == 3) ok = ok && verify_non_galois(c.E);
            ok = ok && verify_construction(c.E, in, c.q).all_pass();
            good += ok;
            if (!ok && first_bad.empty()) first_bad = F->describe() + " p=" + std::to_string(p);
        } catch (const Error& e) {
            // an empty scan is a legitimate outcome; the draw is replaced
            if (e.kind() == "NoPrimeFoundInBound") {
                ++exhausted;
                continue;
            }
            ++runs;
            if (first_bad.empty()) first_bad = F->describe() + " p=" + std::to_string(p) + ": " + e.what();
        } catch (const std::exception& e) {
            ++runs;
            if (first_bad.empty()) first_bad = F->describe() + " p=" + std::to_string(p) + ": " + e.what();
        }
    }
    const double secs = since(t0);
    std::string d = std::to_string(good) + "/20 constructions verified (" + std::to_string(exhausted) +
                    " draws exhausted the scan bound), " + fmt("%.1f s", secs);
    if (!first_bad.empty()) d += "; first failure: " + first_bad;
    return {good == 20 && secs < 300, d};
}

Verdict c10() {
    std::mt19937_64 rng(10);
    const long ds[] = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 30};
    std::uniform_int_distribution<int> di(0, 17);
    std::uniform_int_distribution<long> bd(-40, 40), ad(1, 2000);
    int tested = 0, disagree = 0, tally[5] = {0, 0, 0, 0, 0};
    while (tested < 500) {
        long d = ds[di(rng)], b = bd(rng), a = -ad(rng);
        // two thirds of the samples sit in the biquadratic and cyclic families
        std::uniform_int_distribution<long> rs(1, 6);
        const long r = rs(rng), t = rs(rng);
        if (tested % 3 == 1) {  // a^2 - d b^2 = (r^2 - d t^2)^2
            a = -(r * r + d * t * t);
            b = 2 * r * t;
        } else if (tested % 3 == 2) {  // d = e^2 + f^2 gives a^2 - d b^2 = d c^2
            for (long e = 1; e * e < d; ++e) {
                Int f2 = Int(d - e * e), f;
                if (!is_square(f2, &f)) continue;
                a = -d * (r * r + t * t);
                b = e * (r * r - t * t) - 2 * f.get_si() * r * t;
                break;
            }
        }
        if (a * a <= b * b * d) continue;
        auto f = cm_quartic_poly(d, a, b);
        if (!quartic_irreducible(f)) continue;
        GaloisType x = classify_quartic_cm(d, a, b), y = classify_quartic_poly(f);
        disagree += x != y;
        ++tally[static_cast<int>(x)];
        ++tested;
    }
    return {disagree == 0, std::to_string(disagree) + " disagreements in 500 (C4 " + std::to_string(tally[0]) + ", V4 " +
                               std::to_string(tally[1]) + ", D4 " + std::to_string(tally[2]) + ")"};
}

Verdict c11() {
    auto t0 = Clock::now();
    auto rows = weil_census(2, 4, 12);
    const double secs = since(t0);
    int inversions = 0;
    bool small = true;
    std::string props;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        props += (i ? " " : "") + fmt("%.3f", rows[i].d4_proportion());
        if (i && rows[i].d4_proportion() < rows[i - 1].d4_proportion()) {
            ++inversions;
            small = small && rows[i - 1].d4_proportion() - rows[i].d4_proportion() < 0.01;
        }
    }
    bool ok = rows.size() == 9 && inversions <= 1 && small && rows.back().d4_proportion() > 0.9 && secs < 600;
    return {ok, "D4 share n=4..12: " + props + ", " + fmt("%.1f s", secs)};
}

Verdict c12() {
    const mpfr_prec_t P = 192;
    const Real tol(1e-25, P), pi = const_pi(P);
    Real worst(0L, P);
    auto track = [&](const Real& r) {
        if (r > worst) worst = r;
    };
    const Real one(1L, P), half(Rat(1, 2), P), l2pi = log(2 * pi);
    // zeta_2(s, 1, (1, 1)) = zeta(s - 1)
    for (Rat s : {Rat(3), Rat(5, 2), Rat(4), Rat(7, 2)}) {
        Real sv(s, P);
        track(abs(barnes_zeta2(Dual::constant(sv), one, one, one).v - hurwitz_zeta(sv - 1L, one)));
    }
    // ladder: log G2(z) - log G2(z + w1) = log Gamma_1(z, w2)
    const std::vector<std::array<Rat, 3>> pts{{Rat(7, 10), Rat(13, 10), Rat(29, 10)},
                                              {Rat(1, 3), Rat(1), Rat(3) + Rat(1, 7)},
                                              {Rat(9, 5), Rat(5, 2), Rat(2, 5)}};
    for (auto& [zq, w1q, w2q] : pts) {
        Real z(zq, P), w1(w1q, P), w2(w2q, P);
        Real lhs = barnes_log_gamma2(z, w1, w2) - barnes_log_gamma2(z + w1, w1, w2);
        Real rhs = -log(w2) * (half - z / w2) + lngamma(z / w2) - l2pi / 2;
        track(abs(lhs - rhs));
    }
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> num(1, 999);
    for (int i = 0; i < 5; ++i) {
        Real a(Rat(num(rng), 100), P);
        track(abs(hurwitz_zeta(Real(0L, P), a) - (half - a)));
    }
    return {worst < tol, "max identity error " + worst.str(3)};
}

const std::vector<std::pair<std::string, std::function<Verdict()>>>& criteria() {
    static const std::vector<std::pair<std::string, std::function<Verdict()>>> c{
        {"Shintani set exactness", c1},
        {"character table vs reference grid", c2},
        {"exact Bernoulli identity", c3},
        {"two-path L-derivative", c4},
        {"Faltings height assembly", c5},
        {"Lerch identity, D in {3,4,7,8,11}", c6},
        {"Chowla-Selberg and Faltings two-path, D in {3,4,23}", c7},
        {"quartic CM census 10^4 and 10^5", c8},
        {"CM construction postconditions (20 random)", c9},
        {"classifier vs resolvent cubic (500 random)", c10},
        {"Weil census D4 trend, q = 2^4..2^12", c11},
        {"special-function identities", c12},
    };
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--only" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: cmf_acceptance [--only K]\n";
            return 2;
        }
    }
    if (only < 0 || only > static_cast<int>(criteria().size())) {
        std::cerr << "criterion out of range\n";
        return 2;
    }
    int failed = 0;
    for (std::size_t k = 0; k < criteria().size(); ++k) {
        if (only && static_cast<int>(k) + 1 != only) continue;
        auto& [name, fn] = criteria()[k];
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::cout << "criterion " << (k + 1) << ": " << (v.pass ? "PASS" : "FAIL") << "  " << name << "  [" << v.detail
                  << "]" << std::endl;
    }
    return failed ? 1 : 0;
}
