#include "cmf/census.hpp"
#include "cmf/error.hpp"
#include "cmf/rayclass.hpp"

#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>

namespace cmf {

namespace {

struct NormedIdeal {
    Ideal I;
    long norm;
};

std::vector<std::pair<PrimeIdeal, long>> primes_up_to(const FieldPtr& F, long L) {
    std::vector<std::pair<PrimeIdeal, long>> out;
    for (long p = 2; p <= L; ++p) {
        if (!is_prime_u64(static_cast<std::uint64_t>(p))) continue;
        for (auto& [P, e] : factor_rational_prime(F, Int(p))) {
            Int N = P.norm();
            if (N <= L) out.emplace_back(P, N.get_si());
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
    return out;
}

// Integral ideals of norm <= L (squarefree ones only if requested), unit ideal first.
std::vector<NormedIdeal> ideals_up_to(const FieldPtr& F, long L, bool squarefree) {
    std::vector<NormedIdeal> out{{Ideal::unit(F), 1}};
    if (L < 2) return out;
    auto P = primes_up_to(F, L);
    // depth-first over primes in order of increasing norm
    struct Frame {
        std::size_t next;
        Ideal I;
        long norm;
    };
    std::vector<Frame> stack{{0, Ideal::unit(F), 1}};
    while (!stack.empty()) {
        Frame fr = std::move(stack.back());
        stack.pop_back();
        for (std::size_t i = fr.next; i < P.size(); ++i) {
            const long Np = P[i].second;
            if (fr.norm > L / Np) break;
            Ideal J = fr.I;
            long N = fr.norm;
            do {
                J = J * P[i].first.ideal;
                N *= Np;
                out.push_back({J, N});
                stack.push_back({i + 1, J, N});
            } while (!squarefree && N <= L / Np);
        }
    }
    return out;
}

struct Candidate {
    Int dE;
    Rat normd;
    Rat a, b;
    Elt delta;
    GaloisType galois;
};

bool same_field(const FieldPtr& F, const Elt& d1, const Elt& d2) {
    if (is_square(d1 / d2)) return true;
    return is_square(d1 / F->conj(d2)).has_value();
}

}  // namespace

std::vector<long> census_discriminants(long X) {
    std::vector<long> out;
    for (long D = 5; D * D <= X; ++D)
        if (is_fundamental_discriminant(Int(D))) out.push_back(D);
    return out;
}

std::vector<CensusRecord> census_for_discriminant(long D, long X) {
    if (D <= 1 || !is_fundamental_discriminant(Int(D))) throw UsageError("not a positive fundamental discriminant: " + std::to_string(D));
    const long L1 = X / (D * D);  // N(b) <= N(d_{E/F}) <= X / D^2
    if (L1 < 1) return {};
    const long m = D % 4 == 1 ? D : D / 4;
    FieldPtr F = Field::quadratic(Int(m));
    if (F->disc() != D) throw Error("InternalError", "unexpected field discriminant");
    long L2 = 1;  // 4 N(c)^2 <= D (Minkowski)
    while (4 * (L2 + 1) * (L2 + 1) <= D) ++L2;

    const Elt eps = fundamental_unit(F);
    const bool eps_norm_one = eps.norm() == 1;
    auto B = ideals_up_to(F, L1, true);
    auto C = ideals_up_to(F, L2, false);

    std::vector<Candidate> cands;
    for (auto& b : B)
        for (auto& c : C) {
            auto g = quadratic_generator(b.I * c.I * c.I);
            if (!g) continue;
            Elt gamma = *g;
            if (gamma.norm() < 0) {
                if (eps_norm_one) continue;
                gamma = gamma * eps;
            }
            Elt delta = gamma.sign_at(0) < 0 ? gamma : -gamma;
            std::vector<Elt> reps{delta};
            if (eps_norm_one) reps.push_back(delta * eps);
            for (Elt& d : reps) {
                d = reduce_by_unit_squares(d);
                Int Nd = relative_discriminant_norm(F, d);
                Int dE = Int(D) * Int(D) * Nd;
                if (dE > X) continue;
                auto [a, bb] = F->to_surd(d);
                cands.push_back({dE, d.norm(), a, bb, d, classify_quartic_cm(Int(m), a, bb)});
            }
        }
    std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
        if (x.dE != y.dE) return x.dE < y.dE;
        if (x.normd != y.normd) return x.normd < y.normd;
        if (x.a != y.a) return x.a > y.a;
        return x.b < y.b;
    });
    std::vector<CensusRecord> out;
    std::vector<const Candidate*> kept;
    for (std::size_t i = 0; i < cands.size();) {
        std::size_t j = i;
        while (j < cands.size() && cands[j].dE == cands[i].dE) ++j;
        kept.clear();
        for (std::size_t k = i; k < j; ++k) {
            bool dup = false;
            for (auto* r : kept)
                if (same_field(F, cands[k].delta, r->delta)) {
                    dup = true;
                    break;
                }
            if (!dup) kept.push_back(&cands[k]);
        }
        for (auto* r : kept) out.push_back({r->dE, Int(D), Int(m), r->a, r->b, r->galois});
        i = j;
    }
    return out;
}

namespace {

using json = nlohmann::json;

const char* kCheckpointSchema = "cmf.census.checkpoint/1";

json record_to_json(const CensusRecord& r) {
    return json::array({r.dE.get_str(), to_string(r.a), to_string(r.b), to_string(r.galois)});
}

CensusRecord record_from_json(const json& j, long D) {
    CensusRecord r;
    r.dE = Int(j.at(0).get<std::string>());
    r.dF = D;
    r.m = D % 4 == 1 ? D : D / 4;
    r.a = parse_rat(j.at(1).get<std::string>());
    r.b = parse_rat(j.at(2).get<std::string>());
    r.galois = galois_type_from_string(j.at(3).get<std::string>());
    return r;
}

std::map<long, std::vector<CensusRecord>> load_checkpoint(const std::string& path, long X) {
    std::map<long, std::vector<CensusRecord>> done;
    std::ifstream in(path);
    if (!in) return done;
    json j;
    try {
        in >> j;
    } catch (const std::exception&) {
        throw Error("CheckpointCorrupt", "cannot parse checkpoint " + path);
    }
    if (j.value("schema", "") != kCheckpointSchema) throw Error("CheckpointCorrupt", "unexpected checkpoint schema in " + path);
    if (j.at("X").get<long>() != X) throw Error("CheckpointMismatch", "checkpoint " + path + " was written for a different X");
    for (auto& [k, v] : j.at("done").items()) {
        long D = std::stol(k);
        auto& recs = done[D];
        for (auto& r : v) recs.push_back(record_from_json(r, D));
    }
    return done;
}

void save_checkpoint(const std::string& path, long X, const std::map<long, std::vector<CensusRecord>>& done) {
    json j;
    j["schema"] = kCheckpointSchema;
    j["X"] = X;
    json d = json::object();
    for (auto& [D, recs] : done) {
        json arr = json::array();
        for (auto& r : recs) arr.push_back(record_to_json(r));
        d[std::to_string(D)] = arr;
    }
    j["done"] = d;
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("IOError", "cannot write " + tmp);
        out << j.dump() << '\n';
        if (!out) throw Error("IOError", "short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("IOError", "cannot rename checkpoint into place");
}

CensusResult assemble(long X, const std::vector<long>& Ds, std::map<long, std::vector<CensusRecord>>& per_d) {
    CensusResult res;
    res.X = X;
    for (long D : Ds)
        for (auto& r : per_d[D]) res.records.push_back(r);
    std::stable_sort(res.records.begin(), res.records.end(), [](const CensusRecord& x, const CensusRecord& y) {
        if (x.dE != y.dE) return x.dE < y.dE;
        return x.dF < y.dF;
    });
    for (auto& r : res.records) ++res.counts[r.galois];
    res.total = static_cast<long>(res.records.size());
    return res;
}

}  // namespace

CensusResult enumerate_quartic_cm(long X, const CensusOptions& opt) {
    const auto Ds = census_discriminants(X);
    std::map<long, std::vector<CensusRecord>> per_d;
    if (!opt.checkpoint.empty()) per_d = load_checkpoint(opt.checkpoint, X);
    std::vector<long> todo;
    for (long D : Ds)
        if (!per_d.count(D)) todo.push_back(D);

    std::mutex mu;
    std::string failure;
    const int jobs = opt.jobs > 0 ? opt.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (std::size_t i = 0; i < todo.size(); ++i) {
        try {
            auto recs = census_for_discriminant(todo[i], X);
            std::lock_guard<std::mutex> lock(mu);
            per_d[todo[i]] = std::move(recs);
            if (!opt.checkpoint.empty()) save_checkpoint(opt.checkpoint, X, per_d);
            if (opt.progress) opt.progress(todo[i]);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(mu);
            if (failure.empty()) failure = "D = " + std::to_string(todo[i]) + ": " + e.what();
        }
    }
    if (!failure.empty()) throw Error("CensusFailed", failure);
    return assemble(X, Ds, per_d);
}

CensusResult enumerate_quartic_cm_serial(long X) {
    const auto Ds = census_discriminants(X);
    std::map<long, std::vector<CensusRecord>> per_d;
    for (long D : Ds) per_d[D] = census_for_discriminant(D, X);
    return assemble(X, Ds, per_d);
}

void write_census_csv(std::ostream& os, const CensusResult& r) {
    os << "d_E,d_F,a,b,galois,weyl\n";
    for (auto& rec : r.records)
        os << rec.dE << ',' << rec.dF << ',' << to_string(rec.a) << ',' << to_string(rec.b) << ',' << to_string(rec.galois)
           << ',' << (rec.galois == GaloisType::D4 ? "true" : "false") << '\n';
}

}  // namespace cmf
