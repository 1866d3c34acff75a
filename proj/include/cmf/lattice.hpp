#pragma once

#include "cmf/arith.hpp"

#include <optional>
#include <vector>

namespace cmf {

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using IntMat = std::vector<IntVec>;
using RatMat = std::vector<RatVec>;

IntMat identity_int(std::size_t n);
RatMat identity_rat(std::size_t n);

// Row-style Hermite normal form of the lattice spanned by the rows of A.
// Result: r x n upper-echelon rows (r = rank), positive pivots, entries above
// each pivot reduced into [0, pivot). If U is given it receives the unimodular
// transform with (U*A) = [H; 0].
IntMat hnf(const IntMat& A, IntMat* U = nullptr);

// x with x*A = t (x integral), if one exists. A rows span the lattice.
std::optional<IntVec> solve_in_lattice(const IntMat& A, const IntVec& t);

// Reduce v modulo the lattice of a square full-rank upper-triangular HNF.
void reduce_mod_hnf(IntVec& v, const IntMat& H);

Int det_int(const IntMat& A);
Rat det_rat(const RatMat& A);
std::optional<RatMat> inverse_rat(const RatMat& A);
RatMat mul_rat(const RatMat& A, const RatMat& B);
RatVec vec_mat(const RatVec& v, const RatMat& A);
RatMat transpose(const RatMat& A);

// Kernel lattice basis of the rows of A viewed as a map Z^m -> Z^n.
IntMat integer_kernel(const IntMat& A);

// LLL (delta = 3/4) in exact arithmetic on a positive definite Gram matrix.
// Returns the unimodular U whose rows express the reduced basis in the old one.
IntMat lll_gram(const RatMat& G);

}  // namespace cmf

#include <functional>

namespace cmf {

// Fincke-Pohst: visit every nonzero x in Z^n with x^T G x <= bound (G positive
// definite, given in floating point). Both x and -x are visited. The visitor
// returns false to stop early. Returns false if stopped.
bool enumerate_short_vectors(const std::vector<std::vector<double>>& G, double bound,
                             const std::function<bool(const std::vector<long>&)>& visit);

}  // namespace cmf
