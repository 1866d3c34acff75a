#include "cmf/lattice.hpp"

#include "cmf/error.hpp"

#include <algorithm>
#include <utility>

namespace cmf {

IntMat identity_int(std::size_t n) {
    IntMat I(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

RatMat identity_rat(std::size_t n) {
    RatMat I(n, RatVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

namespace {

void row_axpy(IntVec& dst, const IntVec& src, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= q * src[k];
}

}  // namespace

IntMat hnf(const IntMat& A0, IntMat* U) {
    IntMat A = A0;
    const std::size_t m = A.size();
    if (m == 0) return {};
    const std::size_t n = A[0].size();
    IntMat T;
    if (U) T = identity_int(m);
    std::size_t row = 0;
    std::vector<std::size_t> pivcol;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        for (;;) {
            std::size_t best = m;
            for (std::size_t r = row; r < m; ++r)
                if (A[r][col] != 0 && (best == m || abs(A[r][col]) < abs(A[best][col]))) best = r;
            if (best == m) break;
            if (best != row) {
                std::swap(A[best], A[row]);
                if (U) std::swap(T[best], T[row]);
            }
            bool done = true;
            for (std::size_t r = row + 1; r < m; ++r) {
                if (A[r][col] == 0) continue;
                Int q = floor_div(A[r][col], A[row][col]);
                row_axpy(A[r], A[row], q);
                if (U) row_axpy(T[r], T[row], q);
                if (A[r][col] != 0) done = false;
            }
            if (done) break;
        }
        if (A[row][col] == 0) continue;
        if (A[row][col] < 0) {
            for (auto& x : A[row]) x = -x;
            if (U)
                for (auto& x : T[row]) x = -x;
        }
        for (std::size_t r = 0; r < row; ++r) {
            Int q = floor_div(A[r][col], A[row][col]);
            row_axpy(A[r], A[row], q);
            if (U) row_axpy(T[r], T[row], q);
        }
        pivcol.push_back(col);
        ++row;
    }
    if (U) *U = T;
    A.resize(row);
    return A;
}

std::optional<IntVec> solve_in_lattice(const IntMat& A, const IntVec& t) {
    IntMat U;
    IntMat H = hnf(A, &U);
    const std::size_t r = H.size();
    const std::size_t n = t.size();
    IntVec rem = t;
    IntVec y(r, 0);
    std::size_t col = 0;
    for (std::size_t i = 0; i < r; ++i) {
        while (col < n && H[i][col] == 0) {
            if (rem[col] != 0) return std::nullopt;
            ++col;
        }
        if (!mpz_divisible_p(rem[col].get_mpz_t(), H[i][col].get_mpz_t())) return std::nullopt;
        y[i] = rem[col] / H[i][col];
        for (std::size_t k = 0; k < n; ++k) rem[k] -= y[i] * H[i][k];
        ++col;
    }
    for (const Int& v : rem)
        if (v != 0) return std::nullopt;
    IntVec x(A.size(), 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < A.size(); ++k) x[k] += y[i] * U[i][k];
    return x;
}

void reduce_mod_hnf(IntVec& v, const IntMat& H) {
    for (std::size_t i = 0; i < H.size(); ++i) {
        Int q = floor_div(v[i], H[i][i]);
        if (q != 0)
            for (std::size_t k = i; k < v.size(); ++k) v[k] -= q * H[i][k];
    }
}

Int det_int(const IntMat& A) {
    RatMat R(A.size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (const Int& x : A[i]) R[i].emplace_back(x);
    Rat d = det_rat(R);
    return d.get_num();
}

Rat det_rat(const RatMat& A0) {
    RatMat A = A0;
    const std::size_t n = A.size();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && A[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(A[p], A[c]);
            d = -d;
        }
        d *= A[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (A[r][c] == 0) continue;
            Rat f = A[r][c] / A[c][c];
            for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
        }
    }
    return d;
}

std::optional<RatMat> inverse_rat(const RatMat& A0) {
    const std::size_t n = A0.size();
    RatMat A = A0, I = identity_rat(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && A[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(A[p], A[c]);
        std::swap(I[p], I[c]);
        Rat inv = 1 / A[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            A[c][k] *= inv;
            I[c][k] *= inv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c] == 0) continue;
            Rat f = A[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                A[r][k] -= f * A[c][k];
                I[r][k] -= f * I[c][k];
            }
        }
    }
    return I;
}

RatMat mul_rat(const RatMat& A, const RatMat& B) {
    RatMat C(A.size(), RatVec(B.empty() ? 0 : B[0].size(), 0));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t k = 0; k < B.size(); ++k) {
            if (A[i][k] == 0) continue;
            for (std::size_t j = 0; j < B[k].size(); ++j) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

RatVec vec_mat(const RatVec& v, const RatMat& A) {
    RatVec r(A.empty() ? 0 : A[0].size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < r.size(); ++j) r[j] += v[i] * A[i][j];
    }
    return r;
}

RatMat transpose(const RatMat& A) {
    if (A.empty()) return {};
    RatMat T(A[0].size(), RatVec(A.size()));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
    return T;
}

IntMat integer_kernel(const IntMat& A) {
    // rows of U beyond rank(A) span the left kernel
    IntMat U;
    IntMat H = hnf(A, &U);
    IntMat K(U.begin() + static_cast<std::ptrdiff_t>(H.size()), U.end());
    if (K.empty()) return K;
    return hnf(K);
}

IntMat lll_gram(const RatMat& G0) {
    const std::size_t n = G0.size();
    RatMat G = G0;
    IntMat U = identity_int(n);
    RatMat mu(n, RatVec(n, Rat(0)));
    RatVec B(n);
    auto gso = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                Rat s = G[i][j];
                for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * B[k];
                mu[i][j] = s / B[j];
            }
            Rat s = G[i][i];
            for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * B[k];
            B[i] = s;
        }
    };
    // b_i -= r b_j
    auto sub_row = [&](std::size_t i, std::size_t j, const Int& r) {
        const Rat rq(r);
        for (std::size_t k = 0; k < n; ++k) U[i][k] -= r * U[j][k];
        const Rat gii = G[i][i] - 2 * rq * G[i][j] + rq * rq * G[j][j];
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) G[i][k] -= rq * G[j][k];
        G[i][i] = gii;
        for (std::size_t k = 0; k < n; ++k) G[k][i] = G[i][k];
    };
    gso();
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            Rat m = mu[k][j];
            Int r = floor_div(2 * m.get_num() + m.get_den(), 2 * m.get_den());
            if (r != 0) {
                sub_row(k, j, r);
                gso();
            }
        }
        if (B[k] >= (Rat(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            ++k;
        } else {
            std::swap(U[k], U[k - 1]);
            std::swap(G[k], G[k - 1]);
            for (std::size_t t = 0; t < n; ++t) std::swap(G[t][k], G[t][k - 1]);
            gso();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return U;
}

}  // namespace cmf

#include <cmath>

namespace cmf {

bool enumerate_short_vectors(const std::vector<std::vector<double>>& G, double bound,
                             const std::function<bool(const std::vector<long>&)>& visit) {
    const int n = static_cast<int>(G.size());
    // q[i][i] = pivots, q[i][j] (j > i) = mu coefficients, from Cholesky
    std::vector<std::vector<double>> q(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    auto Q = [&](int i, int j) -> double& { return q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Q(i, j) = G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Q(j, i) = Q(i, j);
            Q(i, j) /= Q(i, i);
        }
        for (int k = i + 1; k < n; ++k)
            for (int l = k; l < n; ++l) Q(k, l) -= Q(k, i) * Q(i, l);
        if (!(Q(i, i) > 0)) throw std::runtime_error("enumerate_short_vectors: Gram not positive definite");
    }
    const double slack = bound * 1e-9 + 1e-9;
    std::vector<long> x(static_cast<std::size_t>(n), 0);
    std::vector<double> T(static_cast<std::size_t>(n + 1), 0.0);
    bool keep = true;
    std::function<void(int, double)> rec = [&](int i, double rem) {
        if (!keep) return;
        double c = 0;
        for (int j = i + 1; j < n; ++j) c -= Q(i, j) * static_cast<double>(x[static_cast<std::size_t>(j)]);
        double r = std::sqrt(std::max(0.0, (rem + slack) / Q(i, i)));
        long lo = static_cast<long>(std::ceil(c - r));
        long hi = static_cast<long>(std::floor(c + r));
        for (long v = lo; v <= hi && keep; ++v) {
            x[static_cast<std::size_t>(i)] = v;
            double t = static_cast<double>(v) - c;
            double nrem = rem - Q(i, i) * t * t;
            if (nrem < -slack) continue;
            if (i == 0) {
                bool zero = true;
                for (long xv : x)
                    if (xv) zero = false;
                if (!zero && !visit(x)) keep = false;
            } else {
                rec(i - 1, nrem);
            }
        }
        x[static_cast<std::size_t>(i)] = 0;
    };
    if (n > 0) rec(n - 1, bound);
    return keep;
}

}  // namespace cmf
