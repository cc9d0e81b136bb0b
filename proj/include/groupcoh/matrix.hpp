#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "groupcoh/bigint.hpp"
#include "groupcoh/errors.hpp"

namespace groupcoh {

/// Dense matrix of exact integers, row major.
struct IntegerMatrix {
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<BigInt> entries;

    IntegerMatrix() = default;
    IntegerMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, BigInt(0)) {}

    BigInt& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const BigInt& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;
};

inline IntegerMatrix mat_identity(std::size_t n) {
    IntegerMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

inline IntegerMatrix mat_mul(const IntegerMatrix& A, const IntegerMatrix& B) {
    if (A.cols != B.rows) throw IndexOutOfRange("matrix product dimension mismatch");
    IntegerMatrix C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            const BigInt& a = A.at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < B.cols; ++j) {
                const BigInt& b = B.at(k, j);
                if (b != 0) C.at(i, j) += a * b;
            }
        }
    return C;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(const IntegerMatrix& M) {
    if (M.rows != M.cols) throw IndexOutOfRange("determinant needs a square matrix");
    std::size_t n = M.rows;
    if (n == 0) return 1;
    IntegerMatrix A = M;
    BigInt prev = 1;
    std::int64_t sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && A.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(A.at(k, j), A.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                A.at(i, j) = (A.at(i, j) * A.at(k, k) - A.at(i, k) * A.at(k, j)) / prev;
        prev = A.at(k, k);
    }
    return sign * A.at(n - 1, n - 1);
}

struct SmithNormalForm {
    IntegerMatrix U; // rows x rows, unimodular
    IntegerMatrix S; // diagonal, s_i >= 0, s_i | s_{i+1}
    IntegerMatrix V; // cols x cols, unimodular
    std::size_t rank{0};

    BigInt diag(std::size_t i) const { return S.at(i, i); }
};

/**
 * U*M*V = S with S diagonal under a divisibility chain and U, V unimodular.
 * Pivoting picks the smallest nonzero absolute value; arithmetic is exact.
 */
inline SmithNormalForm smith_normal_form(const IntegerMatrix& M) {
    SmithNormalForm res;
    res.S = M;
    res.U = mat_identity(M.rows);
    res.V = mat_identity(M.cols);
    IntegerMatrix& S = res.S;
    IntegerMatrix& U = res.U;
    IntegerMatrix& V = res.V;

    auto row_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < S.cols; ++j) std::swap(S.at(a, j), S.at(b, j));
        for (std::size_t j = 0; j < U.cols; ++j) std::swap(U.at(a, j), U.at(b, j));
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < S.rows; ++i) std::swap(S.at(i, a), S.at(i, b));
        for (std::size_t i = 0; i < V.rows; ++i) std::swap(V.at(i, a), V.at(i, b));
    };
    // row_a -= q * row_b
    auto row_sub = [&](std::size_t a, std::size_t b, const BigInt& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < S.cols; ++j) S.at(a, j) -= q * S.at(b, j);
        for (std::size_t j = 0; j < U.cols; ++j) U.at(a, j) -= q * U.at(b, j);
    };
    auto col_sub = [&](std::size_t a, std::size_t b, const BigInt& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < S.rows; ++i) S.at(i, a) -= q * S.at(i, b);
        for (std::size_t i = 0; i < V.rows; ++i) V.at(i, a) -= q * V.at(i, b);
    };
    auto row_negate = [&](std::size_t a) {
        for (std::size_t j = 0; j < S.cols; ++j) S.at(a, j) = -S.at(a, j);
        for (std::size_t j = 0; j < U.cols; ++j) U.at(a, j) = -U.at(a, j);
    };

    std::size_t t = 0;
    std::size_t lim = std::min(S.rows, S.cols);
    while (t < lim) {
        // smallest nonzero pivot in the trailing submatrix
        bool found = false;
        std::size_t pi = t, pj = t;
        BigInt best = 0;
        for (std::size_t i = t; i < S.rows; ++i)
            for (std::size_t j = t; j < S.cols; ++j) {
                if (S.at(i, j) == 0) continue;
                BigInt a = abs(S.at(i, j));
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        row_swap(t, pi);
        col_swap(t, pj);

        bool clean = true;
        for (std::size_t i = t + 1; i < S.rows; ++i) {
            if (S.at(i, t) == 0) continue;
            BigInt q = S.at(i, t) / S.at(t, t);
            row_sub(i, t, q);
            if (S.at(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < S.cols; ++j) {
            if (S.at(t, j) == 0) continue;
            BigInt q = S.at(t, j) / S.at(t, t);
            col_sub(j, t, q);
            if (S.at(t, j) != 0) clean = false;
        }
        if (!clean) continue; // a smaller pivot appeared; repeat at the same t

        // enforce divisibility of the remaining block by the pivot
        bool divisible = true;
        for (std::size_t i = t + 1; i < S.rows && divisible; ++i)
            for (std::size_t j = t + 1; j < S.cols && divisible; ++j)
                if (S.at(i, j) % S.at(t, t) != 0) {
                    row_sub(t, i, BigInt(-1)); // row_t += row_i
                    divisible = false;
                }
        if (!divisible) continue;

        if (S.at(t, t) < 0) row_negate(t);
        ++t;
    }
    res.rank = t;
    return res;
}

/// Checks U*M*V = S, the divisibility chain, and |det U| = |det V| = 1.
inline bool snf_verify(const IntegerMatrix& M, const SmithNormalForm& f) {
    if (mat_mul(mat_mul(f.U, M), f.V) != f.S) return false;
    std::size_t lim = std::min(f.S.rows, f.S.cols);
    for (std::size_t i = 0; i < f.S.rows; ++i)
        for (std::size_t j = 0; j < f.S.cols; ++j)
            if (i != j && f.S.at(i, j) != 0) return false;
    for (std::size_t i = 0; i < lim; ++i)
        if (f.S.at(i, i) < 0) return false;
    for (std::size_t i = 0; i + 1 < lim; ++i) {
        const BigInt& a = f.S.at(i, i);
        const BigInt& b = f.S.at(i + 1, i + 1);
        if (a == 0 && b != 0) return false;
        if (a != 0 && b % a != 0) return false;
    }
    BigInt du = determinant(f.U), dv = determinant(f.V);
    return (du == 1 || du == -1) && (dv == 1 || dv == -1);
}

} // namespace groupcoh
