#pragma once

// Small exact linear algebra over the rationals: Gaussian elimination,
// rank, determinants, kernels. Sizes here are tiny (<= 8 columns).

#include "pentapod/rational.hpp"

#include <optional>
#include <vector>

namespace pentapod {

using QMatrix = std::vector<std::vector<Rational>>;

inline std::size_t rank(QMatrix m) {
    std::size_t rows = m.size();
    if (rows == 0) return 0;
    std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sign(m[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (sign(m[i][c]) == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

inline Rational determinant(QMatrix m) {
    std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && sign(m[piv][c]) == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            std::swap(m[c], m[piv]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sign(m[i][c]) == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

// Solve A x = b exactly; nullopt when singular/inconsistent.
inline std::optional<std::vector<Rational>> solve(QMatrix a, std::vector<Rational> b) {
    std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sign(a[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        std::swap(b[r], b[piv]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sign(a[i][c]) == 0) continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (sign(b[i]) != 0) return std::nullopt;  // inconsistent
    if (r < cols) return std::nullopt;             // underdetermined: treated as failure
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
    return x;
}

// One kernel vector of a (rows x cols) rational matrix with rank cols-1;
// nullopt if the kernel dimension is not exactly 1.
inline std::optional<std::vector<Rational>> kernel_vector(QMatrix m) {
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    std::vector<long> pivot_of_col(cols, -1);
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sign(m[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sign(m[i][c]) == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_of_col[c] = static_cast<long>(r);
        ++r;
    }
    if (r != cols - 1) return std::nullopt;
    std::size_t freec = 0;
    while (freec < cols && pivot_of_col[freec] != -1) ++freec;
    std::vector<Rational> x(cols, Rational(0));
    x[freec] = 1;
    for (std::size_t c = 0; c < cols; ++c) {
        long pr = pivot_of_col[c];
        if (pr < 0) continue;
        x[c] = -m[pr][freec] / m[pr][c];
    }
    return x;
}

}  // namespace pentapod
