#pragma once

// Small dense eigen/singular-value plumbing: cyclic Jacobi iteration on real
// symmetric matrices, with complex Hermitian and general complex inputs
// handled through the standard 2n x 2n realification.  Matrices here are at
// most a few dozen rows (Gram matrices of small test-function families), so
// the quadratic-sweep Jacobi is plenty.

#include <algorithm>
#include <cmath>
#include <vector>

#include "zsl/common.hpp"

namespace zsl {

using RealMatrix = std::vector<std::vector<double>>;
using ComplexMatrix = std::vector<std::vector<Complex>>;

// eigenvalues of a symmetric real matrix, ascending; the input is symmetrized
// (a_ij and a_ji averaged) after a consistency check
inline std::vector<double> jacobi_eigenvalues(RealMatrix a) {
    const std::size_t n = a.size();
    if (n == 0) fail_invalid("jacobi_eigenvalues: empty matrix");
    double scale = 0.0;
    for (const auto& row : a) {
        if (row.size() != n) fail_invalid("jacobi_eigenvalues: matrix not square");
        for (double x : row) scale = std::max(scale, std::abs(x));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(a[i][j] - a[j][i]) > 1e-9 * std::max(scale, 1.0))
                fail_invalid("jacobi_eigenvalues: matrix not symmetric");
            double m = 0.5 * (a[i][j] + a[j][i]);
            a[i][j] = a[j][i] = m;
        }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (std::sqrt(off) <= 1e-15 * std::max(scale, 1e-300)) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                double tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (tau >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

// [[A, -B], [B, A]] for M = A + iB; Hermitian M gives a symmetric image with
// each eigenvalue doubled
inline RealMatrix realify(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    RealMatrix r(2 * n, std::vector<double>(2 * n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) fail_invalid("realify: matrix not square");
        for (std::size_t j = 0; j < n; ++j) {
            r[i][j] = m[i][j].real();
            r[i][j + n] = -m[i][j].imag();
            r[i + n][j] = m[i][j].imag();
            r[i + n][j + n] = m[i][j].real();
        }
    }
    return r;
}

// (min eigenvalue, max eigenvalue) of a Hermitian matrix
inline std::pair<double, double> psd_check(const ComplexMatrix& h) {
    const std::size_t n = h.size();
    if (n == 0) fail_invalid("psd_check: empty matrix");
    double scale = 0.0;
    for (const auto& row : h)
        for (const Complex& z : row) scale = std::max(scale, std::abs(z));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(h[i][j] - std::conj(h[j][i])) > 1e-9 * std::max(scale, 1.0))
                fail_invalid("psd_check: matrix not Hermitian");
    std::vector<double> eig = jacobi_eigenvalues(realify(h));
    return {eig.front(), eig.back()};
}

// singular values of a square complex matrix, descending.  Eigenvalues of the
// realified M^H M come in duplicated pairs; adjacent sorted entries are
// collapsed by averaging.
inline std::vector<double> singular_values(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) fail_invalid("singular_values: empty matrix");
    ComplexMatrix h(n, std::vector<Complex>(n, Complex(0.0, 0.0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) acc += std::conj(m[k][i]) * m[k][j];
            h[i][j] = acc;
        }
    std::vector<double> eig = jacobi_eigenvalues(realify(h));
    std::vector<double> sv(n);
    for (std::size_t i = 0; i < n; ++i) {
        double pair_mean = 0.5 * (eig[2 * i] + eig[2 * i + 1]);
        sv[n - 1 - i] = std::sqrt(std::max(0.0, pair_mean));
    }
    return sv;
}

// number of singular values above threshold * largest
inline int numeric_rank(const ComplexMatrix& m, double threshold) {
    if (!(threshold > 0.0)) fail_invalid("numeric_rank: threshold must be > 0");
    std::vector<double> sv = singular_values(m);
    double cut = threshold * sv.front();
    int rank = 0;
    for (double s : sv)
        if (s > cut) ++rank;
    return rank;
}

}  // namespace zsl
