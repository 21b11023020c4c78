// Test-only oracles: independent computation routes used to freeze expected
// values. Nothing here may call the code path it is checking.
#pragma once

#include <cmath>
#include <random>

#include "ctrlenergy/linalg.hpp"
#include "ctrlenergy/matrix.hpp"

namespace oracles {

using ctrlenergy::Matrix;

// --- 2x2 closed forms -------------------------------------------------------

inline double trace_inverse_2x2(const Matrix& m) {
  return (m(0, 0) + m(1, 1)) / (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
}

inline Matrix inverse_2x2(const Matrix& m) {
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return Matrix{{m(1, 1) / det, -m(0, 1) / det}, {-m(1, 0) / det, m(0, 0) / det}};
}

// Eigenvalues of a symmetric 2x2 via the characteristic polynomial, ascending.
inline std::pair<double, double> sym_eigenvalues_2x2(const Matrix& m) {
  const double tr = m(0, 0) + m(1, 1);
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return {(tr - disc) / 2.0, (tr + disc) / 2.0};
}

// Unit eigenvector of a symmetric 2x2 for the given eigenvalue.
inline Matrix sym_eigenvector_2x2(const Matrix& m, double lambda) {
  double x = m(0, 1);
  double y = lambda - m(0, 0);
  if (std::fabs(x) + std::fabs(y) < 1e-300) {
    x = lambda - m(1, 1);
    y = m(1, 0);
  }
  const double n = std::sqrt(x * x + y * y);
  return Matrix{{x / n}, {y / n}};
}

// --- quadrature Gramian oracle ----------------------------------------------

inline Matrix gramian_integrand(const Matrix& a, const Matrix& q, double t) {
  const Matrix e = ctrlenergy::expm(a * t);
  return e * q * e.transpose();
}

inline Matrix simpson_slice(const Matrix& a, const Matrix& q, double lo, double hi) {
  const Matrix f0 = gramian_integrand(a, q, lo);
  const Matrix f1 = gramian_integrand(a, q, 0.5 * (lo + hi));
  const Matrix f2 = gramian_integrand(a, q, hi);
  return (hi - lo) / 6.0 * (f0 + 4.0 * f1 + f2);
}

inline Matrix adaptive_simpson(const Matrix& a, const Matrix& q, double lo, double hi,
                               const Matrix& whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const Matrix left = simpson_slice(a, q, lo, mid);
  const Matrix right = simpson_slice(a, q, mid, hi);
  const Matrix err = left + right - whole;
  if (depth <= 0 || err.max_abs() <= 15.0 * tol)
    return left + right + (1.0 / 15.0) * err;
  return adaptive_simpson(a, q, lo, mid, left, tol / 2.0, depth - 1) +
         adaptive_simpson(a, q, mid, hi, right, tol / 2.0, depth - 1);
}

// int_0^T e^{At} B B' e^{A't} dt by adaptive Simpson on the matrix integrand.
inline Matrix quadrature_gramian(const Matrix& a, const Matrix& b, double T,
                                 double tol = 1e-12) {
  const Matrix q = b * b.transpose();
  const double scale = std::max(1.0, q.max_abs() * T);
  return adaptive_simpson(a, q, 0.0, T, simpson_slice(a, q, 0.0, T), tol * scale, 24);
}

// --- random instances --------------------------------------------------------

inline Matrix random_matrix(std::mt19937_64& gen, int rows, int cols, double lo = -1.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(gen);
  return m;
}

inline Matrix random_symmetric(std::mt19937_64& gen, int n) {
  return random_matrix(gen, n, n).symmetric_part();
}

// Random symmetric PSD with eigenvalues in [0, about n].
inline Matrix random_psd(std::mt19937_64& gen, int n) {
  const Matrix f = random_matrix(gen, n, n);
  return (f * f.transpose()).symmetric_part();
}

// Random symmetric strictly stable: symmetric minus a spectral shift.
inline Matrix random_stable(std::mt19937_64& gen, int n, double margin = 0.5) {
  Matrix s = random_symmetric(gen, n);
  // Gershgorin bound keeps every eigenvalue below -margin after the shift.
  double radius = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::fabs(s(i, j));
    radius = std::max(radius, row);
  }
  for (int i = 0; i < n; ++i) s(i, i) -= radius + margin;
  return s;
}

}  // namespace oracles
