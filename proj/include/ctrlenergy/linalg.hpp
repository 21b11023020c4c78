#pragma once

#include <vector>

#include "ctrlenergy/matrix.hpp"

namespace ctrlenergy {

/// Default relative tolerance for PSD tests (on the most negative eigenvalue).
inline constexpr double kPsdTol = 1e-10;
/// Relative threshold below which an eigenvalue/singular value counts as zero.
inline constexpr double kSingularTol = 1e-10;
inline constexpr double kRankTol = 1e-10;

/// Spectral decomposition of a symmetric matrix; eigenvalues ascending,
/// eigenvector k in column k of `vectors`.
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;
};

/// Cyclic Jacobi diagonalization. Converges when the off-diagonal Frobenius
/// mass drops below 1e-14 * ||M||_F. Eigenvector columns are sign-normalized
/// so their largest-magnitude entry is positive.
EigenDecomposition sym_eig(const Matrix& m);

/// Loewner-order nonnegativity: lambda_min(M) >= -tol * max(1, lambda_max(M)).
bool is_psd(const Matrix& m, double tol = kPsdTol);

enum class FactorMethod { Triangular, Eigen };

/// Factor F with F F^T = M for symmetric PSD M. Triangular gives the
/// (rank-revealing) Cholesky factor; Eigen gives sqrt(lambda)-scaled
/// eigenvector columns, largest eigenvalue first. Numerically zero columns
/// are dropped, so F has one column per positive eigenvalue.
Matrix psd_factor(const Matrix& m, FactorMethod method, double tol = kPsdTol);

/// Matrix exponential by scaling and squaring with Pade approximants
/// (degree 13 at the top of the ladder).
Matrix expm(const Matrix& m);

/// Largest real part among the eigenvalues of A. Symmetric matrices use the
/// Jacobi spectrum; general matrices use Gelfand's formula on expm(A) with
/// norm-tracked repeated squaring, which pins log(spectral radius) well below
/// the stability tolerances used here.
double max_eigenvalue_real_part(const Matrix& a);

bool is_strictly_stable(const Matrix& a);

/// Solves A W + W A^T + Q = 0 for strictly stable A and symmetric Q, via the
/// Kronecker system (I (x) A + A (x) I) vec(W) = -vec(Q).
Matrix solve_lyapunov(const Matrix& a, const Matrix& q);

/// tr(M^-1) for symmetric positive definite M, computed via linear solves.
/// Throws SingularMatrixError when lambda_min <= kSingularTol * max(1, lambda_max).
double trace_inverse(const Matrix& m);

/// Singular values in descending order, via one-sided Jacobi on the columns
/// (high relative accuracy for the small values, which is what rank tests need).
std::vector<double> singular_values(const Matrix& m);

int numerical_rank(const Matrix& m, double tol = kRankTol);

}  // namespace ctrlenergy
