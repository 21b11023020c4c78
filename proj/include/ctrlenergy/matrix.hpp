#pragma once

#include <initializer_list>
#include <vector>

#include "ctrlenergy/errors.hpp"

namespace ctrlenergy {

/// Dense real matrix, double precision, row-major storage.
///
/// Entries are validated to be finite when constructed from caller-supplied
/// data. Dimensions use `int`; everything in this library is small (n <= ~30).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);  // zero-initialized
  Matrix(int rows, int cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(int n);
  static Matrix zeros(int rows, int cols);
  static Matrix diagonal(const std::vector<double>& d);
  static Matrix column(const std::vector<double>& v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  Matrix transpose() const;
  Matrix operator-() const;
  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

  double trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  /// Symmetry within the library-wide tolerance:
  /// max|M_ij - M_ji| <= tol_rel * max(1, max|M_ij|).
  bool is_symmetric(double tol_rel = 1e-12) const;
  Matrix symmetric_part() const;  // (M + M^T)/2

  Matrix col(int j) const;  // n x 1
  void set_col(int j, const Matrix& c);
  Matrix block(int i0, int j0, int rows, int cols) const;
  void set_block(int i0, int j0, const Matrix& m);

  static Matrix hcat(const Matrix& a, const Matrix& b);

  const std::vector<double>& data() const { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, Matrix m);
Matrix operator*(Matrix m, double s);

double dot(const Matrix& a, const Matrix& b);  // Frobenius inner product
Matrix outer(const Matrix& u, const Matrix& v);  // u v^T for column vectors

/// Solves A X = RHS by Gaussian elimination with partial pivoting.
/// Throws SingularMatrixError when a pivot falls below roundoff scale.
Matrix solve(const Matrix& a, const Matrix& rhs);
Matrix inverse(const Matrix& a);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace ctrlenergy
