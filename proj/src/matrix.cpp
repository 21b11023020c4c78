#include "ctrlenergy/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

namespace ctrlenergy {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw InputError(msg);
}

void check_finite(const std::vector<double>& entries) {
  for (double x : entries) {
    if (!std::isfinite(x)) throw InputError("matrix entries must be finite");
  }
}

}  // namespace

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  require(rows >= 0 && cols >= 0, "matrix dimensions must be nonnegative");
  data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Matrix::Matrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require(rows >= 0 && cols >= 0, "matrix dimensions must be nonnegative");
  require(data_.size() == static_cast<std::size_t>(rows) * cols,
          "entry count does not match dimensions");
  check_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    require(static_cast<int>(r.size()) == cols_, "ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  check_finite(data_);
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::zeros(int rows, int cols) { return Matrix(rows, cols); }

Matrix Matrix::diagonal(const std::vector<double>& d) {
  const int n = static_cast<int>(d.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  check_finite(m.data_);
  return m;
}

Matrix Matrix::column(const std::vector<double>& v) {
  return Matrix(static_cast<int>(v.size()), 1, v);
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (double& x : m.data_) x = -x;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "dimension mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "dimension mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

double Matrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::fabs(x));
  return m;
}

bool Matrix::is_symmetric(double tol_rel) const {
  if (!is_square()) return false;
  const double scale = std::max(1.0, max_abs());
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (std::fabs((*this)(i, j) - (*this)(j, i)) > tol_rel * scale) return false;
  return true;
}

Matrix Matrix::symmetric_part() const {
  require(is_square(), "symmetric_part requires a square matrix");
  Matrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
  return m;
}

Matrix Matrix::col(int j) const {
  require(j >= 0 && j < cols_, "column index out of range");
  Matrix c(rows_, 1);
  for (int i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
  return c;
}

void Matrix::set_col(int j, const Matrix& c) {
  require(j >= 0 && j < cols_ && c.rows_ == rows_ && c.cols_ == 1, "bad set_col");
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = c(i, 0);
}

Matrix Matrix::block(int i0, int j0, int rows, int cols) const {
  require(i0 >= 0 && j0 >= 0 && i0 + rows <= rows_ && j0 + cols <= cols_,
          "block out of range");
  Matrix b(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
  return b;
}

void Matrix::set_block(int i0, int j0, const Matrix& m) {
  require(i0 >= 0 && j0 >= 0 && i0 + m.rows_ <= rows_ && j0 + m.cols_ <= cols_,
          "block out of range");
  for (int i = 0; i < m.rows_; ++i)
    for (int j = 0; j < m.cols_; ++j) (*this)(i0 + i, j0 + j) = m(i, j);
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
  if (a.empty() && a.rows_ == 0) return b;
  if (b.empty() && b.rows_ == 0) return a;
  require(a.rows_ == b.rows_, "hcat row mismatch");
  Matrix m(a.rows_, a.cols_ + b.cols_);
  m.set_block(0, 0, a);
  m.set_block(0, a.cols_, b);
  return m;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InputError("dimension mismatch in *");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator*(double s, Matrix m) { return m *= s; }
Matrix operator*(Matrix m, double s) { return m *= s; }

double dot(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("dimension mismatch in dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

Matrix outer(const Matrix& u, const Matrix& v) {
  if (u.cols() != 1 || v.cols() != 1) throw InputError("outer expects column vectors");
  Matrix m(u.rows(), v.rows());
  for (int i = 0; i < u.rows(); ++i)
    for (int j = 0; j < v.rows(); ++j) m(i, j) = u(i, 0) * v(j, 0);
  return m;
}

Matrix solve(const Matrix& a, const Matrix& rhs) {
  if (!a.is_square()) throw InputError("solve requires a square matrix");
  if (a.rows() != rhs.rows()) throw InputError("solve dimension mismatch");
  const int n = a.rows();
  const int m = rhs.cols();
  Matrix lu = a;
  Matrix x = rhs;
  const double pivot_floor = 1e-14 * std::max(1.0, a.max_abs()) * 1e-2;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(lu(i, k)) > std::fabs(lu(p, k))) p = i;
    if (std::fabs(lu(p, k)) <= pivot_floor)
      throw SingularMatrixError("singular linear system (pivot " +
                                std::to_string(lu(p, k)) + " at column " +
                                std::to_string(k) + ")");
    if (p != k) {
      for (int j = k; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      for (int j = 0; j < m; ++j) std::swap(x(k, j), x(p, j));
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      if (f == 0.0) continue;
      lu(i, k) = 0.0;
      for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (int j = 0; j < m; ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    for (int j = 0; j < m; ++j) {
      double s = x(k, j);
      for (int i = k + 1; i < n; ++i) s -= lu(k, i) * x(i, j);
      x(k, j) = s / lu(k, k);
    }
  }
  return x;
}

Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (int p = 0; p < b.rows(); ++p)
        for (int q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

}  // namespace ctrlenergy
