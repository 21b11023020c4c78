#include "ctrlenergy/gramian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ctrlenergy {

LinearSystem::LinearSystem(Matrix a, Matrix b) : A(std::move(a)), B(std::move(b)) {
  if (!A.is_square() || A.rows() < 1) throw InputError("A must be square, n >= 1");
  if (B.rows() != A.rows()) throw InputError("B must have as many rows as A");
}

Horizon Horizon::finite(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("finite horizon requires T > 0");
  return Horizon(false, t);
}

double Horizon::T() const {
  if (infinite_) throw InputError("T() on an infinite horizon");
  return t_;
}

Matrix restrict_columns(const Matrix& b, const ActuatorSet& s) {
  if (s.max_index() > b.cols())
    throw InputError("actuator index " + std::to_string(s.max_index()) +
                     " out of range for B with " + std::to_string(b.cols()) + " columns");
  Matrix out(b.rows(), s.size());
  int j = 0;
  for (int idx : s.indices()) {
    for (int i = 0; i < b.rows(); ++i) out(i, j) = b(i, idx - 1);
    ++j;
  }
  return out;
}

namespace {

Matrix input_covariance(const Matrix& b) {
  if (b.cols() == 0) return Matrix::zeros(b.rows(), b.rows());
  return b * b.transpose();
}

Matrix finite_gramian(const Matrix& a, const Matrix& q, double t) {
  const int n = a.rows();

  // e^{-AT} appears in the augmented exponential; fall back to the
  // stationary-difference form when it would blow up.
  if (a.frobenius_norm() * t > 20.0 && is_strictly_stable(a)) {
    const Matrix w_inf = solve_lyapunov(a, q);
    const Matrix e = expm(a * t);
    return (w_inf - e * w_inf * e.transpose()).symmetric_part();
  }

  Matrix aug(2 * n, 2 * n);
  aug.set_block(0, 0, -a);
  aug.set_block(0, n, q);
  aug.set_block(n, n, a.transpose());
  const Matrix f = expm(aug * t);
  const Matrix f12 = f.block(0, n, n, n);
  const Matrix f22 = f.block(n, n, n, n);  // e^{A^T T}
  return (f22.transpose() * f12).symmetric_part();
}

}  // namespace

Matrix gramian(const LinearSystem& sys, const Horizon& h) {
  const Matrix q = input_covariance(sys.B);
  if (h.is_infinite()) return solve_lyapunov(sys.A, q);
  return finite_gramian(sys.A, q, h.T());
}

bool is_controllable(const LinearSystem& sys) {
  const int n = sys.state_dim();
  if (sys.B.cols() == 0) return false;
  Matrix ctrb = sys.B;
  Matrix power = sys.B;
  for (int k = 1; k < n; ++k) {
    power = sys.A * power;
    ctrb = Matrix::hcat(ctrb, power);
  }
  return numerical_rank(ctrb) == n;
}

bool pbh_controllable_symmetric(const LinearSystem& sys) {
  if (!sys.A.is_symmetric()) throw InputError("pbh_controllable_symmetric needs symmetric A");
  if (sys.B.cols() == 0) return false;
  const auto eig = sym_eig(sys.A);
  const int n = sys.state_dim();
  double prev = std::nan("");
  for (double lambda : eig.values) {
    if (!std::isnan(prev) && std::fabs(lambda - prev) <= 1e-9 * std::max(1.0, std::fabs(lambda)))
      continue;  // repeated eigenvalue, same test
    prev = lambda;
    Matrix shifted = sys.A;
    for (int i = 0; i < n; ++i) shifted(i, i) -= lambda;
    if (numerical_rank(Matrix::hcat(shifted, sys.B)) < n) return false;
  }
  return true;
}

}  // namespace ctrlenergy
