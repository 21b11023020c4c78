#pragma once

#include "ctrlenergy/actuator_set.hpp"
#include "ctrlenergy/linalg.hpp"
#include "ctrlenergy/matrix.hpp"

namespace ctrlenergy {

/// Continuous-time linear system x' = A x + B u.
struct LinearSystem {
  Matrix A;
  Matrix B;

  LinearSystem(Matrix a, Matrix b);
  int state_dim() const { return A.rows(); }
  int input_dim() const { return B.cols(); }
};

/// Control horizon: infinite (requires strictly stable A at evaluation time)
/// or finite with T > 0.
class Horizon {
 public:
  static Horizon infinite() { return Horizon(true, 0.0); }
  static Horizon finite(double t);

  bool is_infinite() const { return infinite_; }
  double T() const;  // throws on infinite horizon

 private:
  Horizon(bool inf, double t) : infinite_(inf), t_(t) {}
  bool infinite_;
  double t_;
};

/// Columns of B selected by S (ascending index order). S may be empty,
/// producing an n x 0 matrix.
Matrix restrict_columns(const Matrix& b, const ActuatorSet& s);

/// Controllability Gramian W = int_0^T e^{At} B B^T e^{A^T t} dt.
///
/// Infinite horizon solves the Lyapunov equation A W + W A^T + B B^T = 0
/// (A must be strictly stable). Finite horizon uses the augmented-exponential
/// technique on [[-A, BB^T], [0, A^T]] * T; when ||A||_F * T is large and A is
/// stable it switches to W(T) = W(inf) - e^{AT} W(inf) e^{A^T T}, which avoids
/// overflow in e^{-AT}.
Matrix gramian(const LinearSystem& sys, const Horizon& h);

/// Rank test on [B, AB, ..., A^{n-1}B] with relative threshold kRankTol.
bool is_controllable(const LinearSystem& sys);

/// PBH-style diagnostic for symmetric A: true iff rank([A - lambda I, B]) = n
/// for every eigenvalue lambda of A. Agrees with is_controllable; kept as an
/// independent cross-check because the eigenvector-avoidance arguments here
/// are naturally phrased this way.
bool pbh_controllable_symmetric(const LinearSystem& sys);

}  // namespace ctrlenergy
