#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ctrlenergy/rational.hpp"
#include "ctrlenergy/setfunc.hpp"

namespace ctrlenergy {

/// Built-in 2x2/5-column counterexample data: integer Gramian pieces, the
/// extra column b5, the witnessing sets, and a floating-point B whose column
/// outer products reproduce the Gramian pieces.
struct Theorem1Fixture {
  RationalMatrix w_init;   // [[256, 0], [0, 1536]]
  RationalMatrix w_delta;  // [[2560, -1536], [-1536, 1024]]
  std::vector<long long> b5;  // [1, 64]
  ActuatorSet s1, s2, delta;
  Matrix b_float;  // 2x5: factors of w_init | factors of w_delta | b5
};

/// `method` selects how w_init and w_delta are split into columns:
/// Triangular reproduces the printed reference B, Eigen gives columns
/// proportional to eigenvectors (what the eigenvector-avoidance argument
/// of the epsilon-certificate wants).
Theorem1Fixture theorem1_fixture(FactorMethod method = FactorMethod::Triangular);

/// A_eps = -(1/2) I_2 + eps * ones; strictly stable iff eps < 1/4.
Matrix theorem1_a_matrix(double eps);

struct Theorem1Exact {
  Rational lhs;  // 49/14208
  Rational rhs;  // 82017217/23373975296
  bool violated = false;
};

/// Exact rational evaluation of both energy gaps; no floating point anywhere.
Theorem1Exact verify_theorem1_exact();

struct Theorem1Float {
  double eps = 0.0;
  double lhs_gap = 0.0;
  double rhs_gap = 0.0;
  bool violated = false;
  bool singleton_controllable = false;
};

/// Floating-point gaps for A_eps. eps = 0 evaluates the outer-product sums
/// directly; eps > 0 solves the infinite-horizon Lyapunov Gramians.
Theorem1Float verify_theorem1_float(double eps,
                                    FactorMethod method = FactorMethod::Triangular);

struct EpsilonCertificate {
  bool stable = false;            // eps < 1/4, by eigenvalue check
  bool eigvec_avoidance = false;  // no B column parallel to [1, +-1]
  bool all_nonempty_finite = false;  // all 31 nonempty subsets, by enumeration
};

EpsilonCertificate certify_epsilon(double eps,
                                   FactorMethod method = FactorMethod::Triangular);

/// The U, V pair (V - U PSD but U^2 - V^2 indefinite) that seeds the
/// construction pipeline.
Matrix squaring_example_u();  // [[10, 6], [6, 10]]
Matrix squaring_example_v();  // diag(80, 11)

/// For symmetric positive definite U, V: returns a unit eigenvector z of
/// U^2 - V^2 for its largest eigenvalue iff V - U >= 0 and U^2 - V^2 has a
/// positive eigenvalue; nullopt when the pair is no counterexample to
/// Loewner-order squaring.
std::optional<Matrix> check_squares_violation(const Matrix& u, const Matrix& v);

struct WTriple {
  Matrix w1;  // V^-1
  Matrix w2;  // V^-1 + z z^T
  Matrix w3;  // U^-1 - V^-1
};

WTriple build_w_triple(const Matrix& u, const Matrix& v, const Matrix& z);

/// g(gamma) = tr[(W1 + gamma(W2-W1))^-1 - (W1 + gamma(W2-W1) + W3)^-1].
double g_eval(double gamma, const WTriple& t);
/// Analytic g'(0) = tr[((W1+W3)^-2 - W1^-2)(W2 - W1)].
double g_prime0(const WTriple& t);

/// Largest gamma in {1, 1/2, ..., 2^-40} with g(gamma) > g(0) + 1e-12.
/// Requires g'(0) > 0.
double find_gamma_hat(const WTriple& t);

struct CounterexampleSystem {
  LinearSystem sys;  // A = -(1/2) I_2, B 2x5
  ActuatorSet s1, s2, delta;
  double lhs_gap = 0.0;
  double rhs_gap = 0.0;
  double gap = 0.0;  // rhs_gap - lhs_gap
};

/// B = [cols(W1) | cols(W3) | cols(gamma_hat (W2 - W1))], zero-padded to the
/// fixed 2+2+1 layout, with the Delta-gap evaluated at S1={1,2}, S2={1,2,5},
/// Delta={3,4}.
CounterexampleSystem assemble_counterexample(const WTriple& t, double gamma_hat);

/// Full pipeline record for one U, V seed.
struct ConstructionResult {
  Matrix u, v, z;
  WTriple triple;
  double g0 = 0.0;
  double gp0 = 0.0;
  double gamma_hat = 0.0;
  double g_gamma_hat = 0.0;
  CounterexampleSystem system;
  bool violated = false;
};

ConstructionResult run_construction(const Matrix& u, const Matrix& v);

/// Appends one entry to each row of a 2xm matrix so the rows become
/// orthogonal with equal norm, then normalizes both rows to unit norm.
/// The appended pair (alpha, beta) solves alpha*beta = c1, alpha^2 - beta^2 = c2
/// with c1 = -(row1 . row2) and c2 = ||row2||^2 - ||row1||^2; requires c1 != 0.
Matrix orthonormal_row_completion(const Matrix& b);

struct Theorem2Result {
  double K = 0.0;
  std::uint64_t seed = 0;
  Matrix b1;     // 2x6, orthonormal rows
  Matrix b3;     // 6x6 orthogonal, first two rows = b1
  Matrix a1;     // diag(-K/2, -K/2, -4, -3, -2, -1)
  Matrix a_sym;  // b3^T a1 b3
  double lhs_gap = 0.0;
  double rhs_gap = 0.0;
  bool violated = false;
  // Elementwise K * What(S) / W_ref(S) across the four witness sets, where
  // What is the upper-left 2x2 Gramian block in the untransformed frame.
  double kratio_min = 0.0;
  double kratio_max = 0.0;
};

/// Completes B1 to an orthogonal 6x6 matrix with seeded standard-normal rows
/// (Box-Muller over mt19937_64) and Gram-Schmidt; builds A1(K) and A_sym.
/// Gaps are not evaluated here.
Theorem2Result embed_theorem2(const Matrix& b1, double K, std::uint64_t seed);

/// embed_theorem2 on the completed fixture B, plus infinite-horizon energies
/// of (A_sym, I_6) over the four witness sets and the K-ratio diagnostic.
Theorem2Result verify_theorem2(double K, std::uint64_t seed);

/// Relative residual of
/// tr([[U, V], [X, Y]]^-1) = tr(U^-1) + tr((Y - X U^-1 V)^-1 (I + X U^-2 V)).
double block_trace_identity_check(const Matrix& u, const Matrix& v, const Matrix& x,
                                  const Matrix& y);

}  // namespace ctrlenergy
