#include "ctrlenergy/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace ctrlenergy {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Deterministic standard normals: Box-Muller on top of mt19937_64, with the
/// uniform built from the top 53 bits. mt19937_64 output is fully specified
/// by the standard, so runs reproduce across platforms.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

 private:
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Matrix fixture_b_float(FactorMethod method, const Theorem1Fixture& fx) {
  const Matrix f_init = psd_factor(fx.w_init.to_matrix(), method);
  const Matrix f_delta = psd_factor(fx.w_delta.to_matrix(), method);
  const Matrix b5 = Matrix::column({static_cast<double>(fx.b5[0]),
                                    static_cast<double>(fx.b5[1])});
  return Matrix::hcat(Matrix::hcat(f_init, f_delta), b5);
}

double column_norm(const Matrix& c) { return c.frobenius_norm(); }

}  // namespace

Theorem1Fixture theorem1_fixture(FactorMethod method) {
  Theorem1Fixture fx;
  fx.w_init = RationalMatrix{{256, 0}, {0, 1536}};
  fx.w_delta = RationalMatrix{{2560, -1536}, {-1536, 1024}};
  fx.b5 = {1, 64};
  fx.s1 = ActuatorSet{1, 2};
  fx.s2 = ActuatorSet{1, 2, 5};
  fx.delta = ActuatorSet{3, 4};
  fx.b_float = fixture_b_float(method, fx);
  return fx;
}

Matrix theorem1_a_matrix(double eps) {
  Matrix a{{-0.5 + eps, eps}, {eps, -0.5 + eps}};
  return a;
}

Theorem1Exact verify_theorem1_exact() {
  const Theorem1Fixture fx = theorem1_fixture();
  const RationalMatrix b5_outer = RationalMatrix::outer(fx.b5);

  Theorem1Exact out;
  out.lhs = rat_trace_inverse_2x2(fx.w_init) -
            rat_trace_inverse_2x2(fx.w_init + fx.w_delta);
  const RationalMatrix with_b5 = fx.w_init + b5_outer;
  out.rhs = rat_trace_inverse_2x2(with_b5) -
            rat_trace_inverse_2x2(with_b5 + fx.w_delta);
  out.violated = out.rhs > out.lhs;
  return out;
}

Theorem1Float verify_theorem1_float(double eps, FactorMethod method) {
  if (eps < 0.0 || eps >= 0.25)
    throw StabilityError("verify_theorem1_float requires 0 <= eps < 1/4 "
                         "(A_eps has eigenvalue -1/2 + 2 eps)");
  const Theorem1Fixture fx = theorem1_fixture(method);
  const Matrix a = theorem1_a_matrix(eps);

  SetFunction f;
  if (eps == 0.0) {
    f = outer_product_energy_function(fx.b_float);
  } else {
    f = energy_set_function(LinearSystem(a, fx.b_float), Horizon::infinite());
  }

  Theorem1Float out;
  out.eps = eps;
  out.lhs_gap = f(fx.s1).value() - f(fx.s1.union_with(fx.delta)).value();
  out.rhs_gap = f(fx.s2).value() - f(fx.s2.union_with(fx.delta)).value();
  out.violated =
      out.rhs_gap - out.lhs_gap > kMarginTol * std::max(1.0, std::fabs(out.lhs_gap));

  out.singleton_controllable = true;
  for (int i = 0; i < fx.b_float.cols(); ++i) {
    if (!is_controllable(LinearSystem(a, fx.b_float.col(i)))) {
      out.singleton_controllable = false;
      break;
    }
  }
  return out;
}

EpsilonCertificate certify_epsilon(double eps, FactorMethod method) {
  const Theorem1Fixture fx = theorem1_fixture(method);
  EpsilonCertificate out;

  const Matrix a = theorem1_a_matrix(eps);
  out.stable = is_strictly_stable(a);

  // The eigenvectors of A_eps are [1, 1] and [1, -1] for every eps.
  out.eigvec_avoidance = true;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < fx.b_float.cols(); ++j) {
    const Matrix c = fx.b_float.col(j);
    const double n = column_norm(c);
    if (n == 0.0) {
      out.eigvec_avoidance = false;
      break;
    }
    for (double sgn : {1.0, -1.0}) {
      const double cosang = (c(0, 0) + sgn * c(1, 0)) * inv_sqrt2 / n;
      const double sinang = std::sqrt(std::max(0.0, 1.0 - cosang * cosang));
      if (sinang <= 1e-8) out.eigvec_avoidance = false;
    }
  }

  out.all_nonempty_finite = false;
  if (out.stable) {
    const SetFunction f =
        energy_set_function(LinearSystem(a, fx.b_float), Horizon::infinite());
    out.all_nonempty_finite = true;
    for (std::uint32_t mask = 1; mask < 32; ++mask) {
      if (!f(ActuatorSet::from_mask(mask)).is_finite()) {
        out.all_nonempty_finite = false;
        break;
      }
    }
  }
  return out;
}

Matrix squaring_example_u() { return Matrix{{10, 6}, {6, 10}}; }
Matrix squaring_example_v() { return Matrix{{80, 0}, {0, 11}}; }

std::optional<Matrix> check_squares_violation(const Matrix& u, const Matrix& v) {
  if (!u.is_symmetric() || !v.is_symmetric())
    throw InputError("check_squares_violation requires symmetric U, V");
  if (u.rows() != v.rows()) throw InputError("U, V dimension mismatch");
  for (const Matrix* m : {&u, &v}) {
    const auto eig = sym_eig(*m);
    if (eig.values.front() <= kSingularTol * std::max(1.0, eig.values.back()))
      throw NumericalError("check_squares_violation requires positive definite U, V");
  }
  if (!is_psd(v - u)) return std::nullopt;

  const Matrix d = (u * u - v * v).symmetric_part();
  const auto eig = sym_eig(d);
  const double top = eig.values.back();
  if (top <= kPsdTol * std::max(1.0, d.max_abs())) return std::nullopt;
  return eig.vectors.col(static_cast<int>(eig.values.size()) - 1);
}

WTriple build_w_triple(const Matrix& u, const Matrix& v, const Matrix& z) {
  WTriple t;
  t.w1 = inverse(v).symmetric_part();
  t.w2 = t.w1 + outer(z, z);
  t.w3 = (inverse(u).symmetric_part() - t.w1).symmetric_part();
  return t;
}

double g_eval(double gamma, const WTriple& t) {
  const Matrix w_gamma = t.w1 + gamma * (t.w2 - t.w1);
  try {
    return trace_inverse(w_gamma) - trace_inverse(w_gamma + t.w3);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("g_eval: singular matrix along the path at gamma = " +
                              std::to_string(gamma));
  }
}

double g_prime0(const WTriple& t) {
  const Matrix w1_inv = inverse(t.w1);
  const Matrix w13_inv = inverse(t.w1 + t.w3);
  const Matrix diff = w13_inv * w13_inv - w1_inv * w1_inv;
  return dot(diff.symmetric_part(), (t.w2 - t.w1).symmetric_part());
}

double find_gamma_hat(const WTriple& t) {
  const double gp = g_prime0(t);
  if (!(gp > 0.0))
    throw InputError("find_gamma_hat requires g'(0) > 0 (got " + std::to_string(gp) + ")");
  const double g0 = g_eval(0.0, t);
  std::string samples;
  double gamma = 1.0;
  for (int i = 0; i <= 40; ++i, gamma *= 0.5) {
    const double g = g_eval(gamma, t);
    if (g > g0 + 1e-12) return gamma;
    samples += " g(" + std::to_string(gamma) + ")=" + std::to_string(g);
  }
  throw NumericalError("gamma sweep exhausted despite g'(0) > 0; samples:" + samples);
}

namespace {

Matrix padded_factor(const Matrix& m, int width) {
  const Matrix f = psd_factor(m, FactorMethod::Triangular);
  if (f.cols() > width) throw NumericalError("factor has more columns than its slot");
  Matrix out(m.rows(), width);
  out.set_block(0, 0, f);
  return out;
}

}  // namespace

CounterexampleSystem assemble_counterexample(const WTriple& t, double gamma_hat) {
  if (!(gamma_hat > 0.0) || gamma_hat > 1.0)
    throw InputError("gamma_hat must lie in (0, 1]");
  const Matrix b = Matrix::hcat(
      Matrix::hcat(padded_factor(t.w1, 2), padded_factor(t.w3, 2)),
      padded_factor(gamma_hat * (t.w2 - t.w1), 1));

  CounterexampleSystem out{LinearSystem(-0.5 * Matrix::identity(2), b),
                           ActuatorSet{1, 2}, ActuatorSet{1, 2, 5}, ActuatorSet{3, 4}};
  const SetFunction f = outer_product_energy_function(b);
  out.lhs_gap = f(out.s1).value() - f(out.s1.union_with(out.delta)).value();
  out.rhs_gap = f(out.s2).value() - f(out.s2.union_with(out.delta)).value();
  out.gap = out.rhs_gap - out.lhs_gap;
  return out;
}

ConstructionResult run_construction(const Matrix& u, const Matrix& v) {
  const auto z = check_squares_violation(u, v);
  if (!z)
    throw NumericalError("U, V do not witness a Loewner-squaring failure; "
                         "nothing to construct from");
  const WTriple triple = build_w_triple(u, v, *z);
  const double g0 = g_eval(0.0, triple);
  const double gp0 = g_prime0(triple);
  const double gamma_hat = find_gamma_hat(triple);
  const double g_gamma_hat = g_eval(gamma_hat, triple);
  CounterexampleSystem system = assemble_counterexample(triple, gamma_hat);
  const bool violated =
      system.gap > kMarginTol * std::max(1.0, std::fabs(system.lhs_gap));
  return ConstructionResult{u,         v,           *z,         triple, g0, gp0,
                            gamma_hat, g_gamma_hat, std::move(system), violated};
}

Matrix orthonormal_row_completion(const Matrix& b) {
  if (b.rows() != 2) throw InputError("orthonormal_row_completion expects a 2-row matrix");
  const int m = b.cols();
  double ip = 0.0, n1 = 0.0, n2 = 0.0;
  for (int j = 0; j < m; ++j) {
    ip += b(0, j) * b(1, j);
    n1 += b(0, j) * b(0, j);
    n2 += b(1, j) * b(1, j);
  }
  const double c1 = -ip;
  const double c2 = n2 - n1;
  if (std::fabs(c1) <= 1e-12 * std::max(1.0, std::max(n1, n2)))
    throw InputError("rows are already orthogonal (c1 = 0); completion formula "
                     "does not apply");
  // alpha^2 is the positive root of t^2 - c2 t - c1^2 = 0.
  const double disc = std::sqrt(c2 * c2 + 4.0 * c1 * c1);
  const double alpha = std::sqrt(0.5 * (c2 + disc));
  const double beta = c1 / alpha;

  Matrix out(2, m + 1);
  out.set_block(0, 0, b);
  out(0, m) = alpha;
  out(1, m) = beta;
  for (int i = 0; i < 2; ++i) {
    double n = 0.0;
    for (int j = 0; j <= m; ++j) n += out(i, j) * out(i, j);
    n = std::sqrt(n);
    for (int j = 0; j <= m; ++j) out(i, j) /= n;
  }
  return out;
}

Theorem2Result embed_theorem2(const Matrix& b1, double K, std::uint64_t seed) {
  if (!(K > 8.0)) throw InputError("embed_theorem2 requires K > 8");
  if (b1.rows() != 2 || b1.cols() != 6)
    throw InputError("embed_theorem2 expects a 2x6 matrix");
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) {
      double ip = 0.0;
      for (int k = 0; k < 6; ++k) ip += b1(i, k) * b1(j, k);
      if (std::fabs(ip - (i == j ? 1.0 : 0.0)) > 1e-10)
        throw InputError("embed_theorem2 expects orthonormal rows");
    }

  Theorem2Result out;
  out.K = K;
  out.seed = seed;
  out.b1 = b1;
  out.b3 = Matrix(6, 6);
  out.b3.set_block(0, 0, b1);

  NormalSampler normal(seed);
  int filled = 2;
  int retries = 0;
  while (filled < 6) {
    std::vector<double> row(6);
    for (double& x : row) x = normal();
    // Gram-Schmidt against all accepted rows.
    for (int r = 0; r < filled; ++r) {
      double ip = 0.0;
      for (int j = 0; j < 6; ++j) ip += out.b3(r, j) * row[j];
      for (int j = 0; j < 6; ++j) row[j] -= ip * out.b3(r, j);
    }
    double nrm = 0.0;
    for (double x : row) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-8) {
      if (++retries > 10)
        throw RandomnessError("Gram-Schmidt completion degenerated 10 times in a row");
      continue;
    }
    for (int j = 0; j < 6; ++j) out.b3(filled, j) = row[j] / nrm;
    ++filled;
  }

  out.a1 = Matrix::diagonal({-K / 2.0, -K / 2.0, -4.0, -3.0, -2.0, -1.0});
  out.a_sym = (out.b3.transpose() * out.a1 * out.b3).symmetric_part();
  return out;
}

Theorem2Result verify_theorem2(double K, std::uint64_t seed) {
  const Theorem1Fixture fx = theorem1_fixture();
  const Matrix b1 = orthonormal_row_completion(fx.b_float);

  // The witnessing sets never include column 6 (the completion column).
  const ActuatorSet sets[4] = {fx.s1, fx.s1.union_with(fx.delta), fx.s2,
                               fx.s2.union_with(fx.delta)};

  for (std::uint64_t attempt = 0; attempt < 3; ++attempt) {
    Theorem2Result out = embed_theorem2(b1, K, seed + (attempt << 32));
    const LinearSystem transformed(out.a_sym, Matrix::identity(6));
    const SetFunction f = energy_set_function(transformed, Horizon::infinite());

    double e[4];
    bool degenerate = false;
    for (int i = 0; i < 4; ++i) {
      const EnergyValue val = f(sets[i]);
      if (!val.is_finite()) {
        degenerate = true;
        break;
      }
      e[i] = val.value();
    }
    if (degenerate) continue;  // measure-zero draw; retry with a fresh stream

    out.lhs_gap = e[0] - e[1];
    out.rhs_gap = e[2] - e[3];
    out.violated = out.rhs_gap > out.lhs_gap * (1.0 + 1e-6);

    // K * What(S) elementwise against the reference Gramians B(S) B(S)^T,
    // over entries that are not essentially zero.
    double rmin = 0.0, rmax = 0.0;
    bool first = true;
    for (const auto& s : sets) {
      const Matrix w_full =
          gramian(LinearSystem(out.a1, restrict_columns(out.b3, s)), Horizon::infinite());
      const Matrix w_hat = w_full.block(0, 0, 2, 2);
      const Matrix b_ref = restrict_columns(fx.b_float, s);
      const Matrix w_ref = b_ref * b_ref.transpose();
      const double scale = w_ref.max_abs();
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          if (std::fabs(w_ref(i, j)) <= 1e-9 * scale) continue;
          const double r = K * w_hat(i, j) / w_ref(i, j);
          rmin = first ? r : std::min(rmin, r);
          rmax = first ? r : std::max(rmax, r);
          first = false;
        }
    }
    out.kratio_min = rmin;
    out.kratio_max = rmax;
    return out;
  }
  throw RandomnessError("verify_theorem2: singular Gramian on 3 successive streams");
}

double block_trace_identity_check(const Matrix& u, const Matrix& v, const Matrix& x,
                                  const Matrix& y) {
  if (!u.is_square() || !y.is_square()) throw InputError("U and Y must be square");
  const int p = u.rows();
  const int q = y.rows();
  if (v.rows() != p || v.cols() != q || x.rows() != q || x.cols() != p)
    throw InputError("block dimensions are inconsistent");

  Matrix u_inv;
  try {
    u_inv = inverse(u);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("block trace identity: U block is singular");
  }
  const Matrix schur = y - x * u_inv * v;
  Matrix schur_inv;
  try {
    schur_inv = inverse(schur);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("block trace identity: Schur complement is singular");
  }

  Matrix full(p + q, p + q);
  full.set_block(0, 0, u);
  full.set_block(0, p, v);
  full.set_block(p, 0, x);
  full.set_block(p, p, y);
  const double direct = inverse(full).trace();
  const double rhs =
      u_inv.trace() +
      (schur_inv * (Matrix::identity(q) + x * u_inv * u_inv * v)).trace();
  return std::fabs(direct - rhs) / std::max(1.0, std::fabs(direct));
}

}  // namespace ctrlenergy
