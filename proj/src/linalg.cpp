#include "ctrlenergy/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ctrlenergy {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

void require_symmetric(const Matrix& m, const char* op) {
  if (!m.is_square()) throw InputError(std::string(op) + " requires a square matrix");
  if (!m.is_symmetric()) throw InputError(std::string(op) + " requires a symmetric matrix");
}

}  // namespace

EigenDecomposition sym_eig(const Matrix& m) {
  require_symmetric(m, "sym_eig");
  const int n = m.rows();
  Matrix a = m.symmetric_part();
  Matrix v = Matrix::identity(n);
  const double target = 1e-14 * std::max(a.frobenius_norm(), 1e-300);

  for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    out.values[k] = a(src, src);
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::fabs(v(i, src)) > std::fabs(v(imax, src))) imax = i;
    const double flip = v(imax, src) < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) out.vectors(i, k) = flip * v(i, src);
  }
  return out;
}

bool is_psd(const Matrix& m, double tol) {
  require_symmetric(m, "is_psd");
  const auto eig = sym_eig(m);
  const double lo = eig.values.front();
  const double hi = eig.values.back();
  return lo >= -tol * std::max(1.0, hi);
}

Matrix psd_factor(const Matrix& m, FactorMethod method, double tol) {
  require_symmetric(m, "psd_factor");
  const auto eig = sym_eig(m);
  const double hi = eig.values.back();
  const double lo = eig.values.front();
  if (lo < -tol * std::max(1.0, hi))
    throw NumericalError("psd_factor: matrix is not PSD (most negative eigenvalue " +
                         std::to_string(lo) + ")");
  const int n = m.rows();
  const double drop = tol * std::max(1.0, hi);

  if (method == FactorMethod::Eigen) {
    Matrix f(n, 0);
    for (int k = n - 1; k >= 0; --k) {  // largest eigenvalue first
      if (eig.values[k] <= drop) continue;
      Matrix c = eig.vectors.col(k);
      f = Matrix::hcat(f, c * std::sqrt(eig.values[k]));
    }
    return f;
  }

  // Rank-revealing Cholesky in outer-product form; columns whose pivot falls
  // below the drop threshold are skipped.
  Matrix r = m.symmetric_part();
  Matrix f(n, 0);
  for (int k = 0; k < n; ++k) {
    const double piv = r(k, k);
    if (piv <= drop) continue;
    Matrix c(n, 1);
    const double root = std::sqrt(piv);
    for (int i = k; i < n; ++i) c(i, 0) = r(i, k) / root;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j) r(i, j) -= c(i, 0) * c(j, 0);
    f = Matrix::hcat(f, c);
  }
  return f;
}

namespace {

// Pade approximants for expm; after each call (V+U)(V-U)^{-1} approximates
// exp(A). Coefficients are the standard ones for degrees 3..13.
void expm_pade(const Matrix& a, int degree, Matrix& u, Matrix& v) {
  static const std::vector<std::vector<double>> coeffs = {
      {120., 60., 12., 1.},
      {30240., 15120., 3360., 420., 30., 1.},
      {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.},
      {17643225600., 8821612800., 2075673600., 302702400., 30270240., 2162160., 110880.,
       3960., 90., 1.},
      {64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
       129060195264000., 10559470521600., 670442572800., 33522128640., 1323241920.,
       40840800., 960960., 16380., 182., 1.}};
  const std::vector<double>& b = coeffs[degree == 13 ? 4 : (degree - 3) / 2];
  const int n = a.rows();
  const Matrix id = Matrix::identity(n);
  const Matrix a2 = a * a;

  if (degree == 13) {
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    Matrix w = b[13] * a6 + b[11] * a4 + b[9] * a2;
    w = a6 * w;
    w += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
    u = a * w;
    Matrix z = b[12] * a6 + b[10] * a4 + b[8] * a2;
    v = a6 * z;
    v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return;
  }

  Matrix even = b[0] * id;  // V: even powers
  Matrix odd = b[1] * id;   // U/A: odd powers
  Matrix pw = id;
  for (int d = 2; d <= degree; d += 2) {
    pw = pw * a2;
    even += b[d] * pw;
    if (d + 1 <= degree) odd += b[d + 1] * pw;
  }
  u = a * odd;
  v = even;
}

}  // namespace

Matrix expm(const Matrix& m) {
  if (!m.is_square()) throw InputError("expm requires a square matrix");
  const int n = m.rows();
  if (n == 0) return m;

  double l1 = 0.0;  // max column sum
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::fabs(m(i, j));
    l1 = std::max(l1, s);
  }

  Matrix u, v;
  int squarings = 0;
  if (l1 < 1.495585217958292e-2) {
    expm_pade(m, 3, u, v);
  } else if (l1 < 2.539398330063230e-1) {
    expm_pade(m, 5, u, v);
  } else if (l1 < 9.504178996162932e-1) {
    expm_pade(m, 7, u, v);
  } else if (l1 < 2.097847961257068e0) {
    expm_pade(m, 9, u, v);
  } else {
    const double max13 = 5.371920351148152;
    if (l1 > max13) {
      std::frexp(l1 / max13, &squarings);
      if (squarings < 0) squarings = 0;
    }
    Matrix scaled = m * std::ldexp(1.0, -squarings);
    expm_pade(scaled, 13, u, v);
  }

  Matrix result = solve(v - u, v + u);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

double max_eigenvalue_real_part(const Matrix& a) {
  if (!a.is_square()) throw InputError("max_eigenvalue_real_part requires a square matrix");
  if (a.rows() == 0) throw InputError("empty matrix");
  if (a.is_symmetric()) return sym_eig(a).values.back();

  // rho(e^A) = e^{max Re lambda(A)}; track log||(e^A)^{2^k}|| through repeated
  // normalized squaring and divide by the power.
  Matrix g = expm(a);
  double nrm = g.frobenius_norm();
  if (nrm == 0.0) return -1e308;
  double log_norm = std::log(nrm);
  g = g * (1.0 / nrm);
  double estimate = log_norm;
  for (int k = 1; k <= 60; ++k) {
    g = g * g;
    const double s = g.frobenius_norm();
    if (s == 0.0 || !std::isfinite(s)) break;
    log_norm = 2.0 * log_norm + std::log(s);
    g = g * (1.0 / s);
    const double next = log_norm / std::ldexp(1.0, k);
    if (k > 20 && std::fabs(next - estimate) < 1e-14 * std::max(1.0, std::fabs(next))) {
      estimate = next;
      break;
    }
    estimate = next;
  }
  return estimate;
}

bool is_strictly_stable(const Matrix& a) {
  const double margin = 1e-12 * std::max(1.0, a.max_abs());
  return max_eigenvalue_real_part(a) < -margin;
}

Matrix solve_lyapunov(const Matrix& a, const Matrix& q) {
  if (!a.is_square()) throw InputError("solve_lyapunov requires a square A");
  require_symmetric(q, "solve_lyapunov (Q)");
  if (a.rows() != q.rows()) throw InputError("solve_lyapunov dimension mismatch");
  if (!is_strictly_stable(a))
    throw StabilityError("solve_lyapunov: A is not strictly stable (largest eigenvalue "
                         "real part " +
                         std::to_string(max_eigenvalue_real_part(a)) + ")");
  const int n = a.rows();
  const Matrix id = Matrix::identity(n);
  const Matrix k = kron(id, a) + kron(a, id);

  // Column-major vec convention: vec(AW + WA^T) = (I(x)A + A(x)I) vec(W).
  Matrix rhs(n * n, 1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) rhs(j * n + i, 0) = -q(i, j);

  const Matrix w_vec = solve(k, rhs);
  Matrix w(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) w(i, j) = w_vec(j * n + i, 0);
  return w.symmetric_part();
}

double trace_inverse(const Matrix& m) {
  require_symmetric(m, "trace_inverse");
  const auto eig = sym_eig(m);
  const double hi = eig.values.back();
  const double lo = eig.values.front();
  if (lo <= kSingularTol * std::max(1.0, hi))
    throw SingularMatrixError(
        "trace_inverse: matrix is singular or indefinite (lambda_min " +
        std::to_string(lo) + ", lambda_max " + std::to_string(hi) + ")");
  return solve(m, Matrix::identity(m.rows())).trace();
}

std::vector<double> singular_values(const Matrix& m) {
  const int rows = m.rows();
  const int cols = m.cols();
  Matrix a = m;
  bool converged = false;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    converged = true;
    for (int p = 0; p < cols - 1; ++p) {
      for (int q = p + 1; q < cols; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int i = 0; i < rows; ++i) {
          app += a(i, p) * a(i, p);
          aqq += a(i, q) * a(i, q);
          apq += a(i, p) * a(i, q);
        }
        if (std::fabs(apq) <= 1e-15 * std::sqrt(app * aqq) || apq == 0.0) continue;
        converged = false;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < rows; ++i) {
          const double aip = a(i, p);
          const double aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
      }
    }
  }
  std::vector<double> sv(cols);
  for (int j = 0; j < cols; ++j) {
    double s = 0.0;
    for (int i = 0; i < rows; ++i) s += a(i, j) * a(i, j);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

int numerical_rank(const Matrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const auto sv = singular_values(m);
  const double cutoff = tol * sv.front();
  int rank = 0;
  for (double s : sv)
    if (s > cutoff && s > 0.0) ++rank;
  return rank;
}

}  // namespace ctrlenergy
