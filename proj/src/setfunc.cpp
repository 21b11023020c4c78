#include "ctrlenergy/setfunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ctrlenergy {

namespace {

bool energy_is_singular(const Matrix& w) {
  const auto eig = sym_eig(w);
  return eig.values.front() <= kSingularTol * std::max(1.0, eig.values.back());
}

double margin_floor(const EnergyValue& f_s1) {
  return kMarginTol * std::max(1.0, f_s1.is_finite() ? std::fabs(f_s1.value()) : 1.0);
}

std::vector<EnergyValue> tabulate(const SetFunction& f, int m) {
  std::vector<EnergyValue> table;
  table.reserve(std::size_t{1} << m);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask)
    table.push_back(f(ActuatorSet::from_mask(mask)));
  return table;
}

}  // namespace

EnergyValue avg_energy(const LinearSystem& sys, const Horizon& h, const ActuatorSet& s,
                       bool normalized) {
  if (s.max_index() > sys.input_dim())
    throw InputError("actuator set exceeds input dimension");
  if (s.empty()) return EnergyValue::infinite();
  const LinearSystem sub(sys.A, restrict_columns(sys.B, s));
  const Matrix w = gramian(sub, h);
  if (energy_is_singular(w)) return EnergyValue::infinite();
  const double t = trace_inverse(w);
  return EnergyValue::finite(normalized ? t / sys.state_dim() : t);
}

double avg_energy_regularized(const LinearSystem& sys, const Horizon& h,
                              const ActuatorSet& s, double eps_reg) {
  if (h.is_infinite())
    throw InputError("avg_energy_regularized is defined for finite horizons");
  if (!(eps_reg > 0.0)) throw InputError("eps_reg must be positive");
  if (s.max_index() > sys.input_dim())
    throw InputError("actuator set exceeds input dimension");
  const LinearSystem sub(sys.A, restrict_columns(sys.B, s));
  Matrix w = gramian(sub, h);
  for (int i = 0; i < w.rows(); ++i) w(i, i) += eps_reg;
  return trace_inverse(w);
}

SetFunction energy_set_function(const LinearSystem& sys, const Horizon& h,
                                bool normalized) {
  return [sys, h, normalized](const ActuatorSet& s) {
    return avg_energy(sys, h, s, normalized);
  };
}

SetFunction outer_product_energy_function(const Matrix& b) {
  return [b](const ActuatorSet& s) {
    if (s.max_index() > b.cols()) throw InputError("actuator set exceeds column count");
    if (s.empty()) return EnergyValue::infinite();
    Matrix w(b.rows(), b.rows());
    for (int idx : s.indices()) {
      const Matrix c = b.col(idx - 1);
      w += outer(c, c);
    }
    if (energy_is_singular(w)) return EnergyValue::infinite();
    return EnergyValue::finite(trace_inverse(w));
  };
}

std::vector<MonotoneViolation> check_monotone(const SetFunction& f, int m) {
  if (m < 0 || m > 20) throw InputError("check_monotone supports 0 <= m <= 20");
  const auto table = tabulate(f, m);
  std::vector<MonotoneViolation> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    if (!table[mask].is_finite()) continue;  // infinity dominates everything
    const double fs = table[mask].value();
    for (int a = 0; a < m; ++a) {
      if (mask & (1u << a)) continue;
      const auto& fsa = table[mask | (1u << a)];
      const double floor = kMarginTol * std::max(1.0, std::fabs(fs));
      if (!fsa.is_finite()) {
        out.push_back({ActuatorSet::from_mask(mask), a + 1, table[mask], fsa,
                       std::numeric_limits<double>::infinity()});
      } else if (fsa.value() - fs > floor) {
        out.push_back({ActuatorSet::from_mask(mask), a + 1, table[mask], fsa,
                       fsa.value() - fs});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const MonotoneViolation& x, const MonotoneViolation& y) {
    return x.margin > y.margin;
  });
  return out;
}

namespace {

SupermodularityReport check_supermodular_table(const std::vector<EnergyValue>& table, int m) {
  SupermodularityReport report;
  for (std::uint32_t s2 = 1; s2 < (std::uint32_t{1} << m); ++s2) {
    // Proper submasks of s2, colex order is just numeric order of the masks.
    for (std::uint32_t s1 = (s2 - 1) & s2;; s1 = (s1 - 1) & s2) {
      for (int a = 0; a < m; ++a) {
        if (s2 & (1u << a)) continue;
        ++report.quadruples_checked;
        const auto& f1 = table[s1];
        const auto& f1a = table[s1 | (1u << a)];
        const auto& f2 = table[s2];
        const auto& f2a = table[s2 | (1u << a)];
        if (!f1.is_finite() || !f1a.is_finite() || !f2.is_finite() || !f2a.is_finite()) {
          ++report.skipped_infinite;
          continue;
        }
        const double margin = (f2.value() - f2a.value()) - (f1.value() - f1a.value());
        if (margin > margin_floor(f1)) {
          report.violations.push_back({ActuatorSet::from_mask(s1), ActuatorSet::from_mask(s2),
                                       a + 1, f1, f1a, f2, f2a, margin});
        }
      }
      if (s1 == 0) break;
    }
  }
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const ViolationCertificate& x, const ViolationCertificate& y) {
                     return x.margin > y.margin;
                   });
  return report;
}

}  // namespace

SupermodularityReport check_supermodular(const SetFunction& f, int m) {
  if (m < 0 || m > 16) throw InputError("check_supermodular supports 0 <= m <= 16");
  return check_supermodular_table(tabulate(f, m), m);
}

SupermodularityReport check_submodular(const SetFunction& f, int m) {
  if (m < 0 || m > 16) throw InputError("check_submodular supports 0 <= m <= 16");
  auto table = tabulate(f, m);
  // Negate finite values; submodularity of f is supermodularity of -f.
  // (Negated energies are not valid EnergyValue magnitudes semantically, but
  // the checker only compares and subtracts them.)
  for (auto& v : table)
    if (v.is_finite()) v = EnergyValue::finite(-v.value());
  return check_supermodular_table(table, m);
}

double delta_supermodularity_gap(const SetFunction& f, const ActuatorSet& s1,
                                 const ActuatorSet& s2, const ActuatorSet& delta) {
  if (!s1.is_subset_of(s2)) throw InputError("S1 must be a subset of S2");
  if (delta.intersects(s2)) throw InputError("Delta must be disjoint from S2");
  const ActuatorSet sets[4] = {s1, s1.union_with(delta), s2, s2.union_with(delta)};
  double v[4];
  for (int i = 0; i < 4; ++i) {
    const EnergyValue e = f(sets[i]);
    if (!e.is_finite())
      throw InputError("finite-terms convention violated: f" + sets[i].to_string() +
                       " is infinite");
    v[i] = e.value();
  }
  return (v[2] - v[3]) - (v[0] - v[1]);
}

ViolationCertificate extract_single_violation(const SetFunction& f, const ActuatorSet& s1,
                                              const ActuatorSet& s2,
                                              const ActuatorSet& delta) {
  const double gap = delta_supermodularity_gap(f, s1, s2, delta);
  if (!(gap > 0.0))
    throw InputError("extract_single_violation requires a positive Delta-gap (got " +
                     std::to_string(gap) + ")");

  ViolationCertificate best;
  bool found = false;
  ActuatorSet lo = s1;
  ActuatorSet hi = s2;
  for (int a : delta.indices()) {
    const EnergyValue f_lo = f(lo);
    const EnergyValue f_loa = f(lo.with(a));
    const EnergyValue f_hi = f(hi);
    const EnergyValue f_hia = f(hi.with(a));
    if (f_lo.is_finite() && f_loa.is_finite() && f_hi.is_finite() && f_hia.is_finite()) {
      const double margin =
          (f_hi.value() - f_hia.value()) - (f_lo.value() - f_loa.value());
      if (margin > margin_floor(f_lo) && (!found || margin > best.margin)) {
        best = {lo, hi, a, f_lo, f_loa, f_hi, f_hia, margin};
        found = true;
      }
    }
    lo = lo.with(a);
    hi = hi.with(a);
  }
  if (!found)
    throw NumericalError(
        "positive Delta-gap but no violating telescoping step above tolerance");
  return best;
}

ActuatorSet greedy_select(const LinearSystem& sys, const Horizon& h, int k) {
  const int m = sys.input_dim();
  if (k < 1 || k > m) throw InputError("greedy_select requires 1 <= k <= m");
  ActuatorSet chosen;
  for (int step = 0; step < k; ++step) {
    int best_a = 0;
    EnergyValue best = EnergyValue::infinite();
    bool have = false;
    for (int a = 1; a <= m; ++a) {
      if (chosen.contains(a)) continue;
      const EnergyValue e = avg_energy(sys, h, chosen.with(a));
      if (!have || e < best) {  // strict: earlier index wins ties
        best = e;
        best_a = a;
        have = true;
      }
    }
    chosen = chosen.with(best_a);
  }
  return chosen;
}

}  // namespace ctrlenergy
