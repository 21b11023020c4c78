#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ctrlenergy/actuator_set.hpp"
#include "ctrlenergy/gramian.hpp"

namespace ctrlenergy {

/// Extended-real set function over subsets of {1..m}. Must be pure.
using SetFunction = std::function<EnergyValue(const ActuatorSet&)>;

/// A violation requires the margin to clear this relative floor, to keep
/// floating-point noise from minting certificates.
inline constexpr double kMarginTol = 1e-12;

/// Witness that f is not supermodular: S1 subset of S2, a not in S2, all four
/// values finite, and
///   margin = [f(S2) - f(S2+a)] - [f(S1) - f(S1+a)] > 0.
struct ViolationCertificate {
  ActuatorSet s1;
  ActuatorSet s2;
  int a = 0;
  EnergyValue f_s1 = EnergyValue::infinite();
  EnergyValue f_s1a = EnergyValue::infinite();
  EnergyValue f_s2 = EnergyValue::infinite();
  EnergyValue f_s2a = EnergyValue::infinite();
  double margin = 0.0;
};

/// Witness that f is not nonincreasing: f(S + a) > f(S).
struct MonotoneViolation {
  ActuatorSet s;
  int a = 0;
  EnergyValue f_s = EnergyValue::infinite();
  EnergyValue f_sa = EnergyValue::infinite();
  double margin = 0.0;  // +inf when f(S) finite but f(S+a) infinite
};

struct SupermodularityReport {
  std::vector<ViolationCertificate> violations;  // descending margin
  std::size_t quadruples_checked = 0;
  std::size_t skipped_infinite = 0;  // quadruples with an infinite term
};

/// Average control energy of the subsystem (A, B(S)) at horizon h:
/// tr(W(S)^-1), divided by n when `normalized`. Infinite when W(S) is
/// numerically singular (always the case for empty S). Requesting an infinite
/// horizon with unstable A throws StabilityError -- that is an input problem,
/// not an infinite energy.
EnergyValue avg_energy(const LinearSystem& sys, const Horizon& h, const ActuatorSet& s,
                       bool normalized = false);

/// tr[(W(S) + eps I)^-1] over a finite horizon; always finite, decreasing in eps.
double avg_energy_regularized(const LinearSystem& sys, const Horizon& h,
                              const ActuatorSet& s, double eps_reg);

SetFunction energy_set_function(const LinearSystem& sys, const Horizon& h,
                                bool normalized = false);

/// Infinite-horizon energies for A = -(1/2)I, where W(S) is just the sum of
/// the selected column outer products.
SetFunction outer_product_energy_function(const Matrix& b);

/// Checks f(S) >= f(S+a) over all (S, a); sufficient for full monotonicity.
/// Guard: m <= 20.
std::vector<MonotoneViolation> check_monotone(const SetFunction& f, int m);

/// Enumerates all (S1 subset S2, a not in S2); quadruples containing an
/// infinite value are skipped (and counted). Guard: m <= 16.
SupermodularityReport check_supermodular(const SetFunction& f, int m);

/// Submodularity of f == supermodularity of -f.
SupermodularityReport check_submodular(const SetFunction& f, int m);

/// [f(S2) - f(S2+Delta)] - [f(S1) - f(S1+Delta)]; positive certifies
/// non-supermodularity. All four values must be finite.
double delta_supermodularity_gap(const SetFunction& f, const ActuatorSet& s1,
                                 const ActuatorSet& s2, const ActuatorSet& delta);

/// Walks Delta one element at a time and returns the single-element violation
/// forced by a positive Delta-gap (the step with the largest margin).
ViolationCertificate extract_single_violation(const SetFunction& f, const ActuatorSet& s1,
                                              const ActuatorSet& s2,
                                              const ActuatorSet& delta);

/// Greedy minimization of avg_energy, k steps, ties broken by smallest index.
ActuatorSet greedy_select(const LinearSystem& sys, const Horizon& h, int k);

}  // namespace ctrlenergy
