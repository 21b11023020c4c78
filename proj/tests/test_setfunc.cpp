#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "ctrlenergy/counterexample.hpp"
#include "ctrlenergy/setfunc.hpp"
#include "oracles.hpp"

using namespace ctrlenergy;

namespace {

// Table-driven set function for synthetic checker tests.
SetFunction table_function(std::map<std::uint32_t, double> table) {
  return [table = std::move(table)](const ActuatorSet& s) {
    return EnergyValue::finite(table.at(s.mask()));
  };
}

SetFunction modular_function(std::vector<double> weights) {
  return [weights = std::move(weights)](const ActuatorSet& s) {
    double total = 10.0;  // offset keeps values positive
    for (int i : s.indices()) total += weights[i - 1];
    return EnergyValue::finite(total);
  };
}

LinearSystem theorem1_system(double eps) {
  return LinearSystem(theorem1_a_matrix(eps), theorem1_fixture().b_float);
}

}  // namespace

TEST_CASE("EnergyValue ordering") {
  const EnergyValue inf = EnergyValue::infinite();
  const EnergyValue one = EnergyValue::finite(1.0);
  const EnergyValue two = EnergyValue::finite(2.0);
  CHECK(one < two);
  CHECK(one < inf);
  CHECK_FALSE(inf < one);
  CHECK_FALSE(inf < inf);
  CHECK(inf.to_string() == "infinite");
  CHECK_THROWS_AS(inf.value(), InputError);
}

TEST_CASE("ActuatorSet validation and algebra") {
  CHECK_THROWS_AS(ActuatorSet({1, 1}), InputError);
  CHECK_THROWS_AS(ActuatorSet({0}), InputError);
  const ActuatorSet s{2, 5, 3};
  CHECK(s.to_string() == "{2,3,5}");
  CHECK(s.mask() == 0b10110u);
  CHECK(ActuatorSet::from_mask(0b10110u) == s);
  CHECK(ActuatorSet({2, 3}).is_subset_of(s));
  CHECK_FALSE(s.is_subset_of(ActuatorSet({2, 3})));
  CHECK(s.with(4).to_string() == "{2,3,4,5}");
}

TEST_CASE("avg_energy examples") {
  const LinearSystem sys = theorem1_system(0.0);
  const Horizon inf = Horizon::infinite();

  // Unnormalized energy of {1,2} equals tr(W_init^-1) = 7/1536.
  const EnergyValue e12 = avg_energy(sys, inf, ActuatorSet{1, 2});
  CHECK(e12.value() == doctest::Approx(7.0 / 1536.0).epsilon(1e-9));

  CHECK_FALSE(avg_energy(sys, inf, ActuatorSet{}).is_finite());

  // Rank-1 Gramian -> infinite.
  const LinearSystem single(-0.5 * Matrix::identity(2), Matrix::identity(2));
  CHECK_FALSE(avg_energy(single, inf, ActuatorSet{1}).is_finite());

  // Unstable A with an infinite horizon is an error, not an infinite energy.
  const LinearSystem unstable(Matrix{{0.5}}, Matrix{{1.0}});
  CHECK_THROWS_AS(avg_energy(unstable, inf, ActuatorSet{1}), StabilityError);

  // Normalized differs by exactly the state dimension.
  const double un = avg_energy(sys, inf, ActuatorSet{1, 2}, false).value();
  const double no = avg_energy(sys, inf, ActuatorSet{1, 2}, true).value();
  CHECK(un == doctest::Approx(2.0 * no).epsilon(1e-15));
}

TEST_CASE("avg_energy_regularized") {
  // Zero column: W = 0, tr((eps I)^-1) = n / eps.
  const LinearSystem zero_col(Matrix::diagonal({-1.0, -1.0}), Matrix::zeros(2, 1));
  CHECK(avg_energy_regularized(zero_col, Horizon::finite(1.0), ActuatorSet{1}, 0.1) ==
        doctest::Approx(20.0).epsilon(1e-9));

  // eps = 1 with W = I: tr((2I)^-1)... build a system whose W(T) = I.
  // A = 0 (1x1), B = 1, T = 1 gives W = 1; then tr((1 + 1)^-1) = 1/2; instead
  // check the stated identity tr((W + I)^-1) with W = I via direct matrices:
  const LinearSystem ident(Matrix::zeros(2, 2), Matrix::identity(2));
  const double v = avg_energy_regularized(ident, Horizon::finite(1.0), ActuatorSet{1, 2}, 1.0);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-9));  // W(1) = I for A = 0, B = I

  // Decreasing in eps, approaching the unregularized value.
  const LinearSystem sys = theorem1_system(1e-4);
  const ActuatorSet full = ActuatorSet::full(5);
  const double unreg = avg_energy(sys, Horizon::infinite(), full).value();
  double prev = avg_energy_regularized(sys, Horizon::finite(50.0), full, 1e-2);
  for (double eps : {1e-4, 1e-6, 1e-8, 1e-10}) {
    const double cur = avg_energy_regularized(sys, Horizon::finite(50.0), full, eps);
    CHECK(cur >= prev - 1e-12);
    prev = cur;
  }
  CHECK(prev == doctest::Approx(unreg).epsilon(1e-4));

  CHECK_THROWS_AS(avg_energy_regularized(sys, Horizon::infinite(), full, 0.1), InputError);
  CHECK_THROWS_AS(avg_energy_regularized(sys, Horizon::finite(1.0), full, 0.0), InputError);
}

TEST_CASE("check_monotone") {
  // Energy of a fixed stable system is nonincreasing.
  const LinearSystem sys = theorem1_system(1e-4);
  CHECK(check_monotone(energy_set_function(sys, Horizon::infinite()), 5).empty());

  // Cardinality is increasing: every (S, a) pair violates.
  const SetFunction cardinality = [](const ActuatorSet& s) {
    return EnergyValue::finite(1.0 + s.size());
  };
  const auto violations = check_monotone(cardinality, 3);
  CHECK(violations.size() == 3u * 4u);  // m * 2^(m-1)

  const SetFunction constant = [](const ActuatorSet&) { return EnergyValue::finite(5.0); };
  CHECK(check_monotone(constant, 4).empty());

  CHECK_THROWS_AS(check_monotone(constant, 21), InputError);
}

TEST_CASE("check_supermodular accepts supermodular functions") {
  CHECK(check_supermodular(modular_function({1.0, -2.0, 0.5, 3.0}), 4).violations.empty());

  // |S|^2 is supermodular: increments 2|S|+1 grow with S.
  const SetFunction squared = [](const ActuatorSet& s) {
    return EnergyValue::finite(1.0 + s.size() * s.size());
  };
  const auto report = check_supermodular(squared, 4);
  CHECK(report.violations.empty());
  CHECK(report.skipped_infinite == 0);
  CHECK(report.quadruples_checked > 0);

  CHECK_THROWS_AS(check_supermodular(squared, 17), InputError);
}

TEST_CASE("check_supermodular certifies the built-in counterexample") {
  const LinearSystem sys = theorem1_system(1e-4);
  const auto report = check_supermodular(energy_set_function(sys, Horizon::infinite()), 5);
  REQUIRE_FALSE(report.violations.empty());
  // Certificates are sorted by margin and internally consistent.
  for (std::size_t i = 0; i + 1 < report.violations.size(); ++i)
    CHECK(report.violations[i].margin >= report.violations[i + 1].margin);
  for (const auto& c : report.violations) {
    CHECK(c.s1.is_subset_of(c.s2));
    CHECK_FALSE(c.s1 == c.s2);
    CHECK_FALSE(c.s2.contains(c.a));
    CHECK(c.f_s1.is_finite());
    CHECK(c.f_s2a.is_finite());
    const double margin = (c.f_s2.value() - c.f_s2a.value()) -
                          (c.f_s1.value() - c.f_s1a.value());
    CHECK(c.margin == doctest::Approx(margin).epsilon(1e-12));
    CHECK(c.margin > 0.0);
  }
}

TEST_CASE("certificates replay exactly") {
  const LinearSystem sys = theorem1_system(1e-4);
  const SetFunction f = energy_set_function(sys, Horizon::infinite());
  const auto report = check_supermodular(f, 5);
  REQUIRE_FALSE(report.violations.empty());
  const auto& c = report.violations.front();
  CHECK(f(c.s1).value() == doctest::Approx(c.f_s1.value()).epsilon(1e-12));
  CHECK(f(c.s1.with(c.a)).value() == doctest::Approx(c.f_s1a.value()).epsilon(1e-12));
  CHECK(f(c.s2).value() == doctest::Approx(c.f_s2.value()).epsilon(1e-12));
  CHECK(f(c.s2.with(c.a)).value() == doctest::Approx(c.f_s2a.value()).epsilon(1e-12));
}

TEST_CASE("supermodular check on f mirrors submodular check on -f") {
  const LinearSystem sys = theorem1_system(1e-4);
  const SetFunction f = energy_set_function(sys, Horizon::infinite());
  const SetFunction neg_f = [&f](const ActuatorSet& s) {
    const EnergyValue v = f(s);
    return v.is_finite() ? EnergyValue::finite(-v.value()) : v;
  };
  const auto super_f = check_supermodular(f, 5);
  const auto sub_negf = check_submodular(neg_f, 5);
  REQUIRE(super_f.violations.size() == sub_negf.violations.size());
  for (std::size_t i = 0; i < super_f.violations.size(); ++i) {
    CHECK(super_f.violations[i].s1 == sub_negf.violations[i].s1);
    CHECK(super_f.violations[i].s2 == sub_negf.violations[i].s2);
    CHECK(super_f.violations[i].a == sub_negf.violations[i].a);
    CHECK(super_f.violations[i].margin ==
          doctest::Approx(sub_negf.violations[i].margin).epsilon(1e-12));
  }
}

TEST_CASE("infinite quadruples are skipped per the finite-terms convention") {
  // At eps = 0 every singleton Gramian is singular, so many quadruples are
  // skipped, yet the {1,2}-based violation survives.
  const SetFunction f = outer_product_energy_function(theorem1_fixture().b_float);
  const auto report = check_supermodular(f, 5);
  CHECK(report.skipped_infinite > 0);
  CHECK_FALSE(report.violations.empty());
}

TEST_CASE("delta_supermodularity_gap") {
  const Theorem1Fixture fx = theorem1_fixture();
  const SetFunction f = outer_product_energy_function(fx.b_float);

  const double gap = delta_supermodularity_gap(f, fx.s1, fx.s2, fx.delta);
  CHECK(gap == doctest::Approx(0.003509 - 0.003449).epsilon(0.02));
  CHECK(gap > 0.0);

  CHECK(delta_supermodularity_gap(modular_function({1, 2, 3, 4, 5}), fx.s1, fx.s2,
                                  fx.delta) == doctest::Approx(0.0));
  CHECK(delta_supermodularity_gap(f, fx.s1, fx.s2, ActuatorSet{}) == doctest::Approx(0.0));

  CHECK_THROWS_AS(delta_supermodularity_gap(f, fx.s2, fx.s1, fx.delta), InputError);
  CHECK_THROWS_AS(delta_supermodularity_gap(f, fx.s1, fx.s2, ActuatorSet{5}), InputError);
  // Infinite term (singleton set) -> convention error naming the set.
  CHECK_THROWS_WITH_AS(delta_supermodularity_gap(f, ActuatorSet{1}, ActuatorSet{1},
                                                 ActuatorSet{3}),
                       doctest::Contains("{1}"), InputError);
}

TEST_CASE("extract_single_violation finds a violating telescoping step") {
  const Theorem1Fixture fx = theorem1_fixture();
  const SetFunction f = outer_product_energy_function(fx.b_float);
  const ViolationCertificate c = extract_single_violation(f, fx.s1, fx.s2, fx.delta);
  CHECK((c.a == 3 || c.a == 4));
  CHECK(c.margin > 0.0);
  CHECK(c.s1.is_subset_of(c.s2));
  CHECK_FALSE(c.s2.contains(c.a));
  const double replay =
      (c.f_s2.value() - f(c.s2.with(c.a)).value()) - (c.f_s1.value() - f(c.s1.with(c.a)).value());
  CHECK(c.margin == doctest::Approx(replay).epsilon(1e-12));
}

TEST_CASE("extract_single_violation honors a violation hidden at step 2") {
  // Delta = {3, 4}; built so only the second telescoping step violates.
  // Step 1 (a = 3): equal drops. Step 2 (a = 4): bigger drop from the big set.
  std::map<std::uint32_t, double> t;
  const auto m = [](std::initializer_list<int> idx) {
    std::uint32_t mask = 0;
    for (int i : idx) mask |= 1u << (i - 1);
    return mask;
  };
  t[m({1})] = 100.0;
  t[m({1, 2})] = 90.0;
  t[m({1, 3})] = 95.0;        // drop 5 when adding 3 to {1}
  t[m({1, 2, 3})] = 85.0;     // drop 5 when adding 3 to {1,2}
  t[m({1, 3, 4})] = 94.0;     // drop 1 when adding 4 to {1,3}
  t[m({1, 2, 3, 4})] = 80.0;  // drop 5 when adding 4 to {1,2,3}
  const SetFunction f = table_function(std::move(t));

  const ActuatorSet s1{1};
  const ActuatorSet s2{1, 2};
  const ActuatorSet delta{3, 4};
  CHECK(delta_supermodularity_gap(f, s1, s2, delta) == doctest::Approx(4.0));
  const ViolationCertificate c = extract_single_violation(f, s1, s2, delta);
  CHECK(c.a == 4);
  CHECK(c.s1 == ActuatorSet{1, 3});
  CHECK(c.s2 == ActuatorSet{1, 2, 3});
  CHECK(c.margin == doctest::Approx(4.0));
}

TEST_CASE("extract_single_violation rejects nonpositive gaps") {
  const SetFunction f = modular_function({1, 2, 3, 4, 5});
  CHECK_THROWS_AS(extract_single_violation(f, ActuatorSet{1}, ActuatorSet{1, 2},
                                           ActuatorSet{3}),
                  InputError);
}

TEST_CASE("energy is nonincreasing on random systems, both horizons") {
  std::mt19937_64 gen(83);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 3);
    const int m = 2 + static_cast<int>(gen() % 4);
    const LinearSystem sys(oracles::random_stable(gen, n),
                           oracles::random_matrix(gen, n, m));
    for (const Horizon& h : {Horizon::infinite(), Horizon::finite(2.0)}) {
      CHECK(check_monotone(energy_set_function(sys, h), m).empty());
    }
  }
}

TEST_CASE("verdicts are normalization-invariant") {
  const LinearSystem sys = theorem1_system(1e-4);
  const auto plain = check_supermodular(energy_set_function(sys, Horizon::infinite(), false), 5);
  const auto normed = check_supermodular(energy_set_function(sys, Horizon::infinite(), true), 5);
  REQUIRE(plain.violations.size() == normed.violations.size());
  for (std::size_t i = 0; i < plain.violations.size(); ++i) {
    CHECK(plain.violations[i].s1 == normed.violations[i].s1);
    CHECK(plain.violations[i].s2 == normed.violations[i].s2);
    CHECK(plain.violations[i].a == normed.violations[i].a);
    CHECK(plain.violations[i].margin ==
          doctest::Approx(2.0 * normed.violations[i].margin).epsilon(1e-12));
  }
}

TEST_CASE("outer-product sums agree with Lyapunov Gramians for A = -(1/2)I") {
  std::mt19937_64 gen(97);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 3);
    const int m = n + static_cast<int>(gen() % 3);
    const Matrix b = oracles::random_matrix(gen, n, m, -2.0, 2.0);
    const LinearSystem sys(-0.5 * Matrix::identity(n), b);
    const SetFunction direct = outer_product_energy_function(b);
    const SetFunction via_gramian = energy_set_function(sys, Horizon::infinite());
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      const ActuatorSet s = ActuatorSet::from_mask(mask);
      const EnergyValue a = direct(s);
      const EnergyValue b_val = via_gramian(s);
      REQUIRE(a.is_finite() == b_val.is_finite());
      if (a.is_finite())
        CHECK(a.value() == doctest::Approx(b_val.value()).epsilon(1e-10));
    }
  }
}

TEST_CASE("greedy_select") {
  const LinearSystem sys = theorem1_system(1e-4);
  const Horizon inf = Horizon::infinite();

  CHECK(greedy_select(sys, inf, 5) == ActuatorSet::full(5));

  // Duplicate columns: smallest index wins the tie.
  const Matrix dup = Matrix{{1.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  const LinearSystem dup_sys(-0.5 * Matrix::identity(2), dup);
  CHECK(greedy_select(dup_sys, inf, 1) == ActuatorSet{1});

  // Greedy pair vs. exhaustive best pair.
  const SetFunction f = energy_set_function(sys, inf);
  const ActuatorSet greedy_pair = greedy_select(sys, inf, 2);
  EnergyValue best = EnergyValue::infinite();
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) {
      const EnergyValue e = f(ActuatorSet{i, j});
      if (e < best) best = e;
    }
  const EnergyValue greedy_energy = f(greedy_pair);
  CHECK_FALSE(greedy_energy < best);  // exhaustive is optimal
  // Report the comparison; greedy may or may not match the optimum.
  INFO("greedy pair ", greedy_pair.to_string(), " energy ", greedy_energy.to_string(),
       " vs optimum ", best.to_string());
  CHECK(greedy_energy.is_finite());

  CHECK_THROWS_AS(greedy_select(sys, inf, 0), InputError);
  CHECK_THROWS_AS(greedy_select(sys, inf, 6), InputError);
}
