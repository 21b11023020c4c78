#include "ctrlenergy/cli.hpp"

#include <algorithm>
#include <cmath>

#include "ctrlenergy/counterexample.hpp"
#include "ctrlenergy/setfunc.hpp"

namespace ctrlenergy::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxReportedCertificates = 50;

json energy_json(const EnergyValue& e) { return e.to_string(); }

json set_json(const ActuatorSet& s) {
  json a = json::array();
  for (int i : s.indices()) a.push_back(i);
  return a;
}

json certificate_json(const ViolationCertificate& c) {
  return json{{"S1", set_json(c.s1)},       {"S2", set_json(c.s2)},
              {"a", c.a},                   {"f_S1", energy_json(c.f_s1)},
              {"f_S1a", energy_json(c.f_s1a)}, {"f_S2", energy_json(c.f_s2)},
              {"f_S2a", energy_json(c.f_s2a)}, {"margin", float_string(c.margin)}};
}

json monotone_violation_json(const MonotoneViolation& v) {
  return json{{"S", set_json(v.s)},
              {"a", v.a},
              {"f_S", energy_json(v.f_s)},
              {"f_Sa", energy_json(v.f_sa)},
              {"margin", float_string(v.margin)}};
}

json doc_inputs(const SystemDocument& doc) {
  json echo{{"A", matrix_to_json(doc.sys.A)},
            {"B", matrix_to_json(doc.sys.B)},
            {"horizon", doc.horizon.is_infinite() ? json("infinite") : json(doc.horizon.T())}};
  return json{{"n", doc.sys.state_dim()},
              {"m", doc.sys.input_dim()},
              {"horizon", echo["horizon"]},
              {"digest", json_digest(echo)}};
}

json report_shell(const std::string& command, json inputs) {
  return json{{"command", command},
              {"inputs", std::move(inputs)},
              {"results", json::object()},
              {"certificates", json::array()},
              {"diagnostics", json::object()},
              {"status", "ok"}};
}

FactorMethod parse_factor(const std::string& factor) {
  if (factor == "triangular") return FactorMethod::Triangular;
  if (factor == "eigen") return FactorMethod::Eigen;
  throw InputError("factor must be 'triangular' or 'eigen'");
}

}  // namespace

ActuatorSet parse_set(const std::string& spec) {
  std::vector<int> idx;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t next = spec.find(',', pos);
    if (next == std::string::npos) next = spec.size();
    const std::string token = spec.substr(pos, next - pos);
    if (!token.empty()) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(token, &used);
        if (used != token.size()) throw InputError("bad set element '" + token + "'");
        idx.push_back(v);
      } catch (const std::exception&) {
        throw InputError("bad set element '" + token + "'");
      }
    }
    pos = next + 1;
  }
  return ActuatorSet(std::move(idx));
}

Horizon parse_horizon(const std::string& spec) {
  if (spec == "infinite" || spec == "inf") return Horizon::infinite();
  try {
    std::size_t used = 0;
    const double t = std::stod(spec, &used);
    if (used != spec.size()) throw InputError("bad horizon '" + spec + "'");
    return Horizon::finite(t);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("bad horizon '" + spec + "'");
  }
}

json cmd_verify_theorem1(const std::string& mode, double eps, const std::string& factor) {
  if (mode != "exact" && mode != "float") throw InputError("mode must be 'exact' or 'float'");
  const FactorMethod method = parse_factor(factor);

  json report = report_shell("verify-theorem1",
                             json{{"mode", mode}, {"eps", eps}, {"factor", factor}});
  if (mode == "exact") {
    const Theorem1Exact r = verify_theorem1_exact();
    report["results"] = {{"lhs", r.lhs.to_string()},
                         {"rhs", r.rhs.to_string()},
                         {"violated", r.violated}};
    return report;
  }

  if (!(eps >= 0.0) || eps >= 0.25)
    throw InputError("--eps must lie in [0, 0.25) for the float mode");
  const Theorem1Float r = verify_theorem1_float(eps, method);
  report["results"] = {{"eps", eps},
                       {"lhs_gap", float_string(r.lhs_gap)},
                       {"rhs_gap", float_string(r.rhs_gap)},
                       {"violated", r.violated},
                       {"singleton_controllable", r.singleton_controllable}};

  const Theorem1Fixture fx = theorem1_fixture(method);
  SetFunction f = eps == 0.0
                      ? outer_product_energy_function(fx.b_float)
                      : energy_set_function(LinearSystem(theorem1_a_matrix(eps), fx.b_float),
                                            Horizon::infinite());
  report["certificates"].push_back(
      certificate_json(extract_single_violation(f, fx.s1, fx.s2, fx.delta)));

  const EpsilonCertificate cert = certify_epsilon(eps, method);
  report["diagnostics"] = {{"stable", cert.stable},
                           {"eigvec_avoidance", cert.eigvec_avoidance},
                           {"all_nonempty_finite", cert.all_nonempty_finite}};
  return report;
}

json cmd_verify_theorem2(double K, std::uint64_t seed, int trials) {
  if (!(K > 8.0)) throw InputError("--K must be > 8");
  if (trials < 1) throw InputError("--trials must be >= 1");

  json report = report_shell(
      "verify-theorem2", json{{"K", K}, {"seed", seed}, {"trials", trials}});
  json runs = json::array();
  int violated_runs = 0;
  for (int t = 0; t < trials; ++t) {
    const Theorem2Result r = verify_theorem2(K, seed + static_cast<std::uint64_t>(t));
    violated_runs += r.violated ? 1 : 0;
    runs.push_back({{"seed", seed + static_cast<std::uint64_t>(t)},
                    {"lhs_gap", float_string(r.lhs_gap)},
                    {"rhs_gap", float_string(r.rhs_gap)},
                    {"gap_ratio", float_string(r.rhs_gap / r.lhs_gap)},
                    {"violated", r.violated},
                    {"kratio_min", float_string(r.kratio_min)},
                    {"kratio_max", float_string(r.kratio_max)}});
  }
  report["results"] = {{"K", K},
                       {"trials", trials},
                       {"violated_runs", violated_runs},
                       {"violation_fraction", static_cast<double>(violated_runs) / trials},
                       {"runs", std::move(runs)}};
  return report;
}

json cmd_check(const SystemDocument& doc, const std::string& property, bool normalized) {
  json report = report_shell("check", doc_inputs(doc));
  report["inputs"]["property"] = property;
  report["inputs"]["normalized"] = normalized;

  const int m = doc.sys.input_dim();
  const SetFunction f = energy_set_function(doc.sys, doc.horizon, normalized);

  if (property == "monotone") {
    const auto violations = check_monotone(f, m);
    report["results"] = {{"property", property},
                         {"violation_count", violations.size()},
                         {"verdict", violations.empty() ? "holds" : "violated"}};
    for (std::size_t i = 0; i < std::min(violations.size(), kMaxReportedCertificates); ++i)
      report["certificates"].push_back(monotone_violation_json(violations[i]));
    report["results"]["certificates_truncated"] =
        violations.size() > kMaxReportedCertificates;
    return report;
  }

  SupermodularityReport r;
  if (property == "supermodular") {
    r = check_supermodular(f, m);
  } else if (property == "submodular") {
    r = check_submodular(f, m);
  } else {
    throw InputError("property must be monotone, supermodular, or submodular");
  }
  report["results"] = {{"property", property},
                       {"violation_count", r.violations.size()},
                       {"quadruples_checked", r.quadruples_checked},
                       {"skipped_infinite", r.skipped_infinite},
                       {"verdict", r.violations.empty() ? "holds" : "violated"}};
  for (std::size_t i = 0; i < std::min(r.violations.size(), kMaxReportedCertificates); ++i)
    report["certificates"].push_back(certificate_json(r.violations[i]));
  report["results"]["certificates_truncated"] =
      r.violations.size() > kMaxReportedCertificates;
  return report;
}

json cmd_gramian(const SystemDocument& doc, const std::optional<std::string>& set_spec) {
  json report = report_shell("gramian", doc_inputs(doc));
  const ActuatorSet s =
      set_spec ? parse_set(*set_spec) : ActuatorSet::full(doc.sys.input_dim());
  report["inputs"]["set"] = set_json(s);
  if (s.max_index() > doc.sys.input_dim())
    throw InputError("actuator set exceeds input dimension");
  const LinearSystem sub(doc.sys.A, restrict_columns(doc.sys.B, s));
  const Matrix w = gramian(sub, doc.horizon);
  report["results"] = {{"W", matrix_to_json(w)}};
  return report;
}

json cmd_energy(const SystemDocument& doc, const std::optional<std::string>& set_spec,
                bool normalized) {
  json report = report_shell("energy", doc_inputs(doc));
  const ActuatorSet s =
      set_spec ? parse_set(*set_spec) : ActuatorSet::full(doc.sys.input_dim());
  report["inputs"]["set"] = set_json(s);
  report["inputs"]["normalized"] = normalized;
  const EnergyValue e = avg_energy(doc.sys, doc.horizon, s, normalized);
  report["results"] = {{"energy", energy_json(e)}, {"finite", e.is_finite()}};
  return report;
}

json cmd_construct(const std::optional<std::string>& u_path,
                   const std::optional<std::string>& v_path) {
  if (u_path.has_value() != v_path.has_value())
    throw InputError("construct needs both --U and --V, or neither");
  const Matrix u = u_path ? load_matrix(*u_path) : squaring_example_u();
  const Matrix v = v_path ? load_matrix(*v_path) : squaring_example_v();

  json report = report_shell(
      "construct", json{{"U", matrix_to_json(u)}, {"V", matrix_to_json(v)}});
  const ConstructionResult r = run_construction(u, v);
  report["results"] = {
      {"z", matrix_to_json(r.z)},
      {"W1", matrix_to_json(r.triple.w1)},
      {"W2", matrix_to_json(r.triple.w2)},
      {"W3", matrix_to_json(r.triple.w3)},
      {"g0", float_string(r.g0)},
      {"g_prime0", float_string(r.gp0)},
      {"gamma_hat", float_string(r.gamma_hat)},
      {"g_gamma_hat", float_string(r.g_gamma_hat)},
      {"B", matrix_to_json(r.system.sys.B)},
      {"S1", set_json(r.system.s1)},
      {"S2", set_json(r.system.s2)},
      {"Delta", set_json(r.system.delta)},
      {"lhs_gap", float_string(r.system.lhs_gap)},
      {"rhs_gap", float_string(r.system.rhs_gap)},
      {"gap", float_string(r.system.gap)},
      {"violated", r.violated}};
  return report;
}

json cmd_greedy(const SystemDocument& doc, int k) {
  json report = report_shell("greedy", doc_inputs(doc));
  report["inputs"]["k"] = k;
  const ActuatorSet chosen = greedy_select(doc.sys, doc.horizon, k);

  // The selection order is recovered by rerunning greedy step by step.
  json steps = json::array();
  ActuatorSet prefix;
  for (int step = 1; step <= k; ++step) {
    const ActuatorSet partial = greedy_select(doc.sys, doc.horizon, step);
    int added = 0;
    for (int idx : partial.indices())
      if (!prefix.contains(idx)) added = idx;
    prefix = partial;
    steps.push_back({{"added", added},
                     {"set", set_json(partial)},
                     {"energy", energy_json(avg_energy(doc.sys, doc.horizon, partial))}});
  }
  report["results"] = {{"selected", set_json(chosen)}, {"steps", std::move(steps)}};
  return report;
}

std::string summarize(const json& report) {
  std::string s = report.value("command", "?");
  if (report.contains("results")) {
    const json& r = report["results"];
    if (r.contains("violated"))
      s += r["violated"].get<bool>() ? ": violation certified" : ": no violation";
    if (r.contains("verdict"))
      s += ": " + r["verdict"].get<std::string>();
    if (r.contains("violation_fraction"))
      s += " (violation fraction " + std::to_string(r["violation_fraction"].get<double>()) + ")";
    if (r.contains("energy")) s += ": energy = " + r["energy"].get<std::string>();
  }
  return s;
}

}  // namespace ctrlenergy::cli
