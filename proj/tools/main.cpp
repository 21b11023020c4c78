#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ctrlenergy/cli.hpp"

namespace {

using ctrlenergy::cli::kExitNumerical;
using ctrlenergy::cli::kExitOk;
using ctrlenergy::cli::kExitUsage;

int emit(const nlohmann::json& report) {
  std::cout << report.dump(2) << "\n";
  std::cerr << ctrlenergy::cli::summarize(report) << "\n";
  return kExitOk;
}

int emit_error(const std::string& kind, const std::string& message, int code) {
  nlohmann::json report{{"status", "error"}, {"error", {{"kind", kind}, {"message", message}}}};
  std::cout << report.dump(2) << "\n";
  std::cerr << "error: " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controllability Gramians, average control energy, and "
               "set-function property checks for linear systems"};
  app.require_subcommand(1);

  // verify theorem1 / theorem2
  auto* verify = app.add_subcommand("verify", "Run a built-in counterexample verification");
  verify->require_subcommand(1);

  std::string t1_mode = "exact";
  double t1_eps = 0.0;
  std::string t1_factor = "triangular";
  auto* t1 = verify->add_subcommand(
      "theorem1", "2x2 system, 5 columns: average control energy is not supermodular");
  t1->add_option("--mode", t1_mode, "exact | float")->capture_default_str();
  t1->add_option("--eps", t1_eps, "perturbation for the float mode, in [0, 0.25)")
      ->capture_default_str();
  t1->add_option("--factor", t1_factor, "triangular | eigen column factors")
      ->capture_default_str();

  double t2_k = 1e4;
  std::uint64_t t2_seed = 1;
  int t2_trials = 1;
  auto* t2 = verify->add_subcommand(
      "theorem2", "6x6 symmetric system with identity input: not supermodular");
  t2->add_option("--K", t2_k, "fast-block rate, must be > 8")->capture_default_str();
  t2->add_option("--seed", t2_seed, "base seed for the completion rows")
      ->capture_default_str();
  t2->add_option("--trials", t2_trials, "number of seeds to run")->capture_default_str();

  // check
  std::string check_input, check_property = "supermodular", check_horizon;
  bool check_normalized = false;
  auto* check = app.add_subcommand("check", "Check a set-function property of the energy");
  check->add_option("--input", check_input, "system document (JSON)")->required();
  check->add_option("--property", check_property, "monotone | supermodular | submodular")
      ->capture_default_str();
  check->add_flag("--normalized", check_normalized, "report energies divided by n");
  check->add_option("--horizon", check_horizon, "override: 'infinite' or T > 0");

  // gramian
  std::string gramian_input, gramian_horizon;
  std::optional<std::string> gramian_set;
  auto* gram = app.add_subcommand("gramian", "Controllability Gramian of (A, B(S))");
  gram->add_option("--input", gramian_input, "system document (JSON)")->required();
  gram->add_option("--set", gramian_set, "1-based comma list, default all columns");
  gram->add_option("--horizon", gramian_horizon, "override: 'infinite' or T > 0");

  // energy
  std::string energy_input, energy_horizon;
  std::optional<std::string> energy_set;
  bool energy_normalized = false;
  auto* energy = app.add_subcommand("energy", "Average control energy tr(W(S)^-1)");
  energy->add_option("--input", energy_input, "system document (JSON)")->required();
  energy->add_option("--set", energy_set, "1-based comma list, default all columns");
  energy->add_flag("--normalized", energy_normalized, "divide by the state dimension");
  energy->add_option("--horizon", energy_horizon, "override: 'infinite' or T > 0");

  // construct
  std::optional<std::string> construct_u, construct_v;
  auto* construct = app.add_subcommand(
      "construct", "Build a counterexample from a Loewner-squaring failure (U, V)");
  construct->add_option("--U", construct_u, "JSON 2D array file; default built-in pair");
  construct->add_option("--V", construct_v, "JSON 2D array file; default built-in pair");

  // greedy
  std::string greedy_input, greedy_horizon;
  int greedy_k = 1;
  auto* greedy = app.add_subcommand("greedy", "Greedy actuator selection minimizing energy");
  greedy->add_option("--input", greedy_input, "system document (JSON)")->required();
  greedy->add_option("--k", greedy_k, "number of columns to select")->capture_default_str();
  greedy->add_option("--horizon", greedy_horizon, "override: 'infinite' or T > 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  const auto with_horizon = [](ctrlenergy::SystemDocument doc, const std::string& override_spec) {
    if (!override_spec.empty()) doc.horizon = ctrlenergy::cli::parse_horizon(override_spec);
    return doc;
  };

  try {
    if (t1->parsed()) return emit(ctrlenergy::cli::cmd_verify_theorem1(t1_mode, t1_eps, t1_factor));
    if (t2->parsed()) return emit(ctrlenergy::cli::cmd_verify_theorem2(t2_k, t2_seed, t2_trials));
    if (check->parsed()) {
      auto doc = with_horizon(ctrlenergy::load_system_document(check_input), check_horizon);
      return emit(ctrlenergy::cli::cmd_check(doc, check_property, check_normalized));
    }
    if (gram->parsed()) {
      auto doc = with_horizon(ctrlenergy::load_system_document(gramian_input), gramian_horizon);
      return emit(ctrlenergy::cli::cmd_gramian(doc, gramian_set));
    }
    if (energy->parsed()) {
      auto doc = with_horizon(ctrlenergy::load_system_document(energy_input), energy_horizon);
      return emit(ctrlenergy::cli::cmd_energy(doc, energy_set, energy_normalized));
    }
    if (construct->parsed()) return emit(ctrlenergy::cli::cmd_construct(construct_u, construct_v));
    if (greedy->parsed()) {
      auto doc = with_horizon(ctrlenergy::load_system_document(greedy_input), greedy_horizon);
      return emit(ctrlenergy::cli::cmd_greedy(doc, greedy_k));
    }
  } catch (const ctrlenergy::InputError& e) {
    return emit_error("input", e.what(), kExitUsage);
  } catch (const ctrlenergy::NumericalError& e) {
    return emit_error("numerical", e.what(), kExitNumerical);
  } catch (const nlohmann::json::exception& e) {
    return emit_error("input", e.what(), kExitUsage);
  }
  return kExitUsage;
}
