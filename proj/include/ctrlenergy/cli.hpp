#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "ctrlenergy/json_io.hpp"

namespace ctrlenergy::cli {

/// Exit codes: 0 = ran to completion (verdicts live in the report),
/// 2 = usage/input error, 3 = numerical/randomness failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Each command returns the machine-readable report that goes to stdout.
/// Usage problems throw InputError, numerical failures throw NumericalError;
/// the front end maps them to exit codes.

nlohmann::json cmd_verify_theorem1(const std::string& mode, double eps,
                                   const std::string& factor);

nlohmann::json cmd_verify_theorem2(double K, std::uint64_t seed, int trials);

nlohmann::json cmd_check(const SystemDocument& doc, const std::string& property,
                         bool normalized);

nlohmann::json cmd_gramian(const SystemDocument& doc,
                           const std::optional<std::string>& set_spec);

nlohmann::json cmd_energy(const SystemDocument& doc,
                          const std::optional<std::string>& set_spec, bool normalized);

nlohmann::json cmd_construct(const std::optional<std::string>& u_path,
                             const std::optional<std::string>& v_path);

nlohmann::json cmd_greedy(const SystemDocument& doc, int k);

/// "1,2,5" -> ActuatorSet; empty string -> empty set.
ActuatorSet parse_set(const std::string& spec);

/// "infinite" / "inf" / positive number.
Horizon parse_horizon(const std::string& spec);

/// One-line human summary for stderr.
std::string summarize(const nlohmann::json& report);

}  // namespace ctrlenergy::cli
