#pragma once

#include <string>

#include <json.hpp>

#include "ctrlenergy/gramian.hpp"

namespace ctrlenergy {

/// Parsed form of the JSON system document:
///   { "A": [[...]], "B": [[...]] (optional, default identity),
///     "horizon": "infinite" | positive number (default "infinite") }
struct SystemDocument {
  LinearSystem sys;
  Horizon horizon;
};

SystemDocument parse_system_document(const nlohmann::json& doc);
SystemDocument load_system_document(const std::string& path);

/// Plain 2D JSON array -> Matrix (used for the construct command's U/V files).
Matrix parse_matrix(const nlohmann::json& j);
Matrix load_matrix(const std::string& path);

nlohmann::json matrix_to_json(const Matrix& m);

/// Full-precision float-as-string, "%.17g".
std::string float_string(double v);

/// FNV-1a over the canonical dump; a cheap content digest for report echoes.
std::string json_digest(const nlohmann::json& j);

}  // namespace ctrlenergy
