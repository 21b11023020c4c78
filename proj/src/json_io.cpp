#include "ctrlenergy/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

namespace ctrlenergy {

using nlohmann::json;

Matrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a nonempty 2D array");
  const int rows = static_cast<int>(j.size());
  if (!j[0].is_array()) throw InputError("matrix must be a 2D array");
  const int cols = static_cast<int>(j[0].size());
  if (cols == 0) throw InputError("matrix rows must be nonempty");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw InputError("matrix rows must all have the same length");
    for (int k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) throw InputError("matrix entries must be numbers");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("invalid JSON in " + path + ": " + e.what());
  }
  return parse_matrix(j);
}

SystemDocument parse_system_document(const json& doc) {
  if (!doc.is_object()) throw InputError("system document must be a JSON object");
  if (!doc.contains("A")) throw InputError("system document requires field \"A\"");
  Matrix a = parse_matrix(doc["A"]);
  if (!a.is_square()) throw InputError("\"A\" must be square");

  Matrix b = doc.contains("B") ? parse_matrix(doc["B"]) : Matrix::identity(a.rows());
  if (b.rows() != a.rows()) throw InputError("\"B\" must have as many rows as \"A\"");

  Horizon h = Horizon::infinite();
  if (doc.contains("horizon") && !doc["horizon"].is_null()) {
    const json& hj = doc["horizon"];
    if (hj.is_string()) {
      const std::string s = hj.get<std::string>();
      if (s != "infinite" && s != "inf")
        throw InputError("horizon must be \"infinite\" or a positive number");
    } else if (hj.is_number()) {
      h = Horizon::finite(hj.get<double>());
    } else {
      throw InputError("horizon must be \"infinite\" or a positive number");
    }
  }
  return SystemDocument{LinearSystem(std::move(a), std::move(b)), h};
}

SystemDocument load_system_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("invalid JSON in " + path + ": " + e.what());
  }
  return parse_system_document(j);
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string float_string(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_digest(const json& j) {
  const std::string dump = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ctrlenergy
