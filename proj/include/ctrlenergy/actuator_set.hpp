#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctrlenergy/errors.hpp"

namespace ctrlenergy {

/// Subset of actuated column indices, 1-based, kept sorted and duplicate-free.
/// May be empty.
class ActuatorSet {
 public:
  ActuatorSet() = default;
  explicit ActuatorSet(std::vector<int> indices);
  ActuatorSet(std::initializer_list<int> indices);

  static ActuatorSet full(int m);  // {1, ..., m}
  static ActuatorSet from_mask(std::uint32_t mask);
  std::uint32_t mask() const;

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  int max_index() const { return indices_.empty() ? 0 : indices_.back(); }

  bool contains(int i) const;
  bool is_subset_of(const ActuatorSet& other) const;
  ActuatorSet with(int i) const;
  ActuatorSet union_with(const ActuatorSet& other) const;
  bool intersects(const ActuatorSet& other) const;

  bool operator==(const ActuatorSet& other) const { return indices_ == other.indices_; }

  std::string to_string() const;  // "{1,2,5}"

 private:
  std::vector<int> indices_;
};

/// Extended-real energy: a finite positive value or infinity.
/// Infinity compares greater than every finite value.
class EnergyValue {
 public:
  static EnergyValue finite(double v);
  static EnergyValue infinite();

  bool is_finite() const { return finite_; }
  double value() const;  // throws if infinite

  bool operator==(const EnergyValue& o) const;
  bool operator<(const EnergyValue& o) const;
  bool operator>(const EnergyValue& o) const { return o < *this; }

  std::string to_string() const;  // 17 significant digits, or "infinite"

 private:
  EnergyValue(bool finite, double v) : finite_(finite), value_(v) {}
  bool finite_ = false;
  double value_ = 0.0;
};

}  // namespace ctrlenergy
