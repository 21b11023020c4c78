#include "ctrlenergy/actuator_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ctrlenergy {

ActuatorSet::ActuatorSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 1) throw InputError("actuator indices are 1-based");
    if (i > 0 && indices_[i] == indices_[i - 1])
      throw InputError("duplicate actuator index " + std::to_string(indices_[i]));
  }
}

ActuatorSet::ActuatorSet(std::initializer_list<int> indices)
    : ActuatorSet(std::vector<int>(indices)) {}

ActuatorSet ActuatorSet::full(int m) {
  std::vector<int> v(static_cast<std::size_t>(std::max(m, 0)));
  for (int i = 0; i < m; ++i) v[i] = i + 1;
  return ActuatorSet(std::move(v));
}

ActuatorSet ActuatorSet::from_mask(std::uint32_t mask) {
  std::vector<int> v;
  for (int i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1u) v.push_back(i + 1);
  return ActuatorSet(std::move(v));
}

std::uint32_t ActuatorSet::mask() const {
  std::uint32_t m = 0;
  for (int i : indices_) {
    if (i > 32) throw InputError("index too large for mask representation");
    m |= 1u << (i - 1);
  }
  return m;
}

bool ActuatorSet::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

bool ActuatorSet::is_subset_of(const ActuatorSet& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(),
                       indices_.end());
}

ActuatorSet ActuatorSet::with(int i) const {
  if (contains(i)) return *this;
  std::vector<int> v = indices_;
  v.push_back(i);
  return ActuatorSet(std::move(v));
}

ActuatorSet ActuatorSet::union_with(const ActuatorSet& other) const {
  std::vector<int> v;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                 other.indices_.end(), std::back_inserter(v));
  return ActuatorSet(std::move(v));
}

bool ActuatorSet::intersects(const ActuatorSet& other) const {
  for (int i : indices_)
    if (other.contains(i)) return true;
  return false;
}

std::string ActuatorSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(indices_[i]);
  }
  return s + "}";
}

EnergyValue EnergyValue::finite(double v) {
  if (!std::isfinite(v)) throw InputError("finite energy value must be finite");
  return EnergyValue(true, v);
}

EnergyValue EnergyValue::infinite() { return EnergyValue(false, 0.0); }

double EnergyValue::value() const {
  if (!finite_) throw InputError("value() on an infinite energy");
  return value_;
}

bool EnergyValue::operator==(const EnergyValue& o) const {
  if (finite_ != o.finite_) return false;
  return !finite_ || value_ == o.value_;
}

bool EnergyValue::operator<(const EnergyValue& o) const {
  if (!finite_) return false;         // infinity is not less than anything
  if (!o.finite_) return true;        // finite < infinity
  return value_ < o.value_;
}

std::string EnergyValue::to_string() const {
  if (!finite_) return "infinite";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value_);
  return buf;
}

}  // namespace ctrlenergy
