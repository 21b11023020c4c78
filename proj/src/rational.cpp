#include "ctrlenergy/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace ctrlenergy {

// ---------------------------------------------------------------------------
// BigInt
// ---------------------------------------------------------------------------

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  // Avoid overflow on LLONG_MIN.
  std::uint64_t u = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
  while (u != 0) {
    mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffu));
    u >>= 32;
  }
}

BigInt::BigInt(const std::string& decimal) {
  std::size_t i = 0;
  int sign = 1;
  if (i < decimal.size() && (decimal[i] == '+' || decimal[i] == '-')) {
    if (decimal[i] == '-') sign = -1;
    ++i;
  }
  if (i >= decimal.size()) throw InputError("empty integer literal");
  BigInt acc;
  const BigInt ten(10);
  for (; i < decimal.size(); ++i) {
    const char c = decimal[i];
    if (c < '0' || c > '9') throw InputError("invalid digit in integer literal");
    acc *= ten;
    acc += BigInt(c - '0');
  }
  *this = acc;
  if (sign < 0 && sign_ != 0) sign_ = -sign_;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::compare_mag(const std::vector<std::uint32_t>& a,
                        const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  const std::vector<std::uint32_t>& lo = a.size() < b.size() ? a : b;
  const std::vector<std::uint32_t>& hi = a.size() < b.size() ? b : a;
  std::vector<std::uint32_t> out(hi.size() + 1, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < hi.size(); ++i) {
    std::uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
    out[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
    carry = s >> 32;
  }
  out[hi.size()] = static_cast<std::uint32_t>(carry);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out(a.size(), 0);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow -
                     (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (d < 0) {
      d += static_cast<std::int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out[i] = static_cast<std::uint32_t>(d);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint32_t> out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    const std::uint64_t ai = a[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t cur = out[i + j] + ai * b[j] + carry;
      out[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    std::size_t k = i + b.size();
    while (carry != 0) {
      std::uint64_t cur = out[k] + carry;
      out[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
  if (rhs.sign_ == 0) return *this;
  if (sign_ == 0) return *this = rhs;
  if (sign_ == rhs.sign_) {
    mag_ = add_mag(mag_, rhs.mag_);
  } else {
    const int c = compare_mag(mag_, rhs.mag_);
    if (c == 0) {
      sign_ = 0;
      mag_.clear();
    } else if (c > 0) {
      mag_ = sub_mag(mag_, rhs.mag_);
    } else {
      mag_ = sub_mag(rhs.mag_, mag_);
      sign_ = rhs.sign_;
    }
  }
  trim();
  return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) { return *this += -rhs; }

BigInt& BigInt::operator*=(const BigInt& rhs) {
  sign_ *= rhs.sign_;
  mag_ = mul_mag(mag_, rhs.mag_);
  trim();
  return *this;
}

int BigInt::bit_length() const {
  if (mag_.empty()) return 0;
  int bits = static_cast<int>(mag_.size() - 1) * 32;
  std::uint32_t top = mag_.back();
  while (top != 0) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

bool BigInt::bit(int i) const {
  const std::size_t limb = static_cast<std::size_t>(i) / 32;
  if (limb >= mag_.size()) return false;
  return (mag_[limb] >> (i % 32)) & 1u;
}

void BigInt::shift_left_one_add_bit(bool b) {
  std::uint32_t carry = b ? 1u : 0u;
  for (std::size_t i = 0; i < mag_.size(); ++i) {
    const std::uint32_t next = mag_[i] >> 31;
    mag_[i] = (mag_[i] << 1) | carry;
    carry = next;
  }
  if (carry) mag_.push_back(carry);
  if (!mag_.empty()) sign_ = 1;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.sign_ == 0) throw InputError("division by zero");
  q = BigInt();
  r = BigInt();
  const int n = a.bit_length();
  for (int i = n - 1; i >= 0; --i) {
    r.shift_left_one_add_bit(a.bit(i));
    q.shift_left_one_add_bit(false);
    if (compare_mag(r.mag_, b.mag_) >= 0) {
      r.mag_ = sub_mag(r.mag_, b.mag_);
      r.trim();
      // Low bit of q is zero after the shift; set it.
      if (q.mag_.empty()) q.mag_.push_back(1u);
      else q.mag_[0] |= 1u;
    }
  }
  q.trim();
  r.trim();
  q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
  r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt& BigInt::operator/=(const BigInt& rhs) {
  BigInt q, r;
  divmod(*this, rhs, q, r);
  return *this = q;
}

BigInt& BigInt::operator%=(const BigInt& rhs) {
  BigInt q, r;
  divmod(*this, rhs, q, r);
  return *this = r;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
  BigInt x = a.abs();
  BigInt y = b.abs();
  while (!y.is_zero()) {
    BigInt q, r;
    divmod(x, y, q, r);
    x = y;
    y = r.abs();
  }
  return x;
}

int BigInt::compare(const BigInt& rhs) const {
  if (sign_ != rhs.sign_) return sign_ < rhs.sign_ ? -1 : 1;
  const int c = compare_mag(mag_, rhs.mag_);
  return sign_ >= 0 ? c : -c;
}

std::string BigInt::to_string() const {
  if (sign_ == 0) return "0";
  std::string digits;
  BigInt v = abs();
  const BigInt billion(1000000000);
  while (!v.is_zero()) {
    BigInt q, r;
    divmod(v, billion, q, r);
    std::uint64_t chunk = 0;
    for (std::size_t i = r.mag_.size(); i-- > 0;) chunk = (chunk << 32) | r.mag_[i];
    std::string part = std::to_string(chunk);
    if (!q.is_zero()) part = std::string(9 - part.size(), '0') + part;
    digits = part + digits;
    v = q;
  }
  return (sign_ < 0 ? "-" : "") + digits;
}

double BigInt::to_double() const {
  double r = 0.0;
  for (std::size_t i = mag_.size(); i-- > 0;) r = r * 4294967296.0 + mag_[i];
  return sign_ < 0 ? -r : r;
}

BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
BigInt operator/(BigInt a, const BigInt& b) { return a /= b; }
BigInt operator%(BigInt a, const BigInt& b) { return a %= b; }
bool operator==(const BigInt& a, const BigInt& b) { return a.compare(b) == 0; }
bool operator!=(const BigInt& a, const BigInt& b) { return a.compare(b) != 0; }
bool operator<(const BigInt& a, const BigInt& b) { return a.compare(b) < 0; }
bool operator>(const BigInt& a, const BigInt& b) { return a.compare(b) > 0; }
bool operator<=(const BigInt& a, const BigInt& b) { return a.compare(b) <= 0; }
bool operator>=(const BigInt& a, const BigInt& b) { return a.compare(b) >= 0; }

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw InputError("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_.is_negative()) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  const BigInt g = BigInt::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_.is_zero()) throw SingularMatrixError("rational division by zero");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

int Rational::compare(const Rational& rhs) const {
  // Denominators are positive, so cross-multiplication preserves order.
  return (num_ * rhs.den_).compare(rhs.num_ * den_);
}

std::string Rational::to_string() const {
  return num_.to_string() + "/" + den_.to_string();
}

double Rational::to_double() const {
  BigInt q, r;
  BigInt::divmod(num_, den_, q, r);
  return q.to_double() + r.to_double() / den_.to_double();
}

Rational operator+(Rational a, const Rational& b) { return a += b; }
Rational operator-(Rational a, const Rational& b) { return a -= b; }
Rational operator*(Rational a, const Rational& b) { return a *= b; }
Rational operator/(Rational a, const Rational& b) { return a /= b; }
bool operator==(const Rational& a, const Rational& b) { return a.compare(b) == 0; }
bool operator!=(const Rational& a, const Rational& b) { return a.compare(b) != 0; }
bool operator<(const Rational& a, const Rational& b) { return a.compare(b) < 0; }
bool operator>(const Rational& a, const Rational& b) { return a.compare(b) > 0; }
bool operator<=(const Rational& a, const Rational& b) { return a.compare(b) <= 0; }
bool operator>=(const Rational& a, const Rational& b) { return a.compare(b) >= 0; }

// ---------------------------------------------------------------------------
// RationalMatrix
// ---------------------------------------------------------------------------

RationalMatrix::RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw InputError("matrix dimensions must be nonnegative");
  data_.assign(static_cast<std::size_t>(rows) * cols, Rational());
}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw InputError("ragged initializer list");
    for (long long v : r) data_.emplace_back(v);
  }
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Rational(1);
  return m;
}

RationalMatrix RationalMatrix::outer(const std::vector<long long>& v) {
  const int n = static_cast<int>(v.size());
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Rational(BigInt(v[i]) * BigInt(v[j]), BigInt(1));
  return m;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw InputError("dimension mismatch in rational matrix +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Matrix RationalMatrix::to_matrix() const {
  Matrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).to_double();
  return m;
}

RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }

RationalMatrix rat_add(const RationalMatrix& a, const RationalMatrix& b) { return a + b; }

Rational rat_trace_inverse_2x2(const RationalMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2)
    throw InputError("rat_trace_inverse_2x2 requires a 2x2 matrix");
  const Rational det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (det.is_zero()) throw SingularMatrixError("exactly singular 2x2 matrix");
  return (m(0, 0) + m(1, 1)) / det;
}

}  // namespace ctrlenergy
