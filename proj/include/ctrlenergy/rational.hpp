#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ctrlenergy/errors.hpp"
#include "ctrlenergy/matrix.hpp"

namespace ctrlenergy {

/// Arbitrary-precision signed integer, sign-magnitude with base-2^32 limbs.
///
/// Division is binary long division: slower than limb-wise schoolbook but
/// simple and exact, and all the certificates in this project involve numbers
/// of well under a thousand bits.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT: implicit by design, mirrors integer literals
  explicit BigInt(const std::string& decimal);

  bool is_zero() const { return sign_ == 0; }
  bool is_negative() const { return sign_ < 0; }
  BigInt abs() const;
  BigInt operator-() const;

  BigInt& operator+=(const BigInt& rhs);
  BigInt& operator-=(const BigInt& rhs);
  BigInt& operator*=(const BigInt& rhs);

  /// Truncated division: quotient rounds toward zero, remainder has the
  /// dividend's sign. Throws InputError on division by zero.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  BigInt& operator/=(const BigInt& rhs);
  BigInt& operator%=(const BigInt& rhs);

  static BigInt gcd(const BigInt& a, const BigInt& b);  // nonnegative

  int compare(const BigInt& rhs) const;  // -1, 0, +1

  std::string to_string() const;
  double to_double() const;

 private:
  int sign_ = 0;                 // -1, 0, +1
  std::vector<std::uint32_t> mag_;  // little-endian, no leading zero limbs

  void trim();
  static int compare_mag(const std::vector<std::uint32_t>& a,
                         const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // Requires a >= b.
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  int bit_length() const;
  bool bit(int i) const;
  void shift_left_one_add_bit(bool b);  // mag = mag*2 + b
};

BigInt operator+(BigInt a, const BigInt& b);
BigInt operator-(BigInt a, const BigInt& b);
BigInt operator*(BigInt a, const BigInt& b);
BigInt operator/(BigInt a, const BigInt& b);
BigInt operator%(BigInt a, const BigInt& b);
bool operator==(const BigInt& a, const BigInt& b);
bool operator!=(const BigInt& a, const BigInt& b);
bool operator<(const BigInt& a, const BigInt& b);
bool operator>(const BigInt& a, const BigInt& b);
bool operator<=(const BigInt& a, const BigInt& b);
bool operator>=(const BigInt& a, const BigInt& b);

/// Exact rational number. Always canonical: gcd(|num|, den) = 1, den > 0,
/// zero is 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(BigInt num, BigInt den);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  int compare(const Rational& rhs) const;

  std::string to_string() const;  // always "p/q"
  double to_double() const;

 private:
  BigInt num_;
  BigInt den_;
  void normalize();
};

Rational operator+(Rational a, const Rational& b);
Rational operator-(Rational a, const Rational& b);
Rational operator*(Rational a, const Rational& b);
Rational operator/(Rational a, const Rational& b);
bool operator==(const Rational& a, const Rational& b);
bool operator!=(const Rational& a, const Rational& b);
bool operator<(const Rational& a, const Rational& b);
bool operator>(const Rational& a, const Rational& b);
bool operator<=(const Rational& a, const Rational& b);
bool operator>=(const Rational& a, const Rational& b);

/// Dense matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols);
  RationalMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static RationalMatrix identity(int n);
  /// v v^T for an integer column vector.
  static RationalMatrix outer(const std::vector<long long>& v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  RationalMatrix& operator+=(const RationalMatrix& rhs);
  Matrix to_matrix() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b);

RationalMatrix rat_add(const RationalMatrix& a, const RationalMatrix& b);

/// Exact tr(M^-1) = (a+d)/(ad-bc) for a 2x2 rational matrix.
/// Throws SingularMatrixError when ad - bc = 0 exactly.
Rational rat_trace_inverse_2x2(const RationalMatrix& m);

}  // namespace ctrlenergy
