#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace pppt {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number kept in canonical form: the denominator is
/// positive and gcd(|numerator|, denominator) == 1 after every operation.
///
/// All probabilities on oracle paths are Rationals; floating point only
/// appears when summarising sampled frequencies for display.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)
  Rational(BigInt numerator, BigInt denominator);

  static Rational from_int(const BigInt& value) { return Rational(value, 1); }

  /// Exact value of a finite double (every double is a dyadic rational).
  static Rational from_double(double value);

  /// Parses "num/den" or a bare integer "num". Throws ParseError.
  static Rational parse(std::string_view text);

  /// 2^{-exponent}.
  static Rational pow2_inverse(unsigned exponent);

  const BigInt& numerator() const noexcept { return num_; }
  const BigInt& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_one() const noexcept { return num_ == 1 && den_ == 1; }

  /// Canonical "num/den" form, e.g. "3/4", "-1/2", "0/1".
  std::string to_string() const;
  double to_double() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  void canonicalize();

  BigInt num_;
  BigInt den_;
};

/// Three-way comparison spelled out for callers that want an explicit name.
inline std::strong_ordering compare(const Rational& a, const Rational& b) { return a <=> b; }

Rational pow(const Rational& base, unsigned exponent);

/// Binomial coefficient C(n, k) as an exact integer.
BigInt binomial(unsigned n, unsigned k);

}  // namespace pppt
