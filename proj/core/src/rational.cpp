#include "pppt/rational.hpp"

#include "pppt/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cmath>
#include <limits>

namespace pppt {

namespace mp = boost::multiprecision;

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) throw std::domain_error("Rational: zero denominator");
  canonicalize();
}

void Rational::canonicalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = mp::gcd(mp::abs(num_), den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("Rational::from_double: non-finite value");
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an exact integer for every finite double.
  constexpr int kBits = std::numeric_limits<double>::digits;
  auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, kBits));
  exponent -= kBits;
  BigInt num = scaled;
  BigInt den = 1;
  if (exponent >= 0) {
    num <<= exponent;
  } else {
    den <<= -exponent;
  }
  return Rational(num, den);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view digits, bool allow_sign) -> BigInt {
    std::size_t start = 0;
    if (allow_sign && !digits.empty() && (digits[0] == '-' || digits[0] == '+')) start = 1;
    if (start == digits.size()) throw ParseError("invalid rational: \"" + std::string(text) + "\"");
    for (std::size_t i = start; i < digits.size(); ++i) {
      if (digits[i] < '0' || digits[i] > '9') {
        throw ParseError("invalid rational: \"" + std::string(text) + "\"");
      }
    }
    std::string s(digits.substr(digits[0] == '+' ? 1 : 0));
    return BigInt(s);
  };

  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, true), 1);
  BigInt num = parse_int(text.substr(0, slash), true);
  BigInt den = parse_int(text.substr(slash + 1), false);
  if (den == 0) throw ParseError("invalid rational: zero denominator in \"" + std::string(text) + "\"");
  return Rational(num, den);
}

Rational Rational::pow2_inverse(unsigned exponent) {
  BigInt den = 1;
  den <<= exponent;
  return Rational(1, den);
}

std::string Rational::to_string() const { return num_.str() + "/" + den_.str(); }

double Rational::to_double() const {
  return mp::cpp_rational(num_, den_).convert_to<double>();
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
  }
  canonicalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  canonicalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("Rational: division by zero");
  BigInt num = num_ * rhs.den_;
  BigInt den = den_ * rhs.num_;
  num_ = std::move(num);
  den_ = std::move(den);
  canonicalize();
  return *this;
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational pow(const Rational& base, unsigned exponent) {
  return Rational(mp::pow(base.numerator(), exponent), mp::pow(base.denominator(), exponent));
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

}  // namespace pppt
