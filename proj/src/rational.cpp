#include "expobasis/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/integer.hpp>

#include "expobasis/error.hpp"

namespace expobasis {

namespace mp = boost::multiprecision;

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw Error("invalid_argument", "rational with zero denominator");
  normalize();
}

void Rational::normalize() {
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
  if (!std::isfinite(value)) throw Error("invalid_argument", "non-finite value has no rational form");
  if (value == 0.0) return {};
  int exp = 0;
  double mant = std::frexp(value, &exp);  // value = mant * 2^exp, 0.5 <= |mant| < 1
  // 53 bits of mantissa as an exact integer.
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt num(scaled);
  BigInt den(1);
  if (exp >= 0) {
    num <<= exp;
  } else {
    den <<= -exp;
  }
  return {num, den};
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Error {
    return Error("invalid_argument", "cannot parse rational '" + std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw fail();

  auto parse_int = [&](std::string_view s) -> BigInt {
    if (s.empty()) throw fail();
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw fail();
    for (std::size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw fail();
    // cpp_int reads a leading 0 as an octal prefix
    std::string_view body = s.substr(start);
    while (body.size() > 1 && body.front() == '0') body.remove_prefix(1);
    BigInt v{std::string(body)};
    return s[0] == '-' ? BigInt(-v) : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw fail();
    return {parse_int(text.substr(0, slash)), den};
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view digits = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
    if (whole.empty() && digits.empty()) throw fail();
    BigInt w = whole.empty() ? BigInt(0) : parse_int(whole);
    BigInt f = digits.empty() ? BigInt(0) : parse_int(digits);
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) throw fail();
    BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(digits.size()));
    Rational r(w * scale + f, scale);
    return negative ? -r : r;
  }
  return {parse_int(text), BigInt(1)};
}

double Rational::to_double() const {
  mp::cpp_rational q(num_, den_);
  return q.convert_to<double>();
}

std::int64_t Rational::to_int64() const {
  if (den_ != 1) throw Error("overflow", "value " + to_string() + " is not an integer");
  if (num_ > std::numeric_limits<std::int64_t>::max() || num_ < std::numeric_limits<std::int64_t>::min())
    throw Error("overflow", "value " + to_string() + " does not fit in 64-bit integer arithmetic");
  return num_.convert_to<std::int64_t>();
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

BigInt Rational::floor() const {
  BigInt q = num_ / den_;  // truncates toward zero
  if (num_ < 0 && q * den_ != num_) q -= 1;
  return q;
}

Rational Rational::frac() const { return *this - Rational(floor(), BigInt(1)); }

Rational Rational::abs() const { return num_ < 0 ? -*this : *this; }

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

Rational& Rational::operator-=(const Rational& rhs) {
  num_ = num_ * rhs.den_ - rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw Error("invalid_argument", "division by zero rational");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigInt lcd(std::span<const Rational> values) {
  if (values.empty()) throw Error("empty_input", "empty input");
  BigInt acc(1);
  for (const auto& v : values) acc = mp::lcm(acc, v.den());
  return acc;
}

}  // namespace expobasis
