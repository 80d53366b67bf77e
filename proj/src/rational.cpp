#include "conicwalk/rational.hpp"

#include "conicwalk/error.hpp"

namespace conicwalk {

namespace {

__int128 gcd_wide(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits_int64(__int128 v) {
  return v >= static_cast<__int128>(INT64_MIN) && v <= static_cast<__int128>(INT64_MAX);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw Error(Errc::DivisionByZero, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  if (!fits_int64(num) || !fits_int64(den)) {
    throw Error(Errc::ArithmeticOverflow, "rational exceeds 64-bit range");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& rhs) {
  // Add over lcm(den, rhs.den) so shared denominators never square.
  const __int128 g = gcd_wide(den_, rhs.den_);
  const __int128 l = static_cast<__int128>(den_) / g * rhs.den_;
  const __int128 n = static_cast<__int128>(num_) * (l / den_) +
                     static_cast<__int128>(rhs.num_) * (l / rhs.den_);
  return *this = from_wide(n, l);
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  const __int128 g1 = gcd_wide(num_, rhs.den_);
  const __int128 g2 = gcd_wide(rhs.num_, den_);
  // Denominators are positive, so neither gcd can be zero.
  const __int128 n = (num_ / g1) * (rhs.num_ / g2);
  const __int128 d = (den_ / g2) * (rhs.den_ / g1);
  return *this = from_wide(n, d);
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw Error(Errc::DivisionByZero, "rational division by zero");
  return *this = from_wide(static_cast<__int128>(num_) * rhs.den_,
                           static_cast<__int128>(den_) * rhs.num_);
}

Rational Rational::operator-() const {
  return from_wide(-static_cast<__int128>(num_), den_);
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  const __int128 l = static_cast<__int128>(lhs.num_) * rhs.den_;
  const __int128 r = static_cast<__int128>(rhs.num_) * lhs.den_;
  return l <=> r;
}

}  // namespace conicwalk
