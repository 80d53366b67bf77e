#include <doctest.h>

#include <cstdint>
#include <limits>
#include <random>

#include "conicwalk/error.hpp"
#include "conicwalk/rational.hpp"

using conicwalk::Errc;
using conicwalk::Error;
using conicwalk::Rational;

TEST_CASE("rational normalizes sign and common factors") {
  const Rational r(6, -8);
  CHECK(r.num() == -3);
  CHECK(r.den() == 4);
  CHECK(r.to_string() == "-3/4");
  CHECK(Rational(10, 5).to_string() == "2");
  CHECK(Rational(0, 7) == Rational(0));
}

TEST_CASE("rational arithmetic") {
  CHECK(Rational(1, 6) + Rational(1, 3) == Rational(1, 2));
  CHECK(Rational(1, 6) - Rational(1, 3) == Rational(-1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK(-Rational(2, 5) == Rational(-2, 5));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(294, 4096).to_double() == doctest::Approx(0.0717773));
}

TEST_CASE("rational errors") {
  CHECK_THROWS_AS(Rational(1, 0), Error);
  try {
    (void)(Rational(1) / Rational(0));
    FAIL("expected division by zero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DivisionByZero);
  }
  const Rational big(std::numeric_limits<std::int64_t>::max(), 1);
  try {
    (void)(big * Rational(2));
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ArithmeticOverflow);
  }
}

TEST_CASE("rational field laws on random fractions") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000);
  std::uniform_int_distribution<std::int64_t> den(1, 1000);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a(num(gen), den(gen)), b(num(gen), den(gen)), c(num(gen), den(gen));
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(((a < b) == (a.to_double() < b.to_double()) || a == b));
  }
}
