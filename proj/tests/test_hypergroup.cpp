#include <doctest.h>

#include <random>

#include "conicwalk/error.hpp"
#include "conicwalk/hypergroup.hpp"
#include "oracles.hpp"

using namespace conicwalk;

namespace {

ClassIndex fin(std::uint32_t code) { return ClassIndex::finite_code(code); }

void check_against_mini_oracle(const ConicParams& params) {
  const Field& f = params.field();
  const oracle::MiniField mini(static_cast<int>(f.characteristic()),
                               std::vector<int>(f.modulus().begin(), f.modulus().end()));
  const oracle::ClassMap cm(mini, static_cast<int>(params.a().code()), static_cast<int>(params.b().code()));
  const auto expected = oracle::structure_table(mini, cm);
  const auto table = build_table(params, TableSource::ClosedForm);
  REQUIRE(static_cast<int>(table.size()) == cm.count());
  const std::size_t n = table.size();
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto& e = expected[(i * n + j) * n + k];
        const auto& v = table.at(i, j, k);
        mismatches += v.num() != e.num || v.den() != e.den;
      }
  CHECK(mismatches == 0);
}

}  // namespace

TEST_CASE("GF(7) structure constants") {
  const Field f = make_prime_field(7);
  const auto params = ConicParams::unit(f);
  CHECK(structure_constant(fin(1), fin(1), fin(4), params) == Rational(1, 8));
  CHECK(structure_constant(fin(1), fin(1), fin(1), params) == Rational(0));
  for (std::uint32_t j = 0; j < 7; ++j)
    for (std::uint32_t k = 0; k < 7; ++k)
      CHECK(structure_constant(fin(0), fin(j), fin(k), params) == Rational(j == k ? 1 : 0));
  const auto table = build_table(params, TableSource::ClosedForm);
  CHECK(table.at(fin(1), fin(1), fin(4)) == Rational(1, 8));
  CHECK(compare_tables(table, oracle_table(params)).empty());
}

TEST_CASE("GF(13) structure constants on the split index set") {
  const Field f = make_prime_field(13);
  const auto params = ConicParams::unit(f);
  const auto iso = ClassIndex::isotropic(f);
  CHECK(structure_constant(fin(1), fin(1), iso, params) == Rational(0));
  CHECK(structure_constant(iso, iso, iso, params) == Rational(11, 24));
  CHECK(structure_constant(iso, iso, fin(3), params) == Rational(1, 24));
  CHECK(structure_constant(iso, fin(1), fin(0), params) == Rational(0));
  CHECK(structure_constant(iso, fin(1), fin(1), params) == Rational(0));
  CHECK(structure_constant(iso, fin(1), fin(2), params) == Rational(1, 12));
  CHECK(structure_constant(iso, fin(1), iso, params) == Rational(1, 12));
  CHECK(structure_constant(fin(1), fin(2), iso, params) == Rational(2, 12));
  CHECK(structure_constant(fin(2), fin(2), fin(0), params) == Rational(1, 12));
  CHECK_THROWS_AS(structure_constant(fin(13), fin(1), fin(1), params), Error);
}

TEST_CASE("closed form equals the naive enumeration oracle") {
  for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u}) {
    const Field f = *field_of_order(q);
    check_against_mini_oracle(ConicParams::unit(f));
    for (std::uint32_t b = 2; b < q; ++b) {
      if (quadratic_character(f.element(b)) == 1) {
        check_against_mini_oracle(ConicParams::from_ab(f, f.one(), f.element(b)));
        break;
      }
    }
  }
}

TEST_CASE("library oracle agrees with the naive oracle") {
  const Field f = make_extension_field(3, 2);
  const auto params = ConicParams::unit(f);
  CHECK(compare_tables(oracle_table(params), build_table(params, TableSource::ClosedForm)).empty());
  CHECK_THROWS_AS(oracle_table(ConicParams::unit(make_prime_field(127))), Error);
}

TEST_CASE("structure constants do not depend on the conic parameters") {
  std::mt19937_64 gen(3);
  for (std::uint32_t q : {7u, 13u, 25u}) {
    const Field f = *field_of_order(q);
    const auto reference = build_table(ConicParams::unit(f), TableSource::ClosedForm);
    std::uniform_int_distribution<std::uint32_t> pick(1, q - 1);
    for (int trial = 0; trial < 4; ++trial) {
      const auto a = f.element(pick(gen));
      const auto s = f.element(pick(gen));
      const auto params = ConicParams::from_ab(f, a, a * s * s);
      CHECK(compare_tables(reference, oracle_table(params)).empty());
    }
  }
}

TEST_CASE("axioms hold on the split index set and fail unsplit") {
  for (std::uint32_t q : {7u, 9u, 13u, 25u}) {
    const auto params = ConicParams::unit(*field_of_order(q));
    const auto report = verify_axioms(build_table(params, TableSource::ClosedForm));
    CHECK(report.checks.size() == 5);
    CHECK(report.all_passed());
  }
  const auto params13 = ConicParams::unit(make_prime_field(13));
  const auto unsplit = build_table(params13, TableSource::Oracle, NullCircle::Unsplit);
  CHECK(compare_tables(unsplit, build_table(params13, TableSource::ClosedForm, NullCircle::Unsplit)).empty());
  const auto report = verify_axioms(unsplit);
  CHECK_FALSE(report.check("hermitian").passed);
  CHECK(report.check("normalization").passed);
  CHECK_THROWS_AS(report.check("associativity"), Error);
}

TEST_CASE("the hypergroup product is associative") {
  // (C_i C_j) C_l = C_i (C_j C_l), expanded in the structure constants.
  for (std::uint32_t q : {7u, 9u, 13u}) {
    const auto table = build_table(ConicParams::unit(*field_of_order(q)), TableSource::ClosedForm);
    const std::size_t n = table.size();
    std::mt19937_64 gen(q);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t i = pick(gen), j = pick(gen), l = pick(gen);
      for (std::size_t m = 0; m < n; ++m) {
        Rational left, right;
        for (std::size_t k = 0; k < n; ++k) {
          left += table.at(i, j, k) * table.at(k, l, m);
          right += table.at(j, l, k) * table.at(i, k, m);
        }
        CHECK(left == right);
      }
    }
  }
}

TEST_CASE("as-stated table fails the axioms") {
  const auto params = ConicParams::unit(make_prime_field(13));
  const auto report = verify_axioms(build_table(params, TableSource::AsStated));
  CHECK_FALSE(report.all_passed());
  CHECK_THROWS_AS(build_table(params, TableSource::AsStated, NullCircle::Unsplit), Error);
  const auto errata = structure_errata(params);
  REQUIRE_FALSE(errata.empty());
  CHECK(errata.front().location.find("discriminant") != std::string::npos);
}

TEST_CASE("two-step support witnesses") {
  for (std::uint32_t q : {7u, 13u}) {
    const Field f = *field_of_order(q);
    const auto table = build_table(ConicParams::unit(f), TableSource::ClosedForm);
    const ClassScheme& s = table.scheme();
    for (std::size_t i = 1; i < s.size(); ++i)
      for (std::size_t j = 1; j < s.size(); ++j) {
        const auto w = two_step_support(s.at(i), s.at(j), table);
        REQUIRE(w);
        CHECK(table.at(s.at(i), fin(1), *w) > Rational(0));
        CHECK(table.at(*w, fin(1), s.at(j)) > Rational(0));
      }
    CHECK_THROWS_AS(two_step_support(fin(0), fin(1), table), Error);
  }
}
