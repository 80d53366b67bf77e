#include <doctest.h>

#include <cmath>

#include "conicwalk/error.hpp"
#include "conicwalk/walk_analysis.hpp"
#include "oracles.hpp"

using namespace conicwalk;

namespace {

ClassIndex fin(std::uint32_t code) { return ClassIndex::finite_code(code); }

Kernel unit_kernel(std::uint32_t q, std::uint32_t step = 1) {
  return kernel(ConicParams::unit(*field_of_order(q)), fin(step));
}

// Worst-start TV computed with the naive oracle pipeline.
std::size_t oracle_tau(std::uint32_t p, double eps) {
  const oracle::MiniField f(static_cast<int>(p), {0, 1});
  const oracle::ClassMap cm(f, 1, 1);
  const auto t = oracle::structure_table(f, cm);
  const auto n = static_cast<std::size_t>(cm.count());
  std::vector<double> k(n * n), pi(n);
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = static_cast<double>(cm.sizes[i]) / (p * p);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = t[(i * n + 1) * n + j];
      k[i * n + j] = static_cast<double>(e.num) / static_cast<double>(e.den);
    }
  }
  for (std::size_t steps = 0;; ++steps) {
    double worst = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<double> d(n, 0.0);
      d[x] = 1.0;
      worst = std::max(worst, oracle::tv_by_subsets(oracle::step_distribution(d, k, steps), pi));
    }
    if (worst <= eps) return steps;
  }
}

}  // namespace

TEST_CASE("kernels are row-stochastic with the expected shape") {
  const Kernel k7 = unit_kernel(7);
  CHECK(k7.size() == 7);
  const Kernel k13 = unit_kernel(13);
  CHECK(k13.size() == 14);
  for (const Kernel* k : {&k7, &k13}) {
    for (std::size_t i = 0; i < k->size(); ++i) {
      Rational sum;
      for (std::size_t j = 0; j < k->size(); ++j) sum += k->exact(i, j);
      CHECK(sum == Rational(1));
    }
  }
  const auto params = ConicParams::unit(make_prime_field(13));
  const Kernel from_table = kernel(build_table(params, TableSource::Oracle), fin(1));
  for (std::size_t i = 0; i < 14; ++i)
    for (std::size_t j = 0; j < 14; ++j) CHECK(from_table.exact(i, j) == k13.exact(i, j));
  const Kernel identity = unit_kernel(7, 0);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) CHECK(identity.exact(i, j) == Rational(i == j ? 1 : 0));
}

TEST_CASE("evolution") {
  const Kernel k = unit_kernel(7);
  const auto d0 = point_mass(7, 0);
  CHECK(evolve(d0, k, 0) == d0);
  const auto one = evolve(d0, k, 1);
  CHECK(one[1] == doctest::Approx(1.0));
  // Two steps from the origin give the C_1 * C_1 expansion.
  const auto table = build_table(ConicParams::unit(make_prime_field(7)), TableSource::ClosedForm);
  const auto two = evolve_exact(exact_point_mass(7, 0), k, 2);
  for (std::size_t j = 0; j < 7; ++j) CHECK(two[j] == table.at(1, 1, j));
  const auto exact = to_real(evolve_exact(exact_point_mass(7, 3), k, 9));
  const auto real = evolve(point_mass(7, 3), k, 9);
  for (std::size_t j = 0; j < 7; ++j) CHECK(real[j] == doctest::Approx(exact[j]).epsilon(1e-13));
}

TEST_CASE("stationarity and ergodicity") {
  for (std::uint32_t q : {7u, 13u}) {
    const auto params = ConicParams::unit(*field_of_order(q));
    const Kernel k = kernel(params, fin(1));
    const auto pi = stationary(k);
    const auto h = haar(params);
    for (std::size_t i = 0; i < pi.size(); ++i) CHECK(std::abs(pi[i] - h[i]) <= 1e-12);
    CHECK(is_stationary_exact(k, haar_exact(params)));
    CHECK(ergodicity_check(k).ergodic());
  }
  const Kernel identity = unit_kernel(7, 0);
  CHECK_FALSE(ergodicity_check(identity).irreducible);
  try {
    (void)stationary(identity);
    FAIL("expected NotErgodic");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotErgodic);
  }
}

TEST_CASE("total variation") {
  const auto params = ConicParams::unit(make_prime_field(7));
  const auto h = haar(params);
  CHECK(tv_distance(point_mass(7, 0), h) == doctest::Approx(48.0 / 49.0));
  CHECK(tv_distance(h, h) == 0.0);
  CHECK(tv_distance(point_mass(7, 0), point_mass(7, 3)) == 1.0);
  CHECK_THROWS_AS(tv_distance(point_mass(7, 0), point_mass(8, 0)), Error);
  const Kernel k = kernel(params, fin(1));
  for (std::size_t t = 0; t < 6; ++t) {
    const auto d = evolve(point_mass(7, 2), k, t);
    CHECK(tv_distance(d, h) == doctest::Approx(oracle::tv_by_subsets(d, h)).epsilon(1e-12));
  }
}

TEST_CASE("mixing times match the oracle and stay within the bound") {
  const double eps = reference_epsilon();
  CHECK(eps == doctest::Approx(1.0 / (2.0 * std::exp(1.0))));
  CHECK(oracle_tau(7, eps) == 4);
  CHECK(oracle_tau(13, eps) == 4);
  CHECK(oracle_tau(7, 0.01) == 9);
  CHECK(oracle_tau(13, 0.001) == 12);
  for (std::uint32_t q : {7u, 13u}) {
    const auto params = ConicParams::unit(*field_of_order(q));
    const Kernel k = kernel(params, fin(1));
    const auto pi = haar(params);
    const auto result = mixing_time(k, pi, eps);
    CHECK(result.tau == 4);
    CHECK(result.curve.size() == result.tau + 1);
    CHECK(mixing_time(k, pi, 0.01).tau == oracle_tau(q, 0.01));
    CHECK(mixing_time(k, pi, 1.0).tau == 0);
    CHECK(static_cast<std::int64_t>(result.tau) <= mixing_time_bound(q, branch_of(q)));
    CHECK_THROWS_AS(mixing_time(k, pi, 1e-9, 3), Error);
  }
}

TEST_CASE("mixing time does not depend on the step class") {
  for (std::uint32_t q : {7u, 9u, 11u, 13u}) {
    const auto params = ConicParams::unit(*field_of_order(q));
    const auto pi = haar(params);
    const auto base = mixing_time(kernel(params, fin(1)), pi, reference_epsilon()).tau;
    for (std::uint32_t s = 2; s < q; ++s) CHECK(mixing_time(kernel(params, fin(s)), pi, reference_epsilon()).tau == base);
  }
}

TEST_CASE("mixing bounds") {
  CHECK(mixing_time_bound(7, Branch::ThreeModFour) == 96);
  CHECK(mixing_time_bound(11, Branch::ThreeModFour) == 120);
  CHECK(mixing_time_bound(13, Branch::OneModFour) == 402);
  CHECK_THROWS_AS(mixing_time_bound(13, Branch::ThreeModFour), Error);
  CHECK(minorization_bound(7, Branch::ThreeModFour) == Rational(294, 4096));
  CHECK(minorization_bound(13, Branch::OneModFour) == Rational(1, 39));
  CHECK(minorization_steps(Branch::ThreeModFour) == 4);
  CHECK(minorization_steps(Branch::OneModFour) == 6);
}

TEST_CASE("minorization constants") {
  const auto p7 = ConicParams::unit(make_prime_field(7));
  const auto m7 = minorization_constant(kernel(p7, fin(1)), haar_exact(p7), 4);
  REQUIRE(m7.exact);
  CHECK(*m7.exact >= Rational(294, 4096));
  const auto p13 = ConicParams::unit(make_prime_field(13));
  const auto m13 = minorization_constant(kernel(p13, fin(1)), haar_exact(p13), 6);
  REQUIRE(m13.exact);
  CHECK(*m13.exact == Rational(447343, 497664));
  CHECK(m13.value == doctest::Approx(minorization_constant(kernel(p13, fin(1)), haar(p13), 6).value));
  const auto p5 = ConicParams::unit(make_prime_field(5));
  const auto m5 = minorization_constant(kernel(p5, fin(1)), haar_exact(p5), 6);
  CHECK(m5.value > 0.0);
}

TEST_CASE("geometric decay and boosting") {
  const auto p7 = ConicParams::unit(make_prime_field(7));
  const Kernel k7 = kernel(p7, fin(1));
  CHECK(geometric_decay_check(k7, haar(p7), 4, 294.0 / 4096.0).passed);
  const auto p13 = ConicParams::unit(make_prime_field(13));
  const Kernel k13 = kernel(p13, fin(1));
  const auto decay = geometric_decay_check(k13, haar(p13), 6, 1.0 / 39.0);
  CHECK(decay.passed);
  CHECK(decay.rows.size() == 30);
  CHECK(boost_check(k7, haar(p7), 0.01).holds);
  CHECK(boost_check(k13, haar(p13), 0.001).holds);
  const auto trivial = boost_check(k7, haar(p7), reference_epsilon());
  CHECK(trivial.holds);
  CHECK(trivial.tau_eps == trivial.tau_reference);
  CHECK_THROWS_AS(boost_check(k7, haar(p7), 0.5), Error);
}

TEST_CASE("walk errata") {
  const auto e27 = walk_errata(ConicParams::unit(make_extension_field(3, 3)));
  REQUIRE(e27.size() == 1);
  CHECK(e27[0].location.find("four-step") != std::string::npos);
  CHECK(walk_errata(ConicParams::unit(make_prime_field(7))).empty());
  CHECK(walk_errata(ConicParams::unit(make_prime_field(13))).size() == 1);
}
