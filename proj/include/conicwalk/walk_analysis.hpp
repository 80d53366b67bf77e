#pragma once

// The class-level random walk that repeatedly translates by a uniform point
// of a fixed step class s: its kernel K(i, j) = n_{i,s}^j, limit
// distribution, total variation distances, mixing times and minorization
// constants.

#include <cstdint>
#include <optional>
#include <vector>

#include "conicwalk/hypergroup.hpp"

namespace conicwalk {

enum class Branch { ThreeModFour, OneModFour };

Branch branch_of(std::uint32_t q);
std::string_view branch_name(Branch branch) noexcept;

/// Probability vectors over a ClassScheme, in position order.
using Distribution = std::vector<double>;
using ExactDistribution = std::vector<Rational>;

/// Row-stochastic transition matrix, kept both exactly and in binary64.
class Kernel {
 public:
  /// Throws InvalidArgument unless every row of `exact` sums to one.
  Kernel(ClassScheme scheme, ClassIndex step, std::vector<Rational> exact);

  const ClassScheme& scheme() const noexcept { return scheme_; }
  const ClassIndex& step() const noexcept { return step_; }
  std::size_t size() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return scheme_.field().order(); }

  const Rational& exact(std::size_t i, std::size_t j) const { return exact_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return real_[i * n_ + j]; }
  const std::vector<double>& real() const noexcept { return real_; }

 private:
  ClassScheme scheme_;
  ClassIndex step_;
  std::size_t n_;
  std::vector<Rational> exact_;
  std::vector<double> real_;
};

/// K(i, j) = n_{i,s}^j read from a table.
Kernel kernel(const StructureTable& table, const ClassIndex& step);
/// Same kernel straight from the closed form, without materializing |I|^3 entries.
Kernel kernel(const ConicParams& params, const ClassIndex& step);

Distribution point_mass(std::size_t size, std::size_t position);
ExactDistribution exact_point_mass(std::size_t size, std::size_t position);
Distribution to_real(const ExactDistribution& d);

/// d0 K^n by repeated vector-matrix products.
Distribution evolve(const Distribution& d0, const Kernel& k, std::size_t steps);
/// Exact counterpart; steps <= 64, and may throw ArithmeticOverflow when
/// denominators outgrow 64 bits.
ExactDistribution evolve_exact(const ExactDistribution& d0, const Kernel& k, std::size_t steps);

/// Class sizes over q^2: the walk's limit on the split index set.
ExactDistribution haar_exact(const ConicParams& params);
Distribution haar(const ConicParams& params);

bool is_stationary_exact(const Kernel& k, const ExactDistribution& pi);

struct ErgodicityCertificate {
  bool irreducible = false;
  bool aperiodic = false;
  /// gcd of cycle lengths through the origin class (0 if no cycle).
  std::size_t period = 0;
  /// Positions not reachable from position 0, and those that cannot reach it.
  std::vector<std::size_t> unreachable;
  std::vector<std::size_t> cannot_return;
  /// A state with a self-loop, if any.
  std::optional<std::size_t> self_loop;

  bool ergodic() const noexcept { return irreducible && aperiodic; }
};

ErgodicityCertificate ergodicity_check(const Kernel& k);

/// Unique stationary distribution by power iteration. Throws NotErgodic.
Distribution stationary(const Kernel& k);

/// Half the l1 distance. Throws IndexMismatch on length mismatch.
double tv_distance(const Distribution& mu, const Distribution& nu);

/// max over starting classes x of tv(K^t(x, .), pi), for t = 0..t_max.
std::vector<double> worst_case_tv_curve(const Kernel& k, const Distribution& pi, std::size_t t_max);

struct MixingResult {
  std::size_t tau = 0;
  /// Worst-start TV for t = 0..tau.
  std::vector<double> curve;
};

/// Smallest t with worst-start TV <= eps. Throws Timeout past max_steps and
/// InternalAssertion if the worst-start curve ever increases.
MixingResult mixing_time(const Kernel& k, const Distribution& pi, double eps, std::size_t max_steps);
/// As above with max_steps = 100 * mixing_time_bound(q).
MixingResult mixing_time(const Kernel& k, const Distribution& pi, double eps);

/// 4 * ceil((1 + ln 2)(q + 1)^4 / (q^2 (q - 1))) for q = 3 mod 4, and
/// 6 * ceil((1 + ln 2) * 3q) for q = 1 mod 4. Throws BranchMismatch.
std::int64_t mixing_time_bound(std::uint32_t q, Branch branch);

/// Minorization constant guaranteed at the branch's step count:
/// q^2 (q - 1) / (q + 1)^4 at 4 steps, 1/(3q) at 6 steps.
Rational minorization_bound(std::uint32_t q, Branch branch);
std::size_t minorization_steps(Branch branch) noexcept;

struct Minorization {
  std::size_t steps = 0;
  double value = 0.0;
  /// Present when computed in rationals (steps <= 8, q <= 31).
  std::optional<Rational> exact;
};

/// min over (i, j) of K^m(i, j) / pi(j).
Minorization minorization_constant(const Kernel& k, const ExactDistribution& pi, std::size_t m);
Minorization minorization_constant(const Kernel& k, const Distribution& pi, std::size_t m);

struct DecayRow {
  std::size_t n = 0;
  double tv = 0.0;
  double bound = 0.0;
  bool passed = true;
};

struct DecayReport {
  std::size_t m = 0;
  double c = 0.0;
  std::vector<DecayRow> rows;
  bool passed = true;
};

inline constexpr double kDecayTolerance = 1e-10;

/// Worst-start TV at step m*n against (1 - c)^n for n = 1..n_max.
DecayReport geometric_decay_check(const Kernel& k, const Distribution& pi, std::size_t m, double c,
                                  std::size_t n_max = 30);

struct BoostReport {
  double eps = 0.0;
  std::size_t tau_eps = 0;
  std::size_t tau_reference = 0;
  std::int64_t factor = 0;
  bool holds = false;
};

/// The reference threshold 1/(2e).
double reference_epsilon() noexcept;

/// tau(eps) <= tau(1/(2e)) * ceil(ln(1/eps)). eps must lie in (0, 1/(2e)].
BoostReport boost_check(const Kernel& k, const Distribution& pi, double eps);

struct MixingReport {
  std::uint32_t q = 0;
  Branch branch = Branch::ThreeModFour;
  std::string step;
  double eps = 0.0;
  std::size_t tau = 0;
  std::int64_t tau_bound = 0;
  std::vector<double> curve;
  Minorization minorization;
  Rational minorization_bound;
};

MixingReport mixing_report(const ConicParams& params, const ClassIndex& step, double eps);

/// Discrepancies in the reference minorization statements: the 4-step
/// constant's (p+1)^4 and the 6-step reference distribution.
std::vector<Erratum> walk_errata(const ConicParams& params);

}  // namespace conicwalk
