#include "conicwalk/walk_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>
#include <string>

#include "conicwalk/error.hpp"

namespace conicwalk {

namespace {

constexpr std::size_t kExactMaxSteps = 8;
constexpr std::uint32_t kExactMaxOrder = 31;
constexpr std::size_t kExactEvolveMaxSteps = 64;

using RealMatrix = std::vector<double>;
using ExactMatrix = std::vector<Rational>;

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b, std::size_t n) {
  RealMatrix out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      const double a_il = a[i * n + l];
      if (a_il == 0.0) continue;
      const double* brow = &b[l * n];
      double* orow = &out[i * n];
      for (std::size_t j = 0; j < n; ++j) orow[j] += a_il * brow[j];
    }
  }
  return out;
}

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b, std::size_t n) {
  ExactMatrix out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      const Rational& a_il = a[i * n + l];
      if (a_il.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!b[l * n + j].is_zero()) out[i * n + j] += a_il * b[l * n + j];
      }
    }
  }
  return out;
}

RealMatrix real_power(const Kernel& k, std::size_t m) {
  const std::size_t n = k.size();
  RealMatrix out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out[i * n + i] = 1.0;
  for (std::size_t t = 0; t < m; ++t) out = multiply(out, k.real(), n);
  return out;
}

ExactMatrix exact_power(const Kernel& k, std::size_t m) {
  const std::size_t n = k.size();
  ExactMatrix base(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) base[i * n + j] = k.exact(i, j);
  }
  ExactMatrix out(n * n);
  for (std::size_t i = 0; i < n; ++i) out[i * n + i] = Rational(1);
  for (std::size_t t = 0; t < m; ++t) out = multiply(out, base, n);
  return out;
}

double worst_row_tv(const RealMatrix& power, const Distribution& pi, std::size_t n) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += std::abs(power[i * n + j] - pi[j]);
    worst = std::max(worst, 0.5 * sum);
  }
  return worst;
}

void require_size(const Kernel& k, std::size_t size, const char* what) {
  if (size != k.size()) {
    throw Error(Errc::IndexMismatch, std::string(what) + " length differs from the kernel's index set");
  }
}

constexpr double kMonotoneSlack = 1e-12;

}  // namespace

Branch branch_of(std::uint32_t q) {
  return q % 4 == 1 ? Branch::OneModFour : Branch::ThreeModFour;
}

std::string_view branch_name(Branch branch) noexcept {
  return branch == Branch::OneModFour ? "1mod4" : "3mod4";
}

Kernel::Kernel(ClassScheme scheme, ClassIndex step, std::vector<Rational> exact)
    : scheme_(std::move(scheme)), step_(step), n_(scheme_.size()), exact_(std::move(exact)) {
  if (exact_.size() != n_ * n_) throw Error(Errc::IndexMismatch, "kernel is not |I| x |I|");
  real_.resize(exact_.size());
  for (std::size_t i = 0; i < n_; ++i) {
    Rational sum;
    for (std::size_t j = 0; j < n_; ++j) {
      sum += exact_[i * n_ + j];
      real_[i * n_ + j] = exact_[i * n_ + j].to_double();
    }
    if (sum != Rational(1)) {
      throw Error(Errc::InvalidArgument, "kernel row " + std::to_string(i) + " sums to " +
                                             sum.to_string());
    }
  }
}

Kernel kernel(const StructureTable& table, const ClassIndex& step) {
  const std::size_t s = table.scheme().position(step);
  const std::size_t n = table.size();
  std::vector<Rational> exact(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) exact[i * n + j] = table.at(i, s, j);
  }
  return Kernel(table.scheme(), step, std::move(exact));
}

Kernel kernel(const ConicParams& params, const ClassIndex& step) {
  ClassScheme scheme(params.field());
  scheme.position(step);
  const auto indices = scheme.indices();
  const std::size_t n = indices.size();
  std::vector<Rational> exact(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      exact[i * n + j] = structure_constant(indices[i], step, indices[j], params);
    }
  }
  return Kernel(std::move(scheme), step, std::move(exact));
}

Distribution point_mass(std::size_t size, std::size_t position) {
  if (position >= size) throw Error(Errc::IndexInvalid, "point mass outside the index set");
  Distribution d(size, 0.0);
  d[position] = 1.0;
  return d;
}

ExactDistribution exact_point_mass(std::size_t size, std::size_t position) {
  if (position >= size) throw Error(Errc::IndexInvalid, "point mass outside the index set");
  ExactDistribution d(size);
  d[position] = Rational(1);
  return d;
}

Distribution to_real(const ExactDistribution& d) {
  Distribution out(d.size());
  std::transform(d.begin(), d.end(), out.begin(), [](const Rational& r) { return r.to_double(); });
  return out;
}

Distribution evolve(const Distribution& d0, const Kernel& k, std::size_t steps) {
  require_size(k, d0.size(), "distribution");
  const std::size_t n = k.size();
  Distribution cur = d0;
  Distribution next(n);
  for (std::size_t t = 0; t < steps; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (cur[i] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) next[j] += cur[i] * k(i, j);
    }
    cur.swap(next);
  }
  return cur;
}

ExactDistribution evolve_exact(const ExactDistribution& d0, const Kernel& k, std::size_t steps) {
  require_size(k, d0.size(), "distribution");
  if (steps > kExactEvolveMaxSteps) {
    throw Error(Errc::InvalidArgument, "exact evolution is limited to 64 steps");
  }
  const std::size_t n = k.size();
  ExactDistribution cur = d0;
  for (std::size_t t = 0; t < steps; ++t) {
    ExactDistribution next(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (cur[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!k.exact(i, j).is_zero()) next[j] += cur[i] * k.exact(i, j);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

ExactDistribution haar_exact(const ConicParams& params) {
  const ClassScheme scheme(params.field());
  const std::int64_t q = params.field().order();
  ExactDistribution pi;
  pi.reserve(scheme.size());
  for (const auto& idx : scheme.indices()) pi.emplace_back(class_size(idx, params), q * q);
  return pi;
}

Distribution haar(const ConicParams& params) { return to_real(haar_exact(params)); }

bool is_stationary_exact(const Kernel& k, const ExactDistribution& pi) {
  require_size(k, pi.size(), "distribution");
  return evolve_exact(pi, k, 1) == pi;
}

ErgodicityCertificate ergodicity_check(const Kernel& k) {
  const std::size_t n = k.size();
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  const auto edge = [&](std::size_t u, std::size_t v) { return !k.exact(u, v).is_zero(); };
  const auto bfs = [&](bool reverse) {
    std::vector<std::size_t> level(n, kUnseen);
    std::queue<std::size_t> frontier;
    level[0] = 0;
    frontier.push(0);
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      for (std::size_t v = 0; v < n; ++v) {
        if (level[v] == kUnseen && (reverse ? edge(v, u) : edge(u, v))) {
          level[v] = level[u] + 1;
          frontier.push(v);
        }
      }
    }
    return level;
  };

  ErgodicityCertificate cert;
  const auto forward = bfs(false);
  const auto backward = bfs(true);
  for (std::size_t v = 0; v < n; ++v) {
    if (forward[v] == kUnseen) cert.unreachable.push_back(v);
    if (backward[v] == kUnseen) cert.cannot_return.push_back(v);
    if (!cert.self_loop && edge(v, v)) cert.self_loop = v;
  }
  cert.irreducible = cert.unreachable.empty() && cert.cannot_return.empty();

  // Within the class of state 0, every edge u -> v gives a closed walk
  // through 0 of length level(u) + 1 + (return from v), so the period is
  // the gcd of level(u) + 1 - level(v) over those edges.
  std::size_t g = 0;
  for (std::size_t u = 0; u < n; ++u) {
    if (forward[u] == kUnseen || backward[u] == kUnseen) continue;
    for (std::size_t v = 0; v < n; ++v) {
      if (!edge(u, v) || forward[v] == kUnseen || backward[v] == kUnseen) continue;
      const auto lu = static_cast<std::int64_t>(forward[u]) + 1;
      const auto lv = static_cast<std::int64_t>(forward[v]);
      g = std::gcd(g, static_cast<std::size_t>(lu > lv ? lu - lv : lv - lu));
    }
  }
  cert.period = g;
  cert.aperiodic = g == 1;
  return cert;
}

Distribution stationary(const Kernel& k) {
  const auto cert = ergodicity_check(k);
  if (!cert.ergodic()) {
    throw Error(Errc::NotErgodic, cert.irreducible ? "kernel is periodic" : "kernel is reducible");
  }
  const std::size_t n = k.size();
  constexpr std::size_t kMaxIterations = 1'000'000;
  constexpr std::size_t kPatience = 64;
  constexpr double kRequiredResidual = 1e-13;

  Distribution cur(n, 1.0 / static_cast<double>(n));
  double best = 1.0;
  std::size_t stale = 0;
  for (std::size_t it = 0; it < kMaxIterations; ++it) {
    Distribution next = evolve(cur, k, 1);
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    double residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      next[j] /= total;
      residual = std::max(residual, std::abs(next[j] - cur[j]));
    }
    cur.swap(next);
    // Keep iterating past the required residual until rounding noise stops
    // further progress.
    if (residual < best) {
      best = residual;
      stale = 0;
    } else if (++stale >= kPatience && best <= kRequiredResidual) {
      return cur;
    }
    if (residual == 0.0) return cur;
  }
  if (best <= kRequiredResidual) return cur;
  throw Error(Errc::Timeout, "power iteration did not reach residual 1e-13");
}

double tv_distance(const Distribution& mu, const Distribution& nu) {
  if (mu.size() != nu.size()) throw Error(Errc::IndexMismatch, "distributions over different index sets");
  double sum = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) sum += std::abs(mu[i] - nu[i]);
  return 0.5 * sum;
}

std::vector<double> worst_case_tv_curve(const Kernel& k, const Distribution& pi, std::size_t t_max) {
  require_size(k, pi.size(), "distribution");
  const std::size_t n = k.size();
  RealMatrix power = real_power(k, 0);
  std::vector<double> curve{worst_row_tv(power, pi, n)};
  for (std::size_t t = 1; t <= t_max; ++t) {
    power = multiply(power, k.real(), n);
    curve.push_back(worst_row_tv(power, pi, n));
  }
  return curve;
}

MixingResult mixing_time(const Kernel& k, const Distribution& pi, double eps, std::size_t max_steps) {
  require_size(k, pi.size(), "distribution");
  const std::size_t n = k.size();
  MixingResult result;
  RealMatrix power = real_power(k, 0);
  result.curve.push_back(worst_row_tv(power, pi, n));
  while (result.curve.back() > eps) {
    if (result.curve.size() > max_steps) {
      throw Error(Errc::Timeout, "mixing time exceeds " + std::to_string(max_steps) + " steps");
    }
    power = multiply(power, k.real(), n);
    const double tv = worst_row_tv(power, pi, n);
    if (tv > result.curve.back() + kMonotoneSlack) {
      throw Error(Errc::InternalAssertion,
                  "worst-start TV increased at t = " + std::to_string(result.curve.size()) + ": " +
                      std::to_string(result.curve.back()) + " -> " + std::to_string(tv));
    }
    result.curve.push_back(tv);
  }
  result.tau = result.curve.size() - 1;
  return result;
}

MixingResult mixing_time(const Kernel& k, const Distribution& pi, double eps) {
  const auto bound = mixing_time_bound(k.q(), branch_of(k.q()));
  return mixing_time(k, pi, eps, static_cast<std::size_t>(100 * bound));
}

std::int64_t mixing_time_bound(std::uint32_t q, Branch branch) {
  if (branch != branch_of(q)) {
    throw Error(Errc::BranchMismatch, "q = " + std::to_string(q) + " is not " +
                                          std::string(branch_name(branch)));
  }
  const long double qq = q;
  const long double growth = 1.0L + std::numbers::ln2_v<long double>;
  if (branch == Branch::ThreeModFour) {
    const long double n = growth * std::pow(qq + 1, 4) / (qq * qq * (qq - 1));
    return 4 * static_cast<std::int64_t>(std::ceil(n));
  }
  return 6 * static_cast<std::int64_t>(std::ceil(growth * 3 * qq));
}

Rational minorization_bound(std::uint32_t q, Branch branch) {
  if (branch != branch_of(q)) {
    throw Error(Errc::BranchMismatch, "q = " + std::to_string(q) + " is not " +
                                          std::string(branch_name(branch)));
  }
  const std::int64_t qq = q;
  if (branch == Branch::ThreeModFour) {
    return Rational(qq * qq * (qq - 1), (qq + 1) * (qq + 1) * (qq + 1) * (qq + 1));
  }
  return Rational(1, 3 * qq);
}

std::size_t minorization_steps(Branch branch) noexcept {
  return branch == Branch::ThreeModFour ? 4 : 6;
}

Minorization minorization_constant(const Kernel& k, const ExactDistribution& pi, std::size_t m) {
  require_size(k, pi.size(), "distribution");
  if (m < 1) throw Error(Errc::InvalidArgument, "minorization needs at least one step");
  if (m > kExactMaxSteps || k.q() > kExactMaxOrder) return minorization_constant(k, to_real(pi), m);
  const std::size_t n = k.size();
  const ExactMatrix power = exact_power(k, m);
  std::optional<Rational> best;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational ratio = power[i * n + j] / pi[j];
      if (!best || ratio < *best) best = ratio;
    }
  }
  return Minorization{m, best->to_double(), best};
}

Minorization minorization_constant(const Kernel& k, const Distribution& pi, std::size_t m) {
  require_size(k, pi.size(), "distribution");
  if (m < 1) throw Error(Errc::InvalidArgument, "minorization needs at least one step");
  const std::size_t n = k.size();
  const RealMatrix power = real_power(k, m);
  double best = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) best = std::min(best, power[i * n + j] / pi[j]);
  }
  return Minorization{m, best, std::nullopt};
}

DecayReport geometric_decay_check(const Kernel& k, const Distribution& pi, std::size_t m, double c,
                                  std::size_t n_max) {
  const auto curve = worst_case_tv_curve(k, pi, m * n_max);
  DecayReport report{m, c, {}, true};
  for (std::size_t n = 1; n <= n_max; ++n) {
    DecayRow row{n, curve[m * n], std::pow(1.0 - c, static_cast<double>(n)), true};
    row.passed = row.tv <= row.bound + kDecayTolerance;
    report.passed = report.passed && row.passed;
    report.rows.push_back(row);
  }
  return report;
}

double reference_epsilon() noexcept { return 1.0 / (2.0 * std::numbers::e); }

BoostReport boost_check(const Kernel& k, const Distribution& pi, double eps) {
  if (!(eps > 0.0) || eps > reference_epsilon()) {
    throw Error(Errc::InvalidArgument, "boost check needs eps in (0, 1/(2e)]");
  }
  BoostReport report;
  report.eps = eps;
  report.tau_eps = mixing_time(k, pi, eps).tau;
  report.tau_reference = mixing_time(k, pi, reference_epsilon()).tau;
  report.factor = static_cast<std::int64_t>(std::ceil(std::log(1.0 / eps)));
  report.holds = static_cast<std::int64_t>(report.tau_eps) <=
                 static_cast<std::int64_t>(report.tau_reference) * report.factor;
  return report;
}

MixingReport mixing_report(const ConicParams& params, const ClassIndex& step, double eps) {
  const std::uint32_t q = params.field().order();
  const Branch branch = branch_of(q);
  const Kernel k = kernel(params, step);
  const auto pi_exact = haar_exact(params);
  const auto pi = to_real(pi_exact);

  MixingReport report;
  report.q = q;
  report.branch = branch;
  report.step = k.scheme().label(step);
  report.eps = eps;
  report.tau_bound = mixing_time_bound(q, branch);
  auto mixing = mixing_time(k, pi, eps);
  report.tau = mixing.tau;
  report.curve = std::move(mixing.curve);
  report.minorization = minorization_constant(k, pi_exact, minorization_steps(branch));
  report.minorization_bound = minorization_bound(q, branch);
  return report;
}

std::vector<Erratum> walk_errata(const ConicParams& params) {
  const Field& f = params.field();
  const std::int64_t q = f.order();
  const std::int64_t p = f.characteristic();
  std::vector<Erratum> out;
  const Kernel k = kernel(params, ClassIndex::finite_code(1));
  const auto pi = haar_exact(params);

  if (branch_of(f.order()) == Branch::ThreeModFour) {
    if (p != q) {
      const auto measured = minorization_constant(k, pi, 4);
      const Rational stated(q * q * (q - 1), (p + 1) * (p + 1) * (p + 1) * (p + 1));
      out.push_back({"four-step minorization constant",
                     "q^2(q-1)/(p+1)^4 = " + stated.to_string(),
                     "q^2(q-1)/(q+1)^4 = " + minorization_bound(f.order(), Branch::ThreeModFour).to_string() +
                         "; measured min K^4/pi = " +
                         (measured.exact ? measured.exact->to_string() : std::to_string(measured.value))});
    }
    return out;
  }

  const Rational stated_total = Rational(1, q * q) + Rational(2 * q - 1, q * q) +
                                Rational((q - 1) * (q + 1), q * q);
  out.push_back({"six-step minorization reference distribution",
                 "pi(0) = 1/q^2, pi(iso) = (2q-1)/q^2, pi(i) = (q+1)/q^2; total mass " +
                     stated_total.to_string(),
                 "pi(0) = 1/q^2, pi(iso) = 2(q-1)/q^2, pi(i) = (q-1)/q^2; total mass 1, "
                 "stationary: " + std::string(is_stationary_exact(k, pi) ? "yes" : "no")});
  return out;
}

}  // namespace conicwalk
