#include "conicwalk/coupling_sim.hpp"

#include <algorithm>
#include <numeric>

#include "conicwalk/error.hpp"

namespace conicwalk {

namespace {

std::vector<double> cumulative(const double* begin, std::size_t n) {
  std::vector<double> cdf(n);
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += begin[j];
    cdf[j] = acc;
  }
  // Pin the last non-zero bucket to exactly 1 so u in [0, 1) always lands.
  for (std::size_t j = n; j-- > 0;) {
    if (begin[j] > 0.0) {
      for (std::size_t l = j; l < n; ++l) cdf[l] = 1.0;
      break;
    }
  }
  return cdf;
}

std::size_t invert(const double* cdf, std::size_t n, double u) {
  return static_cast<std::size_t>(std::upper_bound(cdf, cdf + n, u) - cdf);
}

struct CoupledWalk {
  const TransitionSampler& sampler;
  std::size_t x;
  std::size_t y;

  void step(Rng& rng) {
    if (x == y) {
      x = y = sampler.next(x, rng);
    } else {
      x = sampler.next(x, rng);
      y = sampler.next(y, rng);
    }
  }
};

}  // namespace

std::uint64_t Rng::derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TransitionSampler::TransitionSampler(const Kernel& k) : n_(k.size()), cdf_(n_ * n_) {
  for (std::size_t i = 0; i < n_; ++i) {
    const auto row = cumulative(k.real().data() + i * n_, n_);
    std::copy(row.begin(), row.end(), cdf_.begin() + static_cast<std::ptrdiff_t>(i * n_));
  }
}

std::size_t TransitionSampler::next(std::size_t from, Rng& rng) const {
  return invert(cdf_.data() + from * n_, n_, rng.uniform());
}

DistributionSampler::DistributionSampler(const Distribution& d) : cdf_(cumulative(d.data(), d.size())) {}

std::size_t DistributionSampler::draw(Rng& rng) const {
  return invert(cdf_.data(), cdf_.size(), rng.uniform());
}

ClassIndex sample_step(WalkState& state, const TransitionSampler& sampler, const ClassScheme& scheme) {
  const std::size_t next = sampler.next(scheme.position(state.current), state.rng);
  state.current = scheme.at(next);
  ++state.steps;
  return state.current;
}

ClassIndex sample_step(WalkState& state, const Kernel& k) {
  return sample_step(state, TransitionSampler(k), k.scheme());
}

std::uint64_t coupled_run(const ClassIndex& i, const Kernel& k, const Distribution& pi,
                          std::uint64_t seed) {
  if (pi.size() != k.size()) throw Error(Errc::IndexMismatch, "distribution length differs from kernel");
  const TransitionSampler sampler(k);
  const DistributionSampler start(pi);
  Rng rng(seed);
  CoupledWalk walk{sampler, k.scheme().position(i), start.draw(rng)};
  std::uint64_t t = 0;
  while (walk.x != walk.y) {
    if (++t > kCouplingStepLimit) {
      throw Error(Errc::Timeout, "coupling did not coalesce within 10^6 steps");
    }
    walk.step(rng);
  }
  return t;
}

double CouplingStats::mean_time() const {
  if (times.empty()) return 0.0;
  const double total = std::accumulate(times.begin(), times.end(), 0.0,
                                       [](double acc, std::uint64_t t) { return acc + static_cast<double>(t); });
  return total / static_cast<double>(times.size());
}

CouplingStats run_coupling(const ClassIndex& i, const Kernel& k, const Distribution& pi,
                           std::uint64_t trials, std::uint64_t seed) {
  CouplingStats stats;
  stats.trials = trials;
  stats.seed = seed;
  stats.start = k.scheme().label(i);
  stats.times.reserve(trials);
  for (std::uint64_t r = 0; r < trials; ++r) {
    stats.times.push_back(coupled_run(i, k, pi, Rng::derive_seed(seed, r)));
  }
  const std::uint64_t max_time =
      stats.times.empty() ? 0 : *std::max_element(stats.times.begin(), stats.times.end());
  std::vector<std::uint64_t> hist(max_time + 1, 0);
  for (auto t : stats.times) ++hist[t];
  stats.tail.resize(max_time + 1);
  std::uint64_t at_most = 0;
  for (std::uint64_t t = 0; t <= max_time; ++t) {
    at_most += hist[t];
    stats.tail[t] = static_cast<double>(trials - at_most) / static_cast<double>(trials);
  }
  return stats;
}

CoupledHistograms coupled_histograms(const ClassIndex& i, const Kernel& k, const Distribution& pi,
                                     std::uint64_t trials, std::uint64_t seed, std::size_t horizon) {
  if (pi.size() != k.size()) throw Error(Errc::IndexMismatch, "distribution length differs from kernel");
  const std::size_t n = k.size();
  const TransitionSampler sampler(k);
  const DistributionSampler start(pi);
  CoupledHistograms h{std::vector<std::vector<std::uint64_t>>(horizon + 1, std::vector<std::uint64_t>(n, 0)),
                      std::vector<std::vector<std::uint64_t>>(horizon + 1, std::vector<std::uint64_t>(n, 0))};
  const std::size_t origin = k.scheme().position(i);
  for (std::uint64_t r = 0; r < trials; ++r) {
    Rng rng(Rng::derive_seed(seed, r));
    CoupledWalk walk{sampler, origin, start.draw(rng)};
    for (std::size_t t = 0; t <= horizon; ++t) {
      if (t > 0) walk.step(rng);
      ++h.first[t][walk.x];
      ++h.second[t][walk.y];
    }
  }
  return h;
}

TvEstimate monte_carlo_tv(const ClassIndex& i, std::size_t t, std::uint64_t trials,
                          std::uint64_t seed, const Kernel& k, const Distribution& pi) {
  if (trials < 1000) throw Error(Errc::InvalidArgument, "Monte Carlo TV needs at least 1000 trials");
  if (pi.size() != k.size()) throw Error(Errc::IndexMismatch, "distribution length differs from kernel");
  const std::size_t n = k.size();
  const TransitionSampler sampler(k);
  const std::size_t origin = k.scheme().position(i);

  std::vector<std::uint64_t> counts(n, 0);
  for (std::uint64_t r = 0; r < trials; ++r) {
    Rng rng(Rng::derive_seed(seed, r));
    std::size_t x = origin;
    for (std::size_t s = 0; s < t; ++s) x = sampler.next(x, rng);
    ++counts[x];
  }
  const auto empirical_tv = [&](const std::vector<std::uint64_t>& c) {
    Distribution mu(n);
    for (std::size_t j = 0; j < n; ++j) mu[j] = static_cast<double>(c[j]) / static_cast<double>(trials);
    return tv_distance(mu, pi);
  };

  TvEstimate est;
  est.trials = trials;
  est.estimate = empirical_tv(counts);

  Distribution empirical(n);
  for (std::size_t j = 0; j < n; ++j) empirical[j] = static_cast<double>(counts[j]) / static_cast<double>(trials);
  const DistributionSampler resample(empirical);
  Rng rng(Rng::derive_seed(seed, trials));
  std::vector<double> replicates;
  replicates.reserve(kBootstrapReplicates);
  std::vector<std::uint64_t> boot(n);
  for (std::size_t b = 0; b < kBootstrapReplicates; ++b) {
    std::fill(boot.begin(), boot.end(), 0);
    for (std::uint64_t r = 0; r < trials; ++r) ++boot[resample.draw(rng)];
    replicates.push_back(empirical_tv(boot));
  }
  std::sort(replicates.begin(), replicates.end());
  const auto quantile = [&](double level) {
    const auto idx = static_cast<std::size_t>(level * static_cast<double>(replicates.size() - 1) + 0.5);
    return replicates[idx];
  };
  // Basic bootstrap: reflects the replicate spread about the estimate, which
  // also removes the plug-in estimator's first-order upward bias.
  est.ci_low = std::clamp(2.0 * est.estimate - quantile(0.975), 0.0, 1.0);
  est.ci_high = std::clamp(2.0 * est.estimate - quantile(0.025), 0.0, 1.0);
  return est;
}

}  // namespace conicwalk
