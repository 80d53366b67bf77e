#pragma once

// Seeded simulation of the class-level walk and of the classical coupling:
// two copies, one started at a fixed class and one at stationarity, move
// independently until they meet and together afterwards.

#include <cstdint>
#include <random>
#include <vector>

#include "conicwalk/walk_analysis.hpp"

namespace conicwalk {

/// std::mt19937_64 with a portable uniform draw. Per-trial streams are
/// seeded with derive_seed(seed, trial), the SplitMix64 finalizer applied to
/// seed + (trial + 1) * 0x9E3779B97F4A7C15.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

 private:
  std::mt19937_64 engine_;
};

/// Inverse-CDF sampling over each kernel row in canonical order.
class TransitionSampler {
 public:
  explicit TransitionSampler(const Kernel& k);

  std::size_t size() const noexcept { return n_; }
  std::size_t next(std::size_t from, Rng& rng) const;

 private:
  std::size_t n_;
  std::vector<double> cdf_;
};

/// Inverse-CDF sampling from one distribution.
class DistributionSampler {
 public:
  explicit DistributionSampler(const Distribution& d);
  std::size_t draw(Rng& rng) const;

 private:
  std::vector<double> cdf_;
};

struct WalkState {
  ClassIndex current;
  std::uint64_t steps = 0;
  Rng rng;
};

/// Advances the walk by one step and returns the new class.
ClassIndex sample_step(WalkState& state, const TransitionSampler& sampler, const ClassScheme& scheme);
ClassIndex sample_step(WalkState& state, const Kernel& k);

inline constexpr std::uint64_t kCouplingStepLimit = 1'000'000;

/// Coalescence time of the coupling started from class i and a pi-draw.
/// Throws Timeout past kCouplingStepLimit steps.
std::uint64_t coupled_run(const ClassIndex& i, const Kernel& k, const Distribution& pi,
                          std::uint64_t seed);

struct CouplingStats {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string start;
  std::vector<std::uint64_t> times;
  /// tail[t] = fraction of trials with T > t, for t = 0..max T.
  std::vector<double> tail;

  double mean_time() const;
  /// Fraction with T > t; zero beyond the recorded range.
  double tail_at(std::size_t t) const { return t < tail.size() ? tail[t] : 0.0; }
};

/// `trials` independent coupled runs, trial r seeded with derive_seed(seed, r).
CouplingStats run_coupling(const ClassIndex& i, const Kernel& k, const Distribution& pi,
                           std::uint64_t trials, std::uint64_t seed);

/// Per-step class histograms of both coupled copies for t = 0..horizon.
struct CoupledHistograms {
  std::vector<std::vector<std::uint64_t>> first;
  std::vector<std::vector<std::uint64_t>> second;
};

CoupledHistograms coupled_histograms(const ClassIndex& i, const Kernel& k, const Distribution& pi,
                                     std::uint64_t trials, std::uint64_t seed, std::size_t horizon);

struct TvEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t trials = 0;
};

inline constexpr std::size_t kBootstrapReplicates = 400;

/// TV between the empirical law of X_t (X_0 = i) over `trials` runs and pi,
/// with a 95% basic-bootstrap interval. Throws InvalidArgument below 1000 trials.
TvEstimate monte_carlo_tv(const ClassIndex& i, std::size_t t, std::uint64_t trials,
                          std::uint64_t seed, const Kernel& k, const Distribution& pi);

}  // namespace conicwalk
