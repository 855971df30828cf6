#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kendall/distribution.hpp"
#include "kendall/rng.hpp"

namespace kendall {

struct SimConfig {
  StepDistribution dist;
  std::uint64_t horizon = 1;  // epoch of the recorded terminal value
  std::uint64_t paths = 1;
  std::uint64_t seed = 0;
  std::uint32_t streams = 1;
  bool record_paths = false;
  // When set, the walk starts at X_0 = *start and horizon counts transitions
  // (this is the transition-kernel law P_horizon(start, .)). Otherwise the
  // walk begins with X_1 drawn from the step law.
  std::optional<double> start;
};

// Simulated trajectories; terminal values are stored by stream offset so the
// ensemble is bit-identical for a fixed (seed, streams) regardless of the
// number of workers used.
class WalkEnsemble {
 public:
  WalkEnsemble(SimConfig cfg, std::vector<double> terminal, std::vector<double> paths);

  const SimConfig& config() const noexcept { return cfg_; }
  const std::vector<double>& terminal() const noexcept { return terminal_; }
  const std::vector<double>& sorted_terminal() const noexcept { return sorted_; }
  bool has_paths() const noexcept { return !paths_.empty(); }
  std::span<const double> path(std::uint64_t i) const;

 private:
  SimConfig cfg_;
  std::vector<double> terminal_;
  std::vector<double> sorted_;
  std::vector<double> paths_;  // row-major paths x horizon when recorded
};

// Inverse-cdf sample of pi_{2 alpha}: u^{-1/(2 alpha)}, u in (0,1).
double sample_pareto(double u, double alpha);

// One transition: M theta if xi < rho, else M, with M = max(x_prev, y) and
// rho = (min/max)^alpha (0 when M = 0). The tie xi == rho takes the M branch.
double step(double x_prev, double y, double xi, double theta, double alpha);

// One draw from the step law using the stream's uniforms (closed-form
// quantiles where available, a gamma rejection sampler for the gamma family,
// bisection on F for generic cdfs).
double sample_step_value(const StepDistribution& d, StreamRng& rng);

// The first path of the given stream.
std::vector<double> sample_path(const SimConfig& cfg, std::uint32_t stream);

// All paths, partitioned into contiguous per-stream blocks; `workers` threads
// share the streams (0 means one thread per hardware core).
WalkEnsemble sample_ensemble(const SimConfig& cfg, std::uint32_t workers = 1);

// Fraction of terminal values <= t (binary search on the sorted copy).
double empirical_cdf(const WalkEnsemble& e, double t);

}  // namespace kendall
