#include "kendall/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace kendall {

namespace {

void validate(const SimConfig& cfg) {
  if (cfg.horizon < 1) throw std::invalid_argument("SimConfig: horizon must be >= 1");
  if (cfg.paths < 1) throw std::invalid_argument("SimConfig: paths must be >= 1");
  if (cfg.streams < 1) throw std::invalid_argument("SimConfig: streams must be >= 1");
  if (cfg.start && *cfg.start < 0.0) {
    throw std::invalid_argument("SimConfig: start must be nonnegative");
  }
}

double sample_normal(StreamRng& rng) {
  const double u1 = rng.next_unit();
  const double u2 = rng.next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Marsaglia-Tsang for shape >= 1; shapes below 1 boost through a+1.
double sample_gamma_rate1(double shape, StreamRng& rng) {
  if (shape < 1.0) {
    const double u = rng.next_unit();
    return sample_gamma_rate1(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = sample_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_unit();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// One full trajectory; when out != nullptr it receives `horizon` values
// (epochs 1..horizon, or the states after 1..horizon transitions from a
// fixed start). Returns the terminal value.
double generate_path(const SimConfig& cfg, StreamRng& rng, double* out) {
  const double alpha = cfg.dist.alpha();
  double x;
  std::uint64_t produced = 0;
  if (cfg.start) {
    x = *cfg.start;
  } else {
    x = sample_step_value(cfg.dist, rng);
    if (out) out[produced] = x;
    ++produced;
  }
  while (produced < cfg.horizon) {
    const double y = sample_step_value(cfg.dist, rng);
    const double xi = rng.next_unit();
    const double theta = sample_pareto(rng.next_unit(), alpha);
    x = step(x, y, xi, theta, alpha);
    if (out) out[produced] = x;
    ++produced;
  }
  return x;
}

}  // namespace

WalkEnsemble::WalkEnsemble(SimConfig cfg, std::vector<double> terminal,
                           std::vector<double> paths)
    : cfg_(std::move(cfg)),
      terminal_(std::move(terminal)),
      sorted_(terminal_),
      paths_(std::move(paths)) {
  std::sort(sorted_.begin(), sorted_.end());
}

std::span<const double> WalkEnsemble::path(std::uint64_t i) const {
  if (!has_paths() || i >= cfg_.paths) {
    throw std::out_of_range("WalkEnsemble::path: index out of range");
  }
  return {paths_.data() + i * cfg_.horizon, cfg_.horizon};
}

double sample_pareto(double u, double alpha) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("sample_pareto: u must lie in (0,1)");
  }
  return std::pow(u, -1.0 / (2.0 * alpha));
}

double step(double x_prev, double y, double xi, double theta, double alpha) {
  const double big = std::max(x_prev, y);
  const double small = std::min(x_prev, y);
  const double rho = big > 0.0 ? std::pow(small / big, alpha) : 0.0;
  return xi < rho ? big * theta : big;
}

double sample_step_value(const StepDistribution& d, StreamRng& rng) {
  if (const auto* g = std::get_if<family::Gamma>(&d.spec())) {
    return sample_gamma_rate1(g->a, rng) / g->b;
  }
  return d.quantile(rng.next_unit());
}

std::vector<double> sample_path(const SimConfig& cfg, std::uint32_t stream) {
  validate(cfg);
  if (stream >= cfg.streams) {
    throw std::invalid_argument("sample_path: stream index out of range");
  }
  StreamRng rng(cfg.seed, stream);
  std::vector<double> out(cfg.horizon);
  generate_path(cfg, rng, out.data());
  return out;
}

WalkEnsemble sample_ensemble(const SimConfig& cfg, std::uint32_t workers) {
  validate(cfg);
  const std::uint64_t block = (cfg.paths + cfg.streams - 1) / cfg.streams;
  std::vector<double> terminal(cfg.paths);
  std::vector<double> paths(cfg.record_paths ? cfg.paths * cfg.horizon : 0);

  auto run_stream = [&](std::uint32_t s) {
    const std::uint64_t lo = s * block;
    const std::uint64_t hi = std::min<std::uint64_t>(cfg.paths, lo + block);
    if (lo >= hi) return;
    StreamRng rng(cfg.seed, s);
    for (std::uint64_t i = lo; i < hi; ++i) {
      double* out = cfg.record_paths ? paths.data() + i * cfg.horizon : nullptr;
      terminal[i] = generate_path(cfg, rng, out);
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::uint32_t>(workers, cfg.streams);
  if (workers <= 1) {
    for (std::uint32_t s = 0; s < cfg.streams; ++s) run_stream(s);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint32_t s = w; s < cfg.streams; s += workers) run_stream(s);
      });
    }
    for (auto& th : pool) th.join();
  }
  return WalkEnsemble(cfg, std::move(terminal), std::move(paths));
}

double empirical_cdf(const WalkEnsemble& e, double t) {
  const auto& v = e.sorted_terminal();
  const auto it = std::upper_bound(v.begin(), v.end(), t);
  return static_cast<double>(it - v.begin()) / static_cast<double>(v.size());
}

}  // namespace kendall
