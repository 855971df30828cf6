#include "kendall/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "kendall/asymptotics.hpp"
#include "kendall/fdd.hpp"
#include "kendall/kernel.hpp"
#include "kendall/oracle.hpp"
#include "kendall/rng.hpp"
#include "kendall/williamson.hpp"

namespace kendall::validation {

namespace {

namespace c = constants;

struct NamedDist {
  std::string name;
  StepDistribution dist;
};

std::vector<NamedDist> named_families(double alpha) {
  KendallIndex a(alpha);
  return {
      {"dirac1", StepDistribution::dirac1(a)},
      {"pareto_mix(0.5)", StepDistribution::pareto_mix(a, 0.5)},
      {"lack_of_memory", StepDistribution::lack_of_memory(a)},
      {"stable_limit(1)", StepDistribution::stable_limit(a, 1.0)},
      {"uniform01", StepDistribution::uniform01(a)},
      {"gamma(2,1.5)", StepDistribution::gamma(a, 2.0, 1.5)},
  };
}

constexpr double kAlphas[] = {0.5, 1.0, 2.0};

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  }
  return g;
}

// Evaluation grid covering the meat of the law; points are nudged off the
// unit atom the discrete families carry.
std::vector<double> eval_grid(const StepDistribution& d, int n, bool avoid_atom = false) {
  const double q_hi = d.quantile(0.999);
  const double lo = std::max(0.02, 0.4 * d.quantile(0.01));
  const double hi = std::max(2.0 * q_hi, lo * 4.0);
  auto g = log_grid(lo, hi, n);
  if (avoid_atom) {
    for (double& t : g) {
      if (std::fabs(t - 1.0) < 1e-3) t = 1.0 + (t >= 1.0 ? 2e-3 : -2e-3);
    }
  }
  return g;
}

CaseResult make_result(std::string name, double statistic, double threshold,
                       std::uint64_t samples = 0, std::uint64_t seed = 0) {
  CaseResult r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.threshold = threshold;
  r.pass = statistic <= threshold;
  r.samples = samples;
  r.seed = seed;
  return r;
}

// ---------------------------------------------------------------- transforms

CaseResult case_monotone_bounds(const Budget&) {
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (const auto& nd : named_families(alpha)) {
      const auto grid = eval_grid(nd.dist, 120);
      double prev_f = 0.0, prev_h = 0.0;
      for (double t : grid) {
        const double f = nd.dist.cdf(t);
        const double h = nd.dist.trunc_moment(t);
        worst = std::max(worst, prev_f - f);
        worst = std::max(worst, prev_h - h);
        const double ta = std::pow(t, alpha);
        worst = std::max(worst, h - ta * f);
        worst = std::max(worst, h - ta);
        prev_f = f;
        prev_h = h;
      }
    }
  }
  return make_result("transforms/monotone_bounds", worst, c::kMonotoneScanTol);
}

CaseResult case_generic_quadrature_h(const Budget&) {
  double worst = 0.0;
  for (double alpha : {0.5, 1.0}) {
    for (const auto& nd : named_families(alpha)) {
      const auto support = nd.dist.support();
      auto wrapped = StepDistribution::generic_cdf(
          KendallIndex(alpha), [d = nd.dist](double t) { return d.cdf(t); },
          support.first, support.second, c::kGenericQuadTol);
      const auto grid = eval_grid(nd.dist, 50);
      for (double t : grid) {
        worst = std::max(worst,
                         std::fabs(wrapped.trunc_moment(t) - nd.dist.trunc_moment(t)));
      }
    }
  }
  return make_result("transforms/generic_quadrature_h", worst,
                     c::kGenericHToleranceFactor * c::kGenericQuadTol);
}

CaseResult case_alpha_moment_limit(const Budget&) {
  double worst = 0.0;
  for (double alpha : kAlphas) {
    KendallIndex a(alpha);
    const StepDistribution light[] = {
        StepDistribution::dirac1(a), StepDistribution::lack_of_memory(a),
        StepDistribution::uniform01(a), StepDistribution::gamma(a, 2.0, 1.5)};
    for (const auto& d : light) {
      const double m = d.alpha_moment();
      worst = std::max(worst, std::fabs(d.trunc_moment(1e6) / m - 1.0));
    }
  }
  return make_result("transforms/alpha_moment_limit", worst, c::kMomentLimitRelTol);
}

CaseResult case_multiplicativity(const Budget&) {
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (const auto& nd : named_families(alpha)) {
      for (std::uint64_t n : {2, 5}) {
        for (double q : {0.5, 0.9, 0.99}) {
          const double t = nd.dist.quantile(q) * 1.37 + 0.11;
          const double recovered = williamson_from_cdf(
              [&](double x) { return cdf_n(nd.dist, n, x); }, alpha, t, 1e-11);
          const double direct = std::pow(nd.dist.transform(t), static_cast<double>(n));
          worst = std::max(worst, std::fabs(recovered - direct));
        }
      }
    }
  }
  return make_result("transforms/multiplicativity", worst, c::kMultiplicativityTol);
}

CaseResult case_round_trip(const Budget&) {
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (const auto& nd : named_families(alpha)) {
      auto transform = [&](double x) { return nd.dist.transform(x); };
      for (double t : eval_grid(nd.dist, 100, /*avoid_atom=*/true)) {
        const double f = invert_to_cdf(transform, alpha, t);
        worst = std::max(worst, std::fabs(f - nd.dist.cdf(t)));
      }
    }
  }
  return make_result("transforms/round_trip", worst, c::kRoundTripTol);
}

CaseResult case_one_step_identity(const Budget&) {
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (const auto& nd : named_families(alpha)) {
      for (double t : eval_grid(nd.dist, 100)) {
        worst = std::max(worst, std::fabs(cdf_n(nd.dist, 1, t) - nd.dist.cdf(t)));
      }
    }
  }
  return make_result("transforms/one_step_identity", worst, 0.0);
}

CaseResult case_monotonicity_cdf_n(const Budget&) {
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (const auto& nd : named_families(alpha)) {
      const auto grid = eval_grid(nd.dist, 80);
      for (std::uint64_t n : {1, 2, 3, 5, 10}) {
        double prev = 0.0;
        for (double t : grid) {
          const double f = cdf_n(nd.dist, n, t);
          worst = std::max(worst, prev - f);
          prev = f;
        }
      }
      for (double t : grid) {
        if (nd.dist.transform(t) >= 1.0) continue;
        double prev = 2.0;
        for (std::uint64_t n : {1, 2, 3, 5, 10}) {
          const double f = cdf_n(nd.dist, n, t);
          worst = std::max(worst, f - prev);
          prev = f;
        }
      }
    }
  }
  return make_result("transforms/monotonicity_cdf_n", worst, c::kMonotoneScanTol);
}

CaseResult case_stable_fixed_point(const Budget&) {
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (double m : {0.5, 1.0, 2.0}) {
      const auto base = StepDistribution::stable_limit(KendallIndex(alpha), m);
      for (std::uint64_t n : {2, 5, 10}) {
        const auto scaled =
            StepDistribution::stable_limit(KendallIndex(alpha), m * static_cast<double>(n));
        for (double t : eval_grid(base, 60)) {
          worst = std::max(worst, std::fabs(cdf_n(base, n, t) - scaled.cdf(t)));
        }
      }
    }
  }
  return make_result("transforms/stable_fixed_point", worst, c::kStableFixedPointTol);
}

// ------------------------------------------------------------------- kernels

CaseResult case_kernel_matches_cdf_n(const Budget&) {
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (const auto& nd : named_families(alpha)) {
      for (std::uint64_t n = 1; n <= 10; ++n) {
        for (double t : eval_grid(nd.dist, 40)) {
          const double lhs = kernel_cdf(nd.dist, KernelQuery(0.0, n, t));
          worst = std::max(worst, std::fabs(lhs - cdf_n(nd.dist, n, t)));
        }
      }
    }
  }
  return make_result("kernels/kernel_matches_cdf_n_at_zero", worst,
                     c::kKernelMatchesCdfNTol);
}

CaseResult case_kernel_monotonicity(const Budget&) {
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (const auto& nd : named_families(alpha)) {
      const auto ts = eval_grid(nd.dist, 40);
      const auto xs = log_grid(0.01, ts.back(), 25);
      for (std::uint64_t n : {1, 2, 5}) {
        for (double t : ts) {
          double prev = 2.0;
          for (double x : xs) {
            const double v = kernel_cdf(nd.dist, KernelQuery(x, n, t));
            worst = std::max(worst, v - prev);
            prev = v;
          }
        }
        for (double x : xs) {
          double prev = 0.0;
          for (double t : ts) {
            const double v = kernel_cdf(nd.dist, KernelQuery(x, n, t));
            worst = std::max(worst, prev - v);
            prev = v;
          }
        }
      }
    }
  }
  return make_result("kernels/kernel_monotonicity", worst, c::kMonotoneScanTol);
}

CaseResult case_chapman_kolmogorov(const Budget&) {
  double worst = 0.0;
  for (double alpha : {0.5, 1.0}) {
    KendallIndex a(alpha);
    const StepDistribution dists[] = {StepDistribution::dirac1(a),
                                      StepDistribution::uniform01(a),
                                      StepDistribution::stable_limit(a, 1.0)};
    for (const auto& d : dists) {
      for (double x : {0.0, 0.45, 1.3}) {
        for (std::uint64_t n : {1, 2, 3}) {
          for (double t : {1.7, 2.6}) {
            if (x >= t) continue;
            auto one_step = [&](double w) {
              return w < t ? kernel_cdf(d, KernelQuery(w, 1, t)) : 0.0;
            };
            const double composed = oracle::kernel_stieltjes(d, x, n, t, one_step, 20000);
            const double direct = kernel_cdf(d, KernelQuery(x, n + 1, t));
            worst = std::max(worst, std::fabs(composed - direct));
          }
        }
      }
    }
  }
  return make_result("kernels/chapman_kolmogorov", worst, c::kChapmanKolmogorovTol);
}

CaseResult case_moment_scaling(const Budget&) {
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (const auto& nd : named_families(alpha)) {
      for (std::uint64_t n : {1, 3}) {
        for (double x : {0.0, 0.7}) {
          const double start_t = std::max(x * 1.01 + 0.05, nd.dist.quantile(0.99) * 1.01);
          const auto ts = log_grid(start_t, 1e6, 40);
          double first_ratio = 0.0;
          double prev_ratio = std::numeric_limits<double>::infinity();
          double prev_cdf = 0.0;
          for (double t : ts) {
            const double ratio =
                kernel_trunc_moment(nd.dist, KernelQuery(x, n, t)) / std::pow(t, alpha);
            const double cdf = kernel_cdf(nd.dist, KernelQuery(x, n, t));
            if (t == ts.front()) first_ratio = ratio;
            worst = std::max(worst, ratio - prev_ratio);  // ratio must fall
            worst = std::max(worst, prev_cdf - cdf);      // cdf must rise
            prev_ratio = ratio;
            prev_cdf = cdf;
          }
          // the truncated-moment ratio dies while the cdf saturates much
          // earlier; 1e-2 of the initial ratio is a loose ceiling
          worst = std::max(worst, prev_ratio - 1e-2 * first_ratio);
        }
      }
    }
  }
  return make_result("kernels/moment_scaling", worst, c::kMonotoneScanTol);
}

// ----------------------------------------------------------------------- fdd

FddQuery random_query(const StepDistribution& d, StreamRng& rng, std::size_t k) {
  std::vector<std::uint64_t> epochs(k);
  std::vector<double> thresholds(k);
  std::uint64_t e = 0;
  for (std::size_t j = 0; j < k; ++j) {
    e += static_cast<std::uint64_t>(rng.next_unit() * 3.0);
    if (j == 0 && e == 0) e = 1;
    epochs[j] = std::max<std::uint64_t>(e, 1);
    e = epochs[j];
  }
  const double lo = std::max(0.05, d.quantile(0.2));
  const double hi = d.quantile(0.995) * 1.5;
  for (std::size_t j = 0; j < k; ++j) {
    thresholds[j] = lo + (hi - lo) * rng.next_unit();
  }
  std::sort(thresholds.begin(), thresholds.end());
  return {std::move(epochs), std::move(thresholds)};
}

CaseResult case_enum_equals_dp(const Budget& b) {
  StreamRng rng(b.seed, 777);
  double worst = 0.0;
  for (double alpha : {0.5, 1.0}) {
    for (const auto& nd : named_families(alpha)) {
      for (int rep = 0; rep < 40; ++rep) {
        const std::size_t k = 1 + static_cast<std::size_t>(rng.next_unit() * 12.0);
        const auto q = random_query(nd.dist, rng, std::min<std::size_t>(k, 12));
        worst = std::max(worst, std::fabs(fdd_cdf_enum(nd.dist, q) - fdd_cdf_dp(nd.dist, q)));
      }
    }
  }
  return make_result("fdd/enum_equals_dp", worst, c::kEnumDpTol, 0, b.seed);
}

CaseResult case_marginalization(const Budget&) {
  double worst = 0.0;
  for (double alpha : {1.0, 2.0}) {
    for (const auto& nd : named_families(alpha)) {
      const double x1 = nd.dist.quantile(0.6);
      const double x2 = nd.dist.quantile(0.9) * 1.2;
      const FddQuery full({1, 3, 5}, {x1, x2, 1e12});
      const FddQuery prefix({1, 3}, {x1, x2});
      worst = std::max(worst, std::fabs(fdd_cdf_enum(nd.dist, full) -
                                        fdd_cdf_enum(nd.dist, prefix)));
    }
  }
  return make_result("fdd/marginalization", worst, c::kMarginalizationTol);
}

CaseResult case_k1_collapse(const Budget&) {
  double worst = 0.0;
  for (double alpha : kAlphas) {
    for (const auto& nd : named_families(alpha)) {
      for (std::uint64_t n : {1, 2, 7}) {
        for (double t : eval_grid(nd.dist, 50)) {
          const FddQuery q({n}, {t});
          worst = std::max(worst, std::fabs(fdd_cdf_enum(nd.dist, q) - cdf_n(nd.dist, n, t)));
        }
      }
    }
  }
  return make_result("fdd/k1_collapse", worst, 0.0);
}

CaseResult case_kernel_chain_oracle(const Budget&) {
  double worst = 0.0;
  KendallIndex one(1.0);
  const NamedDist dists[] = {
      {"dirac1", StepDistribution::dirac1(one)},
      {"uniform01", StepDistribution::uniform01(one)},
      {"stable_limit(1)", StepDistribution::stable_limit(one, 1.0)},
      {"lack_of_memory", StepDistribution::lack_of_memory(KendallIndex(0.5))},
  };
  for (const auto& nd : dists) {
    const double q60 = nd.dist.quantile(0.62);
    const double q90 = nd.dist.quantile(0.93);
    const double q99 = nd.dist.quantile(0.997);
    const struct {
      FddQuery q;
      double y0, x_next;
    } cases[] = {
        {FddQuery({2}, {q90 * 1.18}), 0.0, q90 * 2.3},
        {FddQuery({1, 3}, {q60 * 1.07, q90 * 1.31}), 0.21 * q60,
         std::numeric_limits<double>::infinity()},
        {FddQuery({1, 2, 3}, {q60 * 1.07, q90 * 1.21, q99 * 1.4}), 0.0,
         std::numeric_limits<double>::infinity()},
    };
    for (const auto& cse : cases) {
      const double numeric = oracle::chain_integral(nd.dist, cse.q, cse.y0, cse.x_next);
      const double closed = weighted_chain(nd.dist, cse.q, cse.y0, cse.x_next);
      worst = std::max(worst, std::fabs(numeric - closed));
      if (cse.y0 == 0.0 && !std::isfinite(cse.x_next)) {
        worst = std::max(worst, std::fabs(closed - fdd_cdf_enum(nd.dist, cse.q)));
      }
    }
  }
  return make_result("fdd/kernel_chain_oracle", worst, c::kChainOracleTol);
}

double joint_mc_sigma_units(const StepDistribution& d, std::vector<std::uint64_t> epochs,
                            std::vector<double> thresholds, const Budget& b,
                            std::uint64_t seed) {
  const FddQuery q(epochs, thresholds);
  const double p = fdd_cdf_enum(d, q);
  SimConfig cfg{d, epochs.back(), b.mc_samples, seed, b.streams, true, {}};
  const WalkEnsemble e = sample_ensemble(cfg, b.workers);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < cfg.paths; ++i) {
    const auto path = e.path(i);
    bool ok = true;
    for (std::size_t j = 0; j < epochs.size() && ok; ++j) {
      ok = path[epochs[j] - 1] <= thresholds[j];
    }
    hits += ok;
  }
  const double phat = static_cast<double>(hits) / static_cast<double>(cfg.paths);
  const double sigma =
      std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(cfg.paths));
  return std::fabs(phat - p) / sigma;
}

CaseResult case_fdd_joint_mc(const Budget& b) {
  double worst = 0.0;
  KendallIndex one(1.0);
  const StepDistribution dists[] = {StepDistribution::uniform01(one),
                                    StepDistribution::dirac1(one),
                                    StepDistribution::stable_limit(one, 1.0)};
  std::uint64_t salt = 100;
  for (const auto& d : dists) {
    const double a = d.quantile(0.55);
    const double bq = d.quantile(0.9);
    worst = std::max(worst, joint_mc_sigma_units(d, {1, 3}, {a * 1.1, bq * 1.4}, b,
                                                 b.seed + salt++));
    worst = std::max(worst, joint_mc_sigma_units(d, {1, 2, 4}, {a * 1.1, bq * 1.2, bq * 1.8},
                                                 b, b.seed + salt++));
  }
  return make_result("fdd/joint_mc_bands", worst, c::kFddJointBandSigma, b.mc_samples,
                     b.seed);
}

CaseResult case_limit_cdf_validity(const Budget&) {
  double worst = 0.0;
  const std::vector<double> times = {0.4, 1.0, 1.7};
  for (double alpha : {0.5, 1.0}) {
    for (int kind = 0; kind < 2; ++kind) {
      auto value = [&](const std::vector<double>& z) {
        return kind == 0 ? fdd_limit_finite_moment(times, z, 1.3, alpha)
                         : fdd_limit_regvar(times, z, alpha, 0.3 * alpha);
      };
      // coordinate-wise monotone within the ordering window, range [0,1]
      const std::vector<double> base = {0.8, 1.6, 2.9};
      for (int coord = 0; coord < 3; ++coord) {
        const double lo = coord == 0 ? 0.05 : base[coord - 1];
        const double hi = coord == 2 ? 1e4 : base[coord + 1];
        double prev = -1.0;
        for (double z : log_grid(lo, hi, 60)) {
          auto zv = base;
          zv[coord] = z;
          const double v = value(zv);
          if (v < -1e-15 || v > 1.0 + 1e-12) worst = std::max(worst, 1.0);
          worst = std::max(worst, prev - v);
          prev = v;
        }
      }
      worst = std::max(worst, 1.0 - value({1e10, 1e10, 1e10}) - 1e-7);
      worst = std::max(worst, value({1e-4, 1e-4, 1e-4}) - 1e-7);
    }
  }
  return make_result("fdd/limit_cdf_validity", worst, c::kMonotoneScanTol);
}

// ------------------------------------------------------------------ simulator

CaseResult case_ks_exact_law(const Budget& b) {
  double worst = 0.0;
  std::uint64_t salt = 1;
  for (double alpha : kAlphas) {
    for (const auto& nd : named_families(alpha)) {
      for (std::uint64_t n : {1, 2, 5, 10}) {
        SimConfig cfg{nd.dist, n, b.mc_samples, b.seed + salt++, b.streams, false, {}};
        const WalkEnsemble e = sample_ensemble(cfg, b.workers);
        auto cdf = [&](double t) { return cdf_n(nd.dist, n, t); };
        std::function<double(double)> cdf_left;
        if (n == 1) {
          cdf_left = [&](double t) { return nd.dist.cdf(t) - nd.dist.atom_mass(t); };
        }
        worst = std::max(worst, ks_statistic(e, cdf, cdf_left));
      }
    }
  }
  // kKsThreshold is pinned at the reference budget; the KS statistic itself
  // scales like 1/sqrt(N), so reduced budgets get the equivalent band.
  const double scale =
      b.mc_samples < c::kMcSamples
          ? std::sqrt(static_cast<double>(c::kMcSamples) / static_cast<double>(b.mc_samples))
          : 1.0;
  return make_result("simulator/ks_exact_law", worst, c::kKsThreshold * scale,
                     b.mc_samples, b.seed);
}

CaseResult case_sim_joint_mc(const Budget& b) {
  double worst = 0.0;
  KendallIndex one(1.0);
  const StepDistribution dists[] = {StepDistribution::uniform01(one),
                                    StepDistribution::dirac1(one)};
  std::uint64_t salt = 300;
  for (const auto& d : dists) {
    const double x1 = d.quantile(0.6) * 1.05;
    const double x2 = d.quantile(0.9) * 1.35;
    worst = std::max(worst, joint_mc_sigma_units(d, {1, 2}, {x1, x2}, b, b.seed + salt++));
  }
  return make_result("simulator/joint_mc", worst, c::kSimJointBandSigma, b.mc_samples,
                     b.seed);
}

CaseResult case_determinism(const Budget& b) {
  KendallIndex one(1.0);
  SimConfig cfg{StepDistribution::uniform01(one), 5, 20000, b.seed + 41, 8, true, {}};
  const WalkEnsemble e1 = sample_ensemble(cfg, 1);
  const WalkEnsemble e2 = sample_ensemble(cfg, 3);
  const WalkEnsemble e3 = sample_ensemble(cfg, 1);
  double mismatches = 0.0;
  if (e1.terminal() != e2.terminal()) mismatches += 1.0;
  if (e1.terminal() != e3.terminal()) mismatches += 1.0;
  for (std::uint64_t i = 0; i < cfg.paths; ++i) {
    const auto p1 = e1.path(i);
    const auto p2 = e2.path(i);
    if (!std::equal(p1.begin(), p1.end(), p2.begin())) {
      mismatches += 1.0;
      break;
    }
  }
  return make_result("simulator/determinism", mismatches, 0.0, cfg.paths, cfg.seed);
}

CaseResult case_step_floor(const Budget& b) {
  StreamRng rng(b.seed, 999);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = rng.next_unit() * 4.0;
    const double y = rng.next_unit() * 4.0;
    const double xi = rng.next_unit();
    const double theta = sample_pareto(rng.next_unit(), 0.5 + rng.next_unit());
    const double alpha = 0.25 + 2.0 * rng.next_unit();
    const double next = step(x, y, xi, theta, alpha);
    worst = std::max(worst, std::max(x, y) - next);
  }
  return make_result("simulator/step_floor", worst, 0.0, 100000, b.seed);
}

// ----------------------------------------------------------------- asymptotics

CaseResult case_tail_expansion_trend(const Budget&) {
  double worst = 0.0;
  KendallIndex one(1.0);
  const StepDistribution dists[] = {
      StepDistribution::uniform01(one), StepDistribution::gamma(one, 2.0, 1.5),
      StepDistribution::stable_limit(one, 1.0),
      StepDistribution::lack_of_memory(KendallIndex(0.5))};
  for (const auto& d : dists) {
    for (std::uint64_t n : {2, 3, 5}) {
      double prev_gap = std::numeric_limits<double>::infinity();
      for (double x : {10.0, 100.0, 1000.0, 10000.0}) {
        const double gap = std::fabs(tail_n(d, n, x) / tail_expansion(d, n, x) - 1.0);
        worst = std::max(worst, gap - prev_gap);
        prev_gap = gap;
      }
      worst = std::max(worst, prev_gap - 1e-3);  // essentially exact by x = 1e4
    }
  }
  return make_result("asymptotics/tail_expansion_trend", worst, 1e-9);
}

CaseResult case_limit_cdf_valid(const Budget&) {
  double worst = 0.0;
  const auto grid = log_grid(1e-3, 1e6, 1000);
  for (double alpha : kAlphas) {
    KendallIndex a(alpha);
    const LimitLaw laws[] = {LimitLaw::finite_moment(a, 0.5), LimitLaw::finite_moment(a, 2.0),
                             LimitLaw::reg_var(a, 0.0), LimitLaw::reg_var(a, 0.5 * alpha)};
    for (const auto& law : laws) {
      double prev = -1.0;
      for (double x : grid) {
        const double f = limit_cdf(law, x);
        worst = std::max(worst, prev - f);
        prev = f;
      }
      worst = std::max(worst, limit_cdf(law, grid.front()) - 1e-8);
      worst = std::max(worst, 1.0 - limit_cdf(law, grid.back()) - 1e-3);
    }
  }
  return make_result("asymptotics/limit_cdf_valid", worst, c::kLimitGridTol);
}

CaseResult case_norming_residual(const Budget&) {
  double worst = 0.0;
  const struct {
    double alpha, p;
  } configs[] = {{1.0, 0.5}, {2.0, 0.8}, {0.75, 0.25}};
  for (const auto& cfg : configs) {
    const auto d = StepDistribution::pareto_mix(KendallIndex(cfg.alpha), cfg.p);
    for (std::uint64_t n : {1000, 10000, 100000, 1000000}) {
      const double a_n = norming_sequence(d, n, NormingMethod::NumericInverse);
      const double residual = std::fabs(static_cast<double>(n) * d.trunc_moment(a_n) /
                                            std::pow(a_n, cfg.alpha) -
                                        1.0);
      worst = std::max(worst, residual);
    }
  }
  return make_result("asymptotics/norming_residual", worst, c::kNormingResidualTol);
}

CaseResult case_convergence_consistency(const Budget&) {
  double worst = 0.0;
  const std::uint64_t ns[] = {100, 1000, 10000};
  const auto grid = log_grid(0.05, 50.0, 200);
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (const auto& nd : named_families(alpha)) {
      if (!nd.dist.finite_alpha_moment()) continue;
      const auto law = LimitLaw::finite_moment(KendallIndex(alpha), nd.dist.alpha_moment());
      const auto rows = convergence_diagnostic(nd.dist, ns, law, grid);
      for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].sup_distance < 1e-13 && rows[i - 1].sup_distance < 1e-13) continue;
        worst = std::max(worst,
                         rows[i].sup_distance / std::max(rows[i - 1].sup_distance, 1e-300) -
                             c::kDiagnosticSlack);
      }
      worst = std::max(worst, rows.back().sup_distance - 0.011);
    }
  }
  return make_result("asymptotics/convergence_consistency", worst, 0.0);
}

// ---------------------------------------------------------------- registry

struct CaseDef {
  const char* suite;
  const char* name;
  CaseResult (*run)(const Budget&);
};

const CaseDef kRegistry[] = {
    {"transforms", "transforms/monotone_bounds", case_monotone_bounds},
    {"transforms", "transforms/generic_quadrature_h", case_generic_quadrature_h},
    {"transforms", "transforms/alpha_moment_limit", case_alpha_moment_limit},
    {"transforms", "transforms/multiplicativity", case_multiplicativity},
    {"transforms", "transforms/round_trip", case_round_trip},
    {"transforms", "transforms/one_step_identity", case_one_step_identity},
    {"transforms", "transforms/monotonicity_cdf_n", case_monotonicity_cdf_n},
    {"transforms", "transforms/stable_fixed_point", case_stable_fixed_point},
    {"kernels", "kernels/kernel_matches_cdf_n_at_zero", case_kernel_matches_cdf_n},
    {"kernels", "kernels/kernel_monotonicity", case_kernel_monotonicity},
    {"kernels", "kernels/chapman_kolmogorov", case_chapman_kolmogorov},
    {"kernels", "kernels/moment_scaling", case_moment_scaling},
    {"fdd", "fdd/enum_equals_dp", case_enum_equals_dp},
    {"fdd", "fdd/marginalization", case_marginalization},
    {"fdd", "fdd/k1_collapse", case_k1_collapse},
    {"fdd", "fdd/kernel_chain_oracle", case_kernel_chain_oracle},
    {"fdd", "fdd/joint_mc_bands", case_fdd_joint_mc},
    {"fdd", "fdd/limit_cdf_validity", case_limit_cdf_validity},
    {"simulator", "simulator/ks_exact_law", case_ks_exact_law},
    {"simulator", "simulator/joint_mc", case_sim_joint_mc},
    {"simulator", "simulator/determinism", case_determinism},
    {"simulator", "simulator/step_floor", case_step_floor},
    {"asymptotics", "asymptotics/tail_expansion_trend", case_tail_expansion_trend},
    {"asymptotics", "asymptotics/limit_cdf_valid", case_limit_cdf_valid},
    {"asymptotics", "asymptotics/norming_residual", case_norming_residual},
    {"asymptotics", "asymptotics/convergence_consistency", case_convergence_consistency},
};

void check_registry_against_manifest() {
  const auto& manifest = suite_manifest();
  std::map<std::string, std::vector<std::string>> registered;
  for (const auto& def : kRegistry) {
    registered[def.suite].push_back(def.name);
  }
  if (registered != manifest) {
    throw std::logic_error("validation registry does not match the suite manifest");
  }
}

}  // namespace

double ks_statistic(const WalkEnsemble& e, const std::function<double(double)>& cdf,
                    const std::function<double(double)>& cdf_left) {
  const auto& xs = e.sorted_terminal();
  if (xs.size() < 100) {
    throw std::invalid_argument("ks_statistic: need at least 100 samples");
  }
  const double n = static_cast<double>(xs.size());
  double dmax = 0.0;
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double f = cdf(xs[i]);
    const double f_left = cdf_left ? cdf_left(xs[i]) : f;
    dmax = std::max(dmax, static_cast<double>(j) / n - f);
    dmax = std::max(dmax, f_left - static_cast<double>(i) / n);
    i = j;
  }
  return dmax;
}

std::vector<std::string> suite_names() {
  return {"transforms", "kernels", "fdd", "simulator", "asymptotics"};
}

const std::map<std::string, std::vector<std::string>>& suite_manifest() {
  static const std::map<std::string, std::vector<std::string>> manifest = {
      {"transforms",
       {"transforms/monotone_bounds", "transforms/generic_quadrature_h",
        "transforms/alpha_moment_limit", "transforms/multiplicativity",
        "transforms/round_trip", "transforms/one_step_identity",
        "transforms/monotonicity_cdf_n", "transforms/stable_fixed_point"}},
      {"kernels",
       {"kernels/kernel_matches_cdf_n_at_zero", "kernels/kernel_monotonicity",
        "kernels/chapman_kolmogorov", "kernels/moment_scaling"}},
      {"fdd",
       {"fdd/enum_equals_dp", "fdd/marginalization", "fdd/k1_collapse",
        "fdd/kernel_chain_oracle", "fdd/joint_mc_bands", "fdd/limit_cdf_validity"}},
      {"simulator",
       {"simulator/ks_exact_law", "simulator/joint_mc", "simulator/determinism",
        "simulator/step_floor"}},
      {"asymptotics",
       {"asymptotics/tail_expansion_trend", "asymptotics/limit_cdf_valid",
        "asymptotics/norming_residual", "asymptotics/convergence_consistency"}},
  };
  return manifest;
}

Report run_suite(const std::string& suite, const Budget& budget) {
  check_registry_against_manifest();
  const auto names = suite_names();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
    throw std::invalid_argument("unknown validation suite: " + suite);
  }
  Report report;
  report.suite = suite;
  report.seed = budget.seed;
  report.mc_samples = budget.mc_samples;
  report.overall_pass = true;
  for (const auto& def : kRegistry) {
    if (suite != "all" && suite != def.suite) continue;
    CaseResult r = def.run(budget);
    report.overall_pass = report.overall_pass && r.pass;
    report.cases.push_back(std::move(r));
  }
  return report;
}

}  // namespace kendall::validation
