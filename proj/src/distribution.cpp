#include "kendall/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kendall/quadrature.hpp"
#include "kendall/special_functions.hpp"

namespace kendall {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
  return v;
}

// Cdf feature locations mapped into the substituted coordinate s = x^alpha.
std::vector<double> substituted_features(const GenericBackend& g, double alpha,
                                         double upper) {
  std::vector<double> cuts;
  cuts.reserve(g.feature_points.size());
  for (double x : g.feature_points) {
    if (!(x > 0.0) || !std::isfinite(x)) continue;
    const double s = std::pow(x, alpha);
    if (s > 0.0 && s < upper) cuts.push_back(s);
  }
  return cuts;
}

// H(t) via the parts identity H(t) = t^a F(t) - a * int_0^t x^{a-1} F(x) dx.
// The substitution x = s^{1/a} removes the endpoint singularity for a < 1 and
// turns the integrand into the nonnegative F(t) - F(s^{1/a}).
double generic_trunc_moment(const GenericBackend& g, double alpha, double t) {
  if (!(t > 0.0)) return 0.0;
  const double ft = std::clamp(g.cdf(t), 0.0, 1.0);
  const double upper = std::pow(t, alpha);
  auto integrand = [&](double s) {
    const double fx = std::clamp(g.cdf(std::pow(s, 1.0 / alpha)), 0.0, 1.0);
    return std::max(0.0, ft - fx);
  };
  const auto cuts = substituted_features(g, alpha, upper);
  return integrate_adaptive(integrand, 0.0, upper, g.quad_tol, 100000, cuts);
}

double generic_transform(const GenericBackend& g, double alpha, double t) {
  if (!(t > 0.0)) return 0.0;
  const double upper = std::pow(t, alpha);
  auto integrand = [&](double s) {
    return std::clamp(g.cdf(std::pow(s, 1.0 / alpha)), 0.0, 1.0);
  };
  const auto cuts = substituted_features(g, alpha, upper);
  return integrate_adaptive(integrand, 0.0, upper, g.quad_tol, 100000, cuts) / upper;
}

double generic_alpha_moment(const GenericBackend& g, double alpha) {
  if (std::isfinite(g.support_hi)) {
    return generic_trunc_moment(g, alpha, g.support_hi * (1.0 + 1e-9) + 1e-12);
  }
  const double h5 = generic_trunc_moment(g, alpha, 1e5);
  const double h6 = generic_trunc_moment(g, alpha, 1e6);
  if (h5 > 0.0 && h6 / h5 > g.divergence_ratio) return kInf;
  return h6;
}

// Solve (1 + s) e^{-s} = u for s > 0 (strictly decreasing left side).
double stable_scale_from_u(double u) {
  double lo = 0.0;
  double hi = 2.0;
  while ((1.0 + hi) * std::exp(-hi) > u && hi < 800.0) hi *= 2.0;
  double s = std::clamp(u < 0.2 ? -std::log(u) + std::log1p(-std::log(u))
                                : std::sqrt(std::max(2.0 * (1.0 - u), 1e-300)),
                        1e-12, hi);
  for (int i = 0; i < 80; ++i) {
    const double es = std::exp(-s);
    const double f = (1.0 + s) * es - u;
    if (f > 0.0) {
      lo = s;
    } else {
      hi = s;
    }
    const double deriv = -s * es;
    double next = (deriv != 0.0) ? s - f / deriv : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - s) <= 1e-15 * std::max(1.0, s)) {
      s = next;
      break;
    }
    s = next;
  }
  return s;
}

double table_cdf(const std::vector<double>& xs, const std::vector<double>& fs, double t) {
  if (t < xs.front()) return 0.0;
  if (t >= xs.back()) return fs.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double x0 = xs[i - 1], x1 = xs[i];
  const double f0 = fs[i - 1], f1 = fs[i];
  return f0 + (f1 - f0) * (t - x0) / (x1 - x0);
}

}  // namespace

KendallIndex::KendallIndex(double alpha) : alpha_(require_positive(alpha, "alpha")) {}

StepDistribution StepDistribution::dirac1(KendallIndex alpha) {
  return {alpha, family::Dirac1{}};
}

StepDistribution StepDistribution::pareto_mix(KendallIndex alpha, double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("pareto_mix: p must lie in (0,1]");
  }
  return {alpha, family::ParetoMix{p}};
}

StepDistribution StepDistribution::lack_of_memory(KendallIndex alpha) {
  return {alpha, family::LackOfMemory{}};
}

StepDistribution StepDistribution::stable_limit(KendallIndex alpha, double m) {
  require_positive(m, "stable_limit parameter m");
  return {alpha, family::StableLimit{m}};
}

StepDistribution StepDistribution::uniform01(KendallIndex alpha) {
  return {alpha, family::Uniform01{}};
}

StepDistribution StepDistribution::gamma(KendallIndex alpha, double a, double b) {
  require_positive(a, "gamma shape a");
  require_positive(b, "gamma rate b");
  return {alpha, family::Gamma{a, b}};
}

StepDistribution StepDistribution::generic_cdf(KendallIndex alpha,
                                               std::function<double(double)> cdf,
                                               double support_lo, double support_hi,
                                               double quad_tol,
                                               std::optional<RegVarTail> tail_meta) {
  if (!cdf) throw std::invalid_argument("generic_cdf: cdf callable required");
  if (!(support_hi >= support_lo)) {
    throw std::invalid_argument("generic_cdf: support_hi must be >= support_lo");
  }
  if (support_lo < 0.0) throw std::invalid_argument("generic_cdf: support must be in [0,inf)");
  require_positive(quad_tol, "quad_tol");
  if (tail_meta && !(tail_meta->theta >= 0.0 && tail_meta->theta < alpha.value())) {
    throw std::invalid_argument("generic_cdf: tail index theta must lie in [0, alpha)");
  }

  // Monotonicity probe; a decreasing sample is a construction error.
  const double probe_hi =
      std::isfinite(support_hi) ? support_hi : std::max(1.0, support_lo) * 1e6;
  double prev = -kInf;
  for (int i = 0; i <= 128; ++i) {
    const double x = support_lo + (probe_hi - support_lo) * i / 128.0;
    const double fx = cdf(x);
    if (fx < prev - 1e-12) {
      throw std::invalid_argument("generic_cdf: cdf sample is not nondecreasing");
    }
    prev = fx;
  }

  auto backend = std::make_shared<GenericBackend>();
  backend->cdf = std::move(cdf);
  backend->support_lo = support_lo;
  backend->support_hi = support_hi;
  backend->quad_tol = quad_tol;
  backend->tail_meta = tail_meta;
  backend->cached_moment = generic_alpha_moment(*backend, alpha.value());
  return {alpha, GenericPtr(std::move(backend))};
}

StepDistribution StepDistribution::from_table(KendallIndex alpha, std::vector<double> xs,
                                              std::vector<double> fs, double quad_tol) {
  if (xs.size() != fs.size() || xs.size() < 2) {
    throw std::invalid_argument("from_table: need two equal-length columns, size >= 2");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && !(xs[i] > xs[i - 1])) {
      throw std::invalid_argument("from_table: x column must be strictly increasing");
    }
    fs[i] = std::clamp(fs[i], 0.0, 1.0);
    if (i > 0 && fs[i] < fs[i - 1] - 1e-12) {
      throw std::invalid_argument("from_table: cdf column must be nondecreasing");
    }
    if (i > 0) fs[i] = std::max(fs[i], fs[i - 1]);
  }
  if (xs.front() < 0.0) throw std::invalid_argument("from_table: support must be in [0,inf)");
  const double lo = xs.front();
  const double hi = xs.back();
  auto table = [xs = std::move(xs), fs = std::move(fs)](double t) {
    return table_cdf(xs, fs, t);
  };
  return generic_cdf(alpha, std::move(table), lo, hi, quad_tol);
}

double StepDistribution::cdf(double t) const {
  if (t < 0.0 || std::isnan(t)) return 0.0;
  const double a = alpha();
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::Dirac1>) {
          return t >= 1.0 ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, family::ParetoMix>) {
          if (t < 1.0) return 0.0;
          return 1.0 - (1.0 - fam.p) * std::pow(t, -fam.p);
        } else if constexpr (std::is_same_v<T, family::LackOfMemory>) {
          return t < 1.0 ? std::pow(t, a) : 1.0;
        } else if constexpr (std::is_same_v<T, family::StableLimit>) {
          if (t <= 0.0) return 0.0;
          const double s = fam.m * std::pow(t, -a);
          return (1.0 + s) * std::exp(-s);
        } else if constexpr (std::is_same_v<T, family::Uniform01>) {
          return std::min(t, 1.0);
        } else if constexpr (std::is_same_v<T, family::Gamma>) {
          return reg_lower_gamma(fam.a, fam.b * t);
        } else {
          return std::clamp(fam->cdf(t), 0.0, 1.0);
        }
      },
      spec_);
}

double StepDistribution::tail(double t) const {
  if (t < 0.0 || std::isnan(t)) return 1.0;
  const double a = alpha();
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::Dirac1>) {
          return t >= 1.0 ? 0.0 : 1.0;
        } else if constexpr (std::is_same_v<T, family::ParetoMix>) {
          if (t < 1.0) return 1.0;
          return (1.0 - fam.p) * std::pow(t, -fam.p);
        } else if constexpr (std::is_same_v<T, family::LackOfMemory>) {
          return t < 1.0 ? -std::expm1(a * std::log(t)) : 0.0;
        } else if constexpr (std::is_same_v<T, family::StableLimit>) {
          if (t <= 0.0) return 1.0;
          const double s = fam.m * std::pow(t, -a);
          if (s < 1e-3) {
            // 1 - (1+s)e^{-s} = sum_{k>=2} (-1)^k (k-1)/k! s^k
            double term = s * s / 2.0;
            double sum = term;
            for (double k = 2.0; k < 40.0; k += 1.0) {
              term *= -s * k / ((k + 1.0) * (k - 1.0));
              sum += term;
              if (std::fabs(term) < 1e-18 * sum) break;
            }
            return sum;
          }
          return -std::expm1(-s) - s * std::exp(-s);
        } else if constexpr (std::is_same_v<T, family::Uniform01>) {
          return t < 1.0 ? 1.0 - t : 0.0;
        } else if constexpr (std::is_same_v<T, family::Gamma>) {
          return reg_upper_gamma(fam.a, fam.b * t);
        } else {
          return 1.0 - std::clamp(fam->cdf(t), 0.0, 1.0);
        }
      },
      spec_);
}

double StepDistribution::trunc_moment(double t) const {
  if (t <= 0.0 || std::isnan(t)) return 0.0;
  const double a = alpha();
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::Dirac1>) {
          return t >= 1.0 ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, family::ParetoMix>) {
          if (t < 1.0) return 0.0;
          const double p = fam.p;
          if (p == a) return p + p * (1.0 - p) * std::log(t);
          return p * (a - 1.0) / (a - p) + p * (1.0 - p) / (a - p) * std::pow(t, a - p);
        } else if constexpr (std::is_same_v<T, family::LackOfMemory>) {
          return t < 1.0 ? 0.5 * std::pow(t, 2.0 * a) : 0.5;
        } else if constexpr (std::is_same_v<T, family::StableLimit>) {
          return fam.m * std::exp(-fam.m * std::pow(t, -a));
        } else if constexpr (std::is_same_v<T, family::Uniform01>) {
          const double w = std::min(t, 1.0);
          return std::pow(w, a + 1.0) / (a + 1.0);
        } else if constexpr (std::is_same_v<T, family::Gamma>) {
          const double c =
              std::exp(std::lgamma(fam.a + a) - std::lgamma(fam.a) - a * std::log(fam.b));
          return c * reg_lower_gamma(fam.a + a, fam.b * t);
        } else {
          return generic_trunc_moment(*fam, a, t);
        }
      },
      spec_);
}

double StepDistribution::alpha_moment() const {
  const double a = alpha();
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::Dirac1>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, family::ParetoMix>) {
          // The Pareto component integrates y^alpha against p y^{-p-1}; that
          // converges only for p > alpha (log-divergent at p == alpha).
          if (fam.p <= a) return kInf;
          return fam.p + (1.0 - fam.p) * fam.p / (fam.p - a);
        } else if constexpr (std::is_same_v<T, family::LackOfMemory>) {
          return 0.5;
        } else if constexpr (std::is_same_v<T, family::StableLimit>) {
          return fam.m;
        } else if constexpr (std::is_same_v<T, family::Uniform01>) {
          return 1.0 / (a + 1.0);
        } else if constexpr (std::is_same_v<T, family::Gamma>) {
          return std::exp(std::lgamma(fam.a + a) - std::lgamma(fam.a) - a * std::log(fam.b));
        } else {
          return fam->cached_moment;
        }
      },
      spec_);
}

double StepDistribution::transform(double t) const {
  if (t <= 0.0 || std::isnan(t)) return 0.0;
  const double a = alpha();
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::Dirac1>) {
          return std::max(0.0, 1.0 - std::pow(t, -a));
        } else if constexpr (std::is_same_v<T, family::ParetoMix>) {
          if (t <= 1.0) return 0.0;
          const double p = fam.p;
          if (p == a) {
            return 1.0 - std::pow(t, -p) * (1.0 + p * (1.0 - p) * std::log(t));
          }
          return 1.0 - a * (1.0 - p) / (a - p) * std::pow(t, -p) +
                 p * (1.0 - a) / (a - p) * std::pow(t, -a);
        } else if constexpr (std::is_same_v<T, family::LackOfMemory>) {
          return t < 1.0 ? 0.5 * std::pow(t, a) : 1.0 - 0.5 * std::pow(t, -a);
        } else if constexpr (std::is_same_v<T, family::StableLimit>) {
          return std::exp(-fam.m * std::pow(t, -a));
        } else if constexpr (std::is_same_v<T, family::Uniform01>) {
          if (t < 1.0) return t * a / (a + 1.0);
          return 1.0 - std::pow(t, -a) / (a + 1.0);
        } else if constexpr (std::is_same_v<T, family::Gamma>) {
          const double c =
              std::exp(std::lgamma(fam.a + a) - std::lgamma(fam.a) - a * std::log(fam.b));
          return reg_lower_gamma(fam.a, fam.b * t) -
                 std::pow(t, -a) * c * reg_lower_gamma(fam.a + a, fam.b * t);
        } else {
          return generic_transform(*fam, a, t);
        }
      },
      spec_);
}

double StepDistribution::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("quantile: u must lie in (0,1)");
  }
  const double a = alpha();
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::Dirac1>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, family::ParetoMix>) {
          if (u <= fam.p) return 1.0;
          return std::pow((1.0 - fam.p) / (1.0 - u), 1.0 / fam.p);
        } else if constexpr (std::is_same_v<T, family::LackOfMemory>) {
          return std::pow(u, 1.0 / a);
        } else if constexpr (std::is_same_v<T, family::StableLimit>) {
          const double s = stable_scale_from_u(u);
          return std::pow(fam.m / s, 1.0 / a);
        } else if constexpr (std::is_same_v<T, family::Uniform01>) {
          return u;
        } else if constexpr (std::is_same_v<T, family::Gamma>) {
          return inv_reg_lower_gamma(fam.a, u) / fam.b;
        } else {
          // Left-most quantile by bisection on the cdf.
          double lo = fam->support_lo;
          if (std::clamp(fam->cdf(lo), 0.0, 1.0) >= u) return lo;
          double hi = fam->support_hi;
          if (!std::isfinite(hi)) {
            hi = std::max(1.0, lo);
            while (std::clamp(fam->cdf(hi), 0.0, 1.0) < u && hi < 1e300) hi *= 2.0;
          }
          for (int i = 0; i < 200 && (hi - lo) > 1e-12 * std::max(1.0, hi); ++i) {
            const double mid = 0.5 * (lo + hi);
            (std::clamp(fam->cdf(mid), 0.0, 1.0) >= u ? hi : lo) = mid;
          }
          return hi;
        }
      },
      spec_);
}

double StepDistribution::atom_mass(double x) const {
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::Dirac1>) {
          return x == 1.0 ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, family::ParetoMix>) {
          return x == 1.0 ? fam.p : 0.0;
        } else {
          return 0.0;
        }
      },
      spec_);
}

std::pair<double, double> StepDistribution::support() const {
  return std::visit(
      [&](const auto& fam) -> std::pair<double, double> {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::Dirac1>) {
          return {1.0, 1.0};
        } else if constexpr (std::is_same_v<T, family::ParetoMix>) {
          return {1.0, kInf};
        } else if constexpr (std::is_same_v<T, family::LackOfMemory>) {
          return {0.0, 1.0};
        } else if constexpr (std::is_same_v<T, family::StableLimit>) {
          return {0.0, kInf};
        } else if constexpr (std::is_same_v<T, family::Uniform01>) {
          return {0.0, 1.0};
        } else if constexpr (std::is_same_v<T, family::Gamma>) {
          return {0.0, kInf};
        } else {
          return {fam->support_lo, fam->support_hi};
        }
      },
      spec_);
}

std::optional<RegVarTail> StepDistribution::reg_var_tail() const {
  const double a = alpha();
  return std::visit(
      [&](const auto& fam) -> std::optional<RegVarTail> {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, family::ParetoMix>) {
          // Survival (1-p) t^{-p}: regularly varying with theta = alpha - p,
          // meaningful while p <= alpha (degenerate for p == 1, no tail).
          if (fam.p < 1.0 && fam.p <= a) return RegVarTail{a - fam.p};
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, GenericPtr>) {
          return fam->tail_meta;
        } else {
          return std::nullopt;
        }
      },
      spec_);
}

bool StepDistribution::finite_alpha_moment() const {
  return std::isfinite(alpha_moment());
}

}  // namespace kendall
