#include "kendall/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kendall/errors.hpp"
#include "kendall/williamson.hpp"

namespace kendall {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LimitLaw LimitLaw::finite_moment(KendallIndex alpha, double m) {
  if (!(m > 0.0)) throw std::invalid_argument("LimitLaw: m must be positive");
  return {alpha, true, m, 0.0};
}

LimitLaw LimitLaw::reg_var(KendallIndex alpha, double theta) {
  if (!(theta >= 0.0 && theta < alpha.value())) {
    throw std::invalid_argument("LimitLaw: theta must lie in [0, alpha)");
  }
  return {alpha, false, 1.0, theta};
}

double LimitLaw::exponent() const noexcept {
  return finite_moment_ ? alpha_.value() : alpha_.value() - theta_;
}

double LimitLaw::scale() const noexcept { return finite_moment_ ? m_ : 1.0; }

double tail_expansion(const StepDistribution& d, std::uint64_t n, double x) {
  if (!(x > 0.0)) throw std::domain_error("tail_expansion: x must be positive");
  const double nn = static_cast<double>(n);
  const double h = d.trunc_moment(x);
  return nn * d.tail(x) +
         0.5 * nn * (nn - 1.0) * h * h * std::pow(x, -2.0 * d.alpha());
}

TailRegime corollary_regime(const StepDistribution& d) {
  const double a = d.alpha();
  if (const auto* pm = std::get_if<family::ParetoMix>(&d.spec())) {
    if (pm->p == 1.0) return {TailRegimeKind::SecondTermDominates, 0.0};  // pure atom
    if (pm->p <= a) return {TailRegimeKind::RegVarDominates, a - pm->p};
    if (pm->p > 2.0 * a) return {TailRegimeKind::SecondTermDominates, 0.0};
    return {TailRegimeKind::FiniteMomentMixed, 0.0};
  }
  if (std::holds_alternative<family::Dirac1>(d.spec()) ||
      std::holds_alternative<family::LackOfMemory>(d.spec()) ||
      std::holds_alternative<family::Uniform01>(d.spec()) ||
      std::holds_alternative<family::Gamma>(d.spec())) {
    // Bounded support or exponential tail: Fbar = o(x^{-2 alpha}).
    return {TailRegimeKind::SecondTermDominates, 0.0};
  }
  if (std::holds_alternative<family::StableLimit>(d.spec())) {
    // Fbar ~ (m^2/2) x^{-2 alpha}: finite moment, both terms survive.
    return {TailRegimeKind::FiniteMomentMixed, 0.0};
  }

  if (auto meta = d.reg_var_tail()) {
    return {TailRegimeKind::RegVarDominates, meta->theta};
  }

  // Numeric probe: slope of log Fbar against log x over two decades past the
  // bulk of the mass.
  const double x0 = std::max(1.0, d.quantile(0.99));
  const double x_hi = 100.0 * x0;
  if (d.tail(x_hi) <= 0.0) return {TailRegimeKind::SecondTermDominates, 0.0};
  auto slope = [&](double lo, double hi) {
    return (std::log(d.tail(hi)) - std::log(d.tail(lo))) / (std::log(hi) - std::log(lo));
  };
  const double s1 = slope(x0, 10.0 * x0);
  const double s2 = slope(10.0 * x0, x_hi);
  if (std::fabs(s1 - s2) > 0.05) {
    if (s2 < -2.0 * a - 0.05) return {TailRegimeKind::SecondTermDominates, 0.0};
    throw ClassificationError("corollary_regime: log-tail slope did not stabilize");
  }
  const double beta = 0.5 * (s1 + s2);  // Fbar ~ x^beta, beta = theta - alpha
  if (beta >= -a - 0.05 && beta < 0.0) {
    const double theta = std::clamp(a + beta, 0.0, std::nexttoward(a, 0.0));
    return {TailRegimeKind::RegVarDominates, theta};
  }
  if (beta < -2.0 * a - 0.05) return {TailRegimeKind::SecondTermDominates, 0.0};
  return {TailRegimeKind::FiniteMomentMixed, 0.0};
}

double limit_cdf(const LimitLaw& law, double x) {
  if (x <= 0.0) return 0.0;
  const double s = law.scale() * std::pow(x, -law.exponent());
  return (1.0 + s) * std::exp(-s);
}

double limit_pdf(const LimitLaw& law, double x) {
  if (x <= 0.0) return 0.0;
  const double beta = law.exponent();
  const double c = law.scale();
  const double s = c * std::pow(x, -beta);
  return beta * c * s * std::pow(x, -beta - 1.0) * std::exp(-s);
}

double norming_sequence(const StepDistribution& d, std::uint64_t n, NormingMethod method,
                        double x_min) {
  if (n < 1) throw std::invalid_argument("norming_sequence: n must be >= 1");
  const double a = d.alpha();
  if (method == NormingMethod::Auto) {
    method = d.finite_alpha_moment() ? NormingMethod::ClosedForm : NormingMethod::NumericInverse;
  }
  if (method == NormingMethod::ClosedForm) {
    if (!d.finite_alpha_moment()) {
      throw std::invalid_argument(
          "norming_sequence: closed form n^{1/alpha} needs a finite alpha-moment");
    }
    return std::pow(static_cast<double>(n), 1.0 / a);
  }

  // Numeric inverse of W(x) = x^alpha / H(x). W may wobble near the origin,
  // so the search starts at the 0.99 quantile (or the caller's x_min) and
  // returns the smallest crossing beyond it.
  if (x_min < 0.0) x_min = d.quantile(0.99);
  x_min = std::max(x_min, 1e-300);
  const double target = static_cast<double>(n);
  auto w = [&](double x) {
    const double h = d.trunc_moment(x);
    return h > 0.0 ? std::pow(x, a) / h : kInf;
  };
  double lo = x_min;
  if (w(lo) >= target) return lo;  // already past the crossing at the guard
  double hi = std::max(lo, std::pow(target, 1.0 / a));
  while (w(hi) < target) {
    hi *= 2.0;
    if (hi > 1e30) {
      throw NumericError("norming_sequence: no sign change up to 1e30", w(hi / 2.0));
    }
  }
  // First geometric window with a crossing, then bisection.
  double wlo = lo;
  while (wlo * 2.0 < hi && w(wlo * 2.0) < target) wlo *= 2.0;
  double whi = std::min(hi, wlo * 2.0);
  for (int i = 0; i < 200 && (whi - wlo) > 1e-10 * whi; ++i) {
    const double mid = 0.5 * (wlo + whi);
    (w(mid) < target ? wlo : whi) = mid;
  }
  return 0.5 * (wlo + whi);
}

std::vector<DiagnosticRow> convergence_diagnostic(const StepDistribution& d,
                                                  std::span<const std::uint64_t> n_list,
                                                  const LimitLaw& law,
                                                  std::span<const double> grid) {
  std::vector<DiagnosticRow> rows;
  rows.reserve(n_list.size());
  for (std::uint64_t n : n_list) {
    const double a_n = law.is_finite_moment()
                           ? std::pow(static_cast<double>(n), 1.0 / law.alpha())
                           : norming_sequence(d, n, NormingMethod::NumericInverse);
    double sup = 0.0;
    for (double x : grid) {
      if (!(x > 0.0)) continue;
      sup = std::max(sup, std::fabs(cdf_n(d, n, a_n * x) - limit_cdf(law, x)));
    }
    rows.push_back({n, a_n, sup});
  }
  return rows;
}

}  // namespace kendall
