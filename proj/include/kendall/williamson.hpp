#pragma once

#include <cstdint>
#include <functional>

#include "kendall/distribution.hpp"
#include "kendall/quadrature.hpp"

namespace kendall {

// Psi(x/t) = (1 - (x/t)^alpha)_+ for t > 0, x >= 0.
double psi(double alpha, double x, double t);

// Williamson transform G(t) of the step law; closed form per family,
// quadrature for generic cdfs; G(0) = 0 by continuity.
double williamson_g(const StepDistribution& d, double t);

// Transform of an arbitrary cdf through the integral representation
// G(t) = alpha t^{-alpha} int_0^t x^{alpha-1} F(x) dx (substituted so the
// integrand stays bounded for alpha < 1).
template <class F>
double williamson_from_cdf(F&& cdf, double alpha, double t, double abs_tol = 1e-10) {
  if (!(t > 0.0)) return 0.0;
  const double upper = std::pow(t, alpha);
  auto integrand = [&](double s) { return cdf(std::pow(s, 1.0 / alpha)); };
  return integrate_adaptive(integrand, 0.0, upper, abs_tol) / upper;
}

// Recover F(t) = G(t) + (t/alpha) G'(t). The derivative uses the analytic
// step h = max(1e-6 t, 1e-9) central difference; results are clamped to
// [0,1] within 1e-8 and anything further out raises InversionError.
double invert_to_cdf(const std::function<double(double)>& transform, double alpha, double t);

// n-step cdf F_n(t) = G(t)^{n-1} [ n t^{-alpha} H(t) + G(t) ]; the n = 1
// value coincides with cdf(d, t) exactly.
double cdf_n(const StepDistribution& d, std::uint64_t n, double t);

// 1 - F_n(t), switching to an exact expansion in (1 - F, H t^{-alpha}) when
// the direct product would cancel catastrophically.
double tail_n(const StepDistribution& d, std::uint64_t n, double t);

}  // namespace kendall
