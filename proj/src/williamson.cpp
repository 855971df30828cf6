#include "kendall/williamson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kendall/errors.hpp"

namespace kendall {

double psi(double alpha, double x, double t) {
  if (!(t > 0.0)) throw std::domain_error("psi: t must be positive");
  if (x < 0.0) throw std::domain_error("psi: x must be nonnegative");
  if (x >= t) return 0.0;
  return 1.0 - std::pow(x / t, alpha);
}

double williamson_g(const StepDistribution& d, double t) {
  return d.transform(t);
}

double invert_to_cdf(const std::function<double(double)>& transform, double alpha, double t) {
  if (!(t > 0.0)) throw std::domain_error("invert_to_cdf: t must be positive");
  const double h = std::max(1e-6 * t, 1e-9);
  const double lo = std::max(t - h, 0.0);
  const double hi = t + h;
  const double deriv = (transform(hi) - transform(lo)) / (hi - lo);
  const double f = transform(t) + t / alpha * deriv;
  constexpr double tol = 1e-8;
  if (f < -tol || f > 1.0 + tol) {
    throw InversionError("invert_to_cdf: recovered value escapes [0,1]; "
                         "input is not a Williamson transform");
  }
  return std::clamp(f, 0.0, 1.0);
}

double cdf_n(const StepDistribution& d, std::uint64_t n, double t) {
  if (n == 0) throw std::invalid_argument("cdf_n: n must be >= 1");
  if (t < 0.0 || std::isnan(t)) return 0.0;
  if (n == 1) return d.cdf(t);  // F = G + t^{-alpha} H, taken exactly
  if (t == 0.0) return std::pow(d.cdf(0.0), static_cast<double>(n));
  const double nn = static_cast<double>(n);
  const double g = d.transform(t);
  const double h_term = nn * d.trunc_moment(t) * std::pow(t, -d.alpha());
  return std::pow(g, nn) + h_term * std::pow(g, nn - 1.0);
}

double tail_n(const StepDistribution& d, std::uint64_t n, double t) {
  if (n == 0) throw std::invalid_argument("tail_n: n must be >= 1");
  if (t < 0.0 || std::isnan(t)) return 1.0;
  if (n == 1) return d.tail(t);
  if (t == 0.0) return 1.0 - std::pow(d.cdf(0.0), static_cast<double>(n));

  const double nn = static_cast<double>(n);
  const double u = d.trunc_moment(t) * std::pow(t, -d.alpha());
  const double fbar = d.tail(t);
  const double g = fbar + u;  // 1 - G(t)

  if (g * nn >= 0.5) {
    const double gt = d.transform(t);
    const double fn = std::pow(gt, nn - 1.0) * (gt + nn * u);
    return std::clamp(1.0 - fn, 0.0, 1.0);
  }

  // F_n = F^n + sum_{k>=1} (-1)^k c_k u^k F^{n-k} with
  // c_k = C(n-1,k) - (n-1) C(n-1,k-1); c_1 = 0, so the complement
  // 1 - F^n - sum(...) has no cancelling O(u) pair and every piece is
  // evaluated through expm1/log1p.
  const double log_f = std::log1p(-fbar);
  double result = -std::expm1(nn * log_f);  // 1 - F^n
  double binom_u = 1.0;                     // C(n-1,k-1) u^{k-1}
  for (std::uint64_t k = 2; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    binom_u *= u * (nn - (kk - 1.0)) / (kk - 1.0);  // -> C(n-1,k-1) u^{k-1}
    const double ck_uk = binom_u * u * (nn - kk) / kk - (nn - 1.0) * u * binom_u;
    const double term = (k % 2 == 0 ? -1.0 : 1.0) * ck_uk * std::exp((nn - kk) * log_f);
    result += term;
    if (std::fabs(term) < 1e-18 * std::fabs(result) && k > 2) break;
    if (k > 400) break;
  }
  return std::clamp(result, 0.0, 1.0);
}

}  // namespace kendall
