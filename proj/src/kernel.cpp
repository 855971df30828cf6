#include "kendall/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "kendall/williamson.hpp"

namespace kendall {

PointConvolution point_mass_convolution(double x, double y, double alpha) {
  if (x < 0.0 || y < 0.0) {
    throw std::domain_error("point_mass_convolution: x, y must be nonnegative");
  }
  const double big = std::max(x, y);
  const double small = std::min(x, y);
  if (big == 0.0) return {0.0, 1.0, 0.0};  // degenerate mass at 0
  const double wp = std::pow(small / big, alpha);
  return {big, 1.0 - wp, wp};
}

double delta_conv_cdf(double x, double y, double alpha, double t) {
  if (!(t > 0.0)) throw std::domain_error("delta_conv_cdf: t must be positive");
  if (x < 0.0 || y < 0.0) {
    throw std::domain_error("delta_conv_cdf: x, y must be nonnegative");
  }
  if (x >= t || y >= t) return 0.0;
  return 1.0 - std::pow(x, alpha) * std::pow(y, alpha) * std::pow(t, -2.0 * alpha);
}

KernelQuery::KernelQuery(double x, std::uint64_t n, double t)
    : start(x), steps(n), threshold(t) {
  if (x < 0.0) throw std::invalid_argument("KernelQuery: start must be nonnegative");
  if (n < 1) throw std::invalid_argument("KernelQuery: steps must be >= 1");
  if (!(t > 0.0)) throw std::invalid_argument("KernelQuery: threshold must be positive");
}

double kernel_cdf(const StepDistribution& d, const KernelQuery& q) {
  if (q.start >= q.threshold) return 0.0;
  const double t = q.threshold;
  const double nn = static_cast<double>(q.steps);
  const double g = d.transform(t);
  const double h = d.trunc_moment(t);
  const double gpow1 = std::pow(g, nn - 1.0);
  return gpow1 * g + nn * std::pow(t, -d.alpha()) * h * gpow1 * psi(d.alpha(), q.start, t);
}

double kernel_trunc_moment(const StepDistribution& d, const KernelQuery& q) {
  if (q.start >= q.threshold) return 0.0;
  const double t = q.threshold;
  const double nn = static_cast<double>(q.steps);
  const double g = d.transform(t);
  const double h = d.trunc_moment(t);
  const double gpow1 = std::pow(g, nn - 1.0);
  return std::pow(q.start, d.alpha()) * gpow1 * g +
         nn * gpow1 * h * psi(d.alpha(), q.start, t);
}

}  // namespace kendall
