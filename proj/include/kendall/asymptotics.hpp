#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kendall/distribution.hpp"

namespace kendall {

// One of the two stable limit families of the rescaled walk.
class LimitLaw {
 public:
  static LimitLaw finite_moment(KendallIndex alpha, double m);
  static LimitLaw reg_var(KendallIndex alpha, double theta);

  bool is_finite_moment() const noexcept { return finite_moment_; }
  double alpha() const noexcept { return alpha_.value(); }
  double m() const noexcept { return m_; }
  double theta() const noexcept { return theta_; }

  // Decay exponent of the driving scale s(x) = c x^{-exponent}.
  double exponent() const noexcept;
  double scale() const noexcept;  // c: m for the finite-moment kind, 1 otherwise

 private:
  LimitLaw(KendallIndex alpha, bool fm, double m, double theta)
      : alpha_(alpha), finite_moment_(fm), m_(m), theta_(theta) {}
  KendallIndex alpha_;
  bool finite_moment_;
  double m_;
  double theta_;
};

// Two-term tail approximation n Fbar(x) + n(n-1)/2 H(x)^2 x^{-2 alpha}.
double tail_expansion(const StepDistribution& d, std::uint64_t n, double x);

// Which tail behaviour dominates Fbar_n at infinity.
enum class TailRegimeKind {
  RegVarDominates,      // Fbar regularly varying, theta in [0, alpha): n Fbar wins
  FiniteMomentMixed,    // finite alpha-moment: both terms, m^2 in the second
  SecondTermDominates,  // Fbar = o(x^{-2 alpha}): the H^2 term wins
};

struct TailRegime {
  TailRegimeKind kind;
  double theta;  // meaningful for RegVarDominates
};

// Classifies from family structure / metadata; generic cdfs without metadata
// are probed by fitting the log-tail slope over two decades. Throws
// ClassificationError when the probe is inconclusive.
TailRegime corollary_regime(const StepDistribution& d);

// Limit cdf (1 + s) e^{-s} with s = m x^{-alpha} or s = x^{-(alpha-theta)}.
double limit_cdf(const LimitLaw& law, double x);

// Density of the limit law (derivative of limit_cdf).
double limit_pdf(const LimitLaw& law, double x);

enum class NormingMethod {
  Auto,            // closed form when the alpha-moment is finite, else numeric
  ClosedForm,      // n^{1/alpha}
  NumericInverse,  // smallest a >= x_min with a^alpha / H(a) = n
};

// Norming sequence a_n with H(a_n)/a_n^alpha ~ 1/n. x_min < 0 requests the
// default guard (the 0.99 quantile of the step law).
double norming_sequence(const StepDistribution& d, std::uint64_t n,
                        NormingMethod method = NormingMethod::Auto, double x_min = -1.0);

struct DiagnosticRow {
  std::uint64_t n;
  double a_n;
  double sup_distance;
};

// sup over the grid of |F_n(a_n x) - limit_cdf(x)| for each requested n.
std::vector<DiagnosticRow> convergence_diagnostic(const StepDistribution& d,
                                                  std::span<const std::uint64_t> n_list,
                                                  const LimitLaw& law,
                                                  std::span<const double> grid);

}  // namespace kendall
