#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace kendall {

// Convolution parameter alpha > 0; immutable.
class KendallIndex {
 public:
  explicit KendallIndex(double alpha);
  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

// Marks a survival function that is regularly varying with parameter
// theta - alpha, where 0 <= theta < alpha.
struct RegVarTail {
  double theta;
};

namespace family {
struct Dirac1 {};
struct ParetoMix {
  double p;  // atom weight at 1; the Pareto component has tail exponent p
};
struct LackOfMemory {};
struct StableLimit {
  double m;  // alpha-moment of the fixed-point law
};
struct Uniform01 {};
struct Gamma {
  double a, b;  // shape, rate
};
}  // namespace family

// Quadrature-backed distribution defined by a user cdf.
struct GenericBackend {
  std::function<double(double)> cdf;
  double support_lo = 0.0;
  double support_hi = 0.0;  // +inf allowed
  double quad_tol = 1e-10;
  std::optional<RegVarTail> tail_meta;
  double divergence_ratio = 1.01;  // H(1e6)/H(1e5) above this means infinite moment
  double cached_moment = 0.0;      // filled at construction
  // Locations where the cdf jumps or kinks (support endpoints, table knots);
  // the quadrature backend places mandatory cuts there.
  std::vector<double> feature_points;
};

using GenericPtr = std::shared_ptr<const GenericBackend>;
using FamilySpec =
    std::variant<family::Dirac1, family::ParetoMix, family::LackOfMemory,
                 family::StableLimit, family::Uniform01, family::Gamma, GenericPtr>;

// A unit-step law on [0,inf) exposing the three scalar characteristics that
// every walk formula consumes: the cdf F, the truncated alpha-moment H, and
// the alpha-moment. Values are immutable and freely shareable across threads.
class StepDistribution {
 public:
  static StepDistribution dirac1(KendallIndex alpha);
  static StepDistribution pareto_mix(KendallIndex alpha, double p);
  static StepDistribution lack_of_memory(KendallIndex alpha);
  static StepDistribution stable_limit(KendallIndex alpha, double m);
  static StepDistribution uniform01(KendallIndex alpha);
  static StepDistribution gamma(KendallIndex alpha, double a, double b);
  static StepDistribution generic_cdf(KendallIndex alpha, std::function<double(double)> cdf,
                                      double support_lo, double support_hi,
                                      double quad_tol = 1e-10,
                                      std::optional<RegVarTail> tail_meta = {});
  // Two-column table (x strictly increasing, F clamped to [0,1]) with linear
  // interpolation between knots.
  static StepDistribution from_table(KendallIndex alpha, std::vector<double> xs,
                                     std::vector<double> fs, double quad_tol = 1e-10);

  double alpha() const noexcept { return alpha_.value(); }
  const FamilySpec& spec() const noexcept { return spec_; }

  // F(t); 0 for t < 0.
  double cdf(double t) const;
  // 1 - F(t) on the branch that avoids cancellation in deep tails.
  double tail(double t) const;
  // H(t) = int_0^t y^alpha dF(y).
  double trunc_moment(double t) const;
  // m = H(inf); +inf when the alpha-moment diverges.
  double alpha_moment() const;
  // Williamson transform G(t) = F(t) - t^{-alpha} H(t); G(0) = 0.
  double transform(double t) const;
  // Left-most quantile, u in (0,1).
  double quantile(double u) const;

  // Point mass of the step law at exactly x (families here can only carry
  // an atom at 1).
  double atom_mass(double x) const;
  // Support hint [lo, hi]; hi may be +inf.
  std::pair<double, double> support() const;
  std::optional<RegVarTail> reg_var_tail() const;
  bool finite_alpha_moment() const;

 private:
  StepDistribution(KendallIndex alpha, FamilySpec spec)
      : alpha_(alpha), spec_(std::move(spec)) {}

  KendallIndex alpha_;
  FamilySpec spec_;
};

}  // namespace kendall
