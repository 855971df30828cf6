#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kendall/distribution.hpp"

namespace kendall {

// Joint-cdf query: epochs n_1 <= ... <= n_k (positive) paired with
// thresholds x_1 <= ... <= x_k (positive). Non-monotone inputs are rejected
// at construction; the closed form is only proved for ordered rectangles.
class FddQuery {
 public:
  FddQuery(std::vector<std::uint64_t> epochs, std::vector<double> thresholds);

  std::size_t size() const noexcept { return epochs_.size(); }
  std::span<const std::uint64_t> epochs() const noexcept { return epochs_; }
  std::span<const double> thresholds() const noexcept { return thresholds_; }

 private:
  std::vector<std::uint64_t> epochs_;
  std::vector<double> thresholds_;
};

// Enumeration guard: the direct sum walks 2^k epsilon vectors.
inline constexpr std::size_t kFddEnumMaxDims = 24;

// P(X_{n_1} <= x_1, ..., X_{n_k} <= x_k) as the sum over epsilon in {0,1}^k
// of Psi-chain weights times per-epoch G/H factors. Terms are accumulated by
// pairwise summation over a tree fixed by k. Throws std::length_error for
// k > kFddEnumMaxDims (use fdd_cdf_dp instead).
double fdd_cdf_enum(const StepDistribution& d, const FddQuery& q);

// Same value through an O(k^2) dynamic program over the position of the
// last epsilon = 1.
double fdd_cdf_dp(const StepDistribution& d, const FddQuery& q);

// Weighted kernel-chain integral: the nested integral of Psi(y_k / x_next)
// against the transition-kernel chain started at y_0, in closed form. With
// y_0 = 0 and x_next = +inf this reduces to fdd_cdf_enum.
double weighted_chain(const StepDistribution& d, const FddQuery& q, double y0,
                      double x_next);

// Query for the rescaled process Z_n(t) = a_n^{-1} X_[n t].
struct ScaledFddQuery {
  std::vector<double> times;   // 0 <= t_1 <= ... <= t_k
  std::vector<double> levels;  // 0 < z_1 <= ... <= z_k
  std::uint64_t scale = 1;     // n
  double norming = 1.0;        // a_n
};

// P(Z_n(t_1) <= z_1, ...) at finite n: epochs [n t_j], thresholds a_n z_j;
// epochs that floor to zero drop out with their trivially satisfied levels.
double fdd_zn(const StepDistribution& d, const ScaledFddQuery& sq);

// Limiting fdd when the alpha-moment m is finite (a_n = n^{1/alpha}).
double fdd_limit_finite_moment(std::span<const double> times, std::span<const double> levels,
                               double m, double alpha);

// Limiting fdd for a regularly varying step tail with index theta - alpha,
// 0 <= theta < alpha.
double fdd_limit_regvar(std::span<const double> times, std::span<const double> levels,
                        double alpha, double theta);

}  // namespace kendall
