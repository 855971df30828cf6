#pragma once

#include <cstdint>

#include "kendall/distribution.hpp"

namespace kendall {

// Kendall convolution of two point masses: the mass splits between an atom
// at M = max(x,y) and the rescaled Pareto component T_M pi_{2 alpha}.
struct PointConvolution {
  double location_max;   // M
  double weight_atom;    // 1 - rho^alpha
  double weight_pareto;  // rho^alpha, rho = min/max (0 when M = 0)
};

PointConvolution point_mass_convolution(double x, double y, double alpha);

// (delta_x conv delta_y)((0,t]) = (1 - x^a y^a / t^{2a}) 1{x<t, y<t}.
double delta_conv_cdf(double x, double y, double alpha, double t);

// Walk transition query: n steps from start x, threshold t.
struct KernelQuery {
  double start;
  std::uint64_t steps;
  double threshold;

  KernelQuery(double x, std::uint64_t n, double t);
};

// P_n(x, (0,t]) = [ G^n + n t^{-a} H G^{n-1} Psi(x/t) ] 1{x < t}.
double kernel_cdf(const StepDistribution& d, const KernelQuery& q);

// int_0^t w^a P_n(x,dw) = [ x^a G^n + n G^{n-1} H Psi(x/t) ] 1{x < t}.
double kernel_trunc_moment(const StepDistribution& d, const KernelQuery& q);

}  // namespace kendall
