#pragma once

#include <cstdint>
#include <functional>

#include "kendall/distribution.hpp"
#include "kendall/fdd.hpp"

namespace kendall::oracle {

// Numerical Stieltjes integral of f over (0, upper] against the n-step
// transition law P_n(start, .). The atom the kernel carries at the start
// point (and, for single steps, at a unit atom of the step law) is split off
// exactly; the continuous remainder is integrated by the midpoint rule on
// `cells` uniform cells of cdf mass.
double kernel_stieltjes(const StepDistribution& d, double start, std::uint64_t n,
                        double upper, const std::function<double(double)>& f, int cells);

// Nested numerical counterpart of the weighted chain integral: integrates
// Psi(y_k / x_next) through the chain of transition kernels prescribed by the
// query, starting from y0. Continuation functions are tabulated on `grid`
// nodes per level and interpolated linearly.
double chain_integral(const StepDistribution& d, const FddQuery& q, double y0,
                      double x_next, int cells = 2000, int grid = 2000);

}  // namespace kendall::oracle
