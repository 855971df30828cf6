#pragma once

namespace kendall {

// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a).
// Power series for x < a+1, continued fraction otherwise; absolute error
// below 1e-12 over the parameter ranges used here.
double reg_lower_gamma(double a, double x);

// Regularized upper incomplete gamma Q(a,x) = 1 - P(a,x), computed on the
// branch that avoids cancellation.
double reg_upper_gamma(double a, double x);

// Smallest x with P(a,x) = p, p in [0,1).
double inv_reg_lower_gamma(double a, double p);

// Density of the Gamma law with shape a and rate b.
double gamma_pdf(double a, double b, double x);

// Inverse standard normal cdf.
double inv_normal_cdf(double p);

}  // namespace kendall
