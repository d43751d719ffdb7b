#ifndef PENSION_DISTRIBUTIONS_HPP
#define PENSION_DISTRIBUTIONS_HPP

namespace pension {

// Tail probabilities used by the regression diagnostics. Accuracy is
// ~1e-12 relative over the ranges the tests exercise.

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double regularized_beta(double a, double b, double x);

double chi_squared_sf(double x, double df);

double f_sf(double f, double df1, double df2);

// Upper tail of Student's t: P(T >= t).
double student_t_sf(double t, double df);

double normal_cdf(double z);
double normal_sf(double z);

// Inverse standard normal CDF (Acklam's rational approximation polished
// with one Halley step); p in (0, 1).
double normal_quantile(double p);

}  // namespace pension

#endif
