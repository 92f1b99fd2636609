#pragma once

// Tail probabilities used by the test statistics. Standard series /
// continued-fraction evaluations of the incomplete gamma and beta
// functions; accurate to ~1e-14 over the ranges the toolkit touches.

namespace svarkit::prob {

double gamma_p(double a, double x);  // regularized lower incomplete gamma
double gamma_q(double a, double x);  // regularized upper incomplete gamma
double inc_beta(double a, double b, double x);  // regularized I_x(a, b)

double chi2_sf(double x, double df);                // P(X > x)
double student_t_sf(double t, double df);           // P(T > t)
double student_t_two_sided(double t, double df);    // 2 P(T > |t|)
double fisher_f_sf(double f, double df1, double df2);
double normal_cdf(double z);
double normal_sf(double z);
double normal_two_sided(double z);

}  // namespace svarkit::prob
