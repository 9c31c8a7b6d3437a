#pragma once

namespace rancova {

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation with the usual symmetry reduction. Absolute error <= 1e-12 over
// the parameter ranges used here (a, b up to a few hundred).
// Throws anc_error(invalid_argument) outside x in [0,1], a > 0, b > 0.
double regularized_incomplete_beta(double x, double a, double b);

// Two-sided tail probability P(|T_df| >= |t|) of Student's t distribution.
double student_t_two_sided_p(double t, double df);

// Positive critical value t with P(|T_df| >= t) == p_two_sided.
double student_t_two_sided_quantile(double p_two_sided, double df);

}  // namespace rancova
