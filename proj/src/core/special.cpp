#include "core/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"

namespace rancova {

namespace {

// Continued fraction for I_x(a,b) (modified Lentz). Converges quickly when
// x < (a+1)/(a+b+2); the caller applies the symmetry reduction.
double beta_continued_fraction(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;

  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;

  for (int m = 1; m <= 500; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    fail(errc::invalid_argument, "incomplete-beta",
         "shape parameters must be positive and finite (a=" + std::to_string(a) +
             ", b=" + std::to_string(b) + ")");
  }
  if (!(x >= 0.0) || !(x <= 1.0)) {
    fail(errc::invalid_argument, "incomplete-beta",
         "x must lie in [0,1] (x=" + std::to_string(x) + ")");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(x, a, b) / a;
  }
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) {
    fail(errc::invalid_argument, "student-t", "degrees of freedom must be positive");
  }
  if (!std::isfinite(t)) return 0.0;
  if (t == 0.0) return 1.0;
  return regularized_incomplete_beta(df / (df + t * t), 0.5 * df, 0.5);
}

double student_t_two_sided_quantile(double p_two_sided, double df) {
  if (!(df > 0.0)) {
    fail(errc::invalid_argument, "student-t", "degrees of freedom must be positive");
  }
  if (!(p_two_sided > 0.0) || !(p_two_sided < 1.0)) {
    fail(errc::invalid_argument, "student-t", "two-sided probability must lie in (0,1)");
  }

  // P(|T| >= t) is strictly decreasing in t; bracket then bisect.
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_two_sided_p(hi, df) > p_two_sided) {
    hi *= 2.0;
    if (hi > 1e12) break;
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_two_sided_p(mid, df) > p_two_sided) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace rancova
