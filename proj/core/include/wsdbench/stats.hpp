#pragma once

#include <vector>

namespace wsd {

/// Regularized incomplete beta I_x(a, b), a > 0, b > 0, x in [0, 1].
/// Continued-fraction evaluation (modified Lentz) to relative tolerance 1e-10.
double regularized_incomplete_beta(double a, double b, double x);

/// P(T <= t) for Student's t with df degrees of freedom (df > 0, may be
/// fractional).
double student_t_cdf(double t, double df);

struct TTestResult {
    double t = 0.0;
    double df = 0.0;
    double p = 0.0;
};

/// Welch's unequal-variance t-test of H1: mean(a) > mean(b); p is the
/// one-sided upper tail. Both samples need at least two values. When both
/// sample variances are zero the statistic degenerates: p is 0.5 for equal
/// means and 0 or 1 by the sign of the difference otherwise.
TTestResult one_sided_t_test(const std::vector<double>& a, const std::vector<double>& b);

} // namespace wsd
