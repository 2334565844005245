#include "wsdbench/stats.hpp"

#include <cmath>
#include <string>

#include "wsdbench/error.hpp"

namespace wsd {

namespace {

constexpr double kCfTolerance = 1e-10;
constexpr double kCfTiny = 1e-300;
constexpr int kCfMaxIterations = 300;

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kCfTiny) d = kCfTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kCfMaxIterations; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kCfTiny) d = kCfTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kCfTiny) c = kCfTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kCfTiny) d = kCfTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kCfTiny) c = kCfTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kCfTolerance) return h;
    }
    throw Error("incomplete beta: continued fraction did not converge");
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw Error("incomplete beta: a and b must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw Error("incomplete beta: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                       b * std::log1p(-x);
    double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw Error("t distribution: df must be positive");
    if (t == 0.0) return 0.5;
    double x = df / (df + t * t);
    double tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

TTestResult one_sided_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2) {
        throw Error("t-test: both samples need at least 2 values (got " +
                    std::to_string(a.size()) + " and " + std::to_string(b.size()) + ")");
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());

    double mean_a = 0.0;
    for (double v : a) mean_a += v;
    mean_a /= na;
    double mean_b = 0.0;
    for (double v : b) mean_b += v;
    mean_b /= nb;

    double var_a = 0.0;
    for (double v : a) var_a += (v - mean_a) * (v - mean_a);
    var_a /= na - 1.0;
    double var_b = 0.0;
    for (double v : b) var_b += (v - mean_b) * (v - mean_b);
    var_b /= nb - 1.0;

    TTestResult result;
    if (var_a == 0.0 && var_b == 0.0) {
        result.t = 0.0;
        result.df = na + nb - 2.0;
        if (mean_a > mean_b) {
            result.p = 0.0;
        } else if (mean_a < mean_b) {
            result.p = 1.0;
        } else {
            result.p = 0.5;
        }
        return result;
    }

    double sa = var_a / na;
    double sb = var_b / nb;
    double se2 = sa + sb;
    result.t = (mean_a - mean_b) / std::sqrt(se2);
    result.df = se2 * se2 / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    // Upper tail computed directly to avoid cancellation in 1 - cdf.
    if (result.t == 0.0) {
        result.p = 0.5;
    } else {
        double x = result.df / (result.df + result.t * result.t);
        double tail = 0.5 * regularized_incomplete_beta(0.5 * result.df, 0.5, x);
        result.p = result.t > 0.0 ? tail : 1.0 - tail;
    }
    return result;
}

} // namespace wsd
