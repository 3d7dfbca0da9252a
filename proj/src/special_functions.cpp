#include <coning/special_functions.hpp>

#include <cmath>
#include <limits>

namespace coning::special {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 2000000;
constexpr double kTiny = 1e-300;

// Lower regularized P(a, x) by power series, valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < kMaxIter; ++k) {
        term *= x / (a + k);
        sum += term;
        if (term < sum * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized Q(a, x) by modified Lentz continued fraction, for
// x >= a + 1.
double gamma_q_contfrac(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
    if (std::isnan(a) || std::isnan(x) || a <= 0.0 || x < 0.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

double gamma_p(double a, double x) {
    if (std::isnan(a) || std::isnan(x) || a <= 0.0 || x < 0.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    const double q = gamma_q(0.5, x * x);
    if (x >= 0.0) return x == 0.0 ? 1.0 : q;
    return 2.0 - q;
}

double normal_cdf(double x) {
    return 0.5 * erfc(-x / 1.4142135623730951);
}

}  // namespace coning::special
