#include "vortexlab/stats_math.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace vortexlab {

double digamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma: x must be > 0");
    double result = 0.0;
    while (x < 6.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // Asymptotic expansion for large arguments.
    const double inv = 1.0 / x, inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
    return result;
}

namespace {

// Series representation of the lower regularized gamma P(a, x).
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for the upper regularized gamma Q(a, x).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_q: invalid arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi2_sf(double x, double dof) {
    if (x <= 0.0) return 1.0;
    return gamma_q(0.5 * dof, 0.5 * x);
}

double normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double kolmogorov_sf(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * double(j) * double(j) * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_uniform(std::span<const double> sorted_u) {
    const std::size_t n = sorted_u.size();
    if (n < 2) throw std::invalid_argument("ks_uniform: need >= 2 samples");
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = sorted_u[i];
        d = std::max(d, std::max(double(i + 1) / double(n) - u, u - double(i) / double(n)));
    }
    const double sn = std::sqrt(double(n));
    // Stephens' small-sample correction.
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    return {d, kolmogorov_sf(lambda)};
}

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf) {
    std::vector<double> u(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) u[i] = cdf(samples[i]);
    std::sort(u.begin(), u.end());
    return ks_uniform(u);
}

MeanSe mean_se(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n == 0) return {};
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / double(n);
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double var = n > 1 ? ss / double(n - 1) : 0.0;
    return {mean, var, std::sqrt(var / double(n)), n};
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 3) throw std::invalid_argument("fit_line: need >= 3 matched points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= double(n);
    my /= double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - intercept - slope * x[i];
        rss += r * r;
    }
    const double se = std::sqrt(rss / double(n - 2) / sxx);
    return {slope, intercept, se};
}

} // namespace vortexlab
