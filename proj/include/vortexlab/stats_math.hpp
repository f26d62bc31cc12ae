#ifndef VORTEXLAB_STATS_MATH_HPP
#define VORTEXLAB_STATS_MATH_HPP

#include <cstddef>
#include <functional>
#include <span>

namespace vortexlab {

/// Digamma function, accurate to ~1e-12 for x > 0.
double digamma(double x);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
double gamma_q(double a, double x);

/// Survival function of the chi-square law with `dof` degrees of freedom.
double chi2_sf(double x, double dof);

/// Standard normal survival function P(N > x).
double normal_sf(double x);

/// Kolmogorov distribution survival function P(K > lambda).
double kolmogorov_sf(double lambda);

/// One-sample Kolmogorov-Smirnov statistic and asymptotic p-value of
/// `sorted_u` (ascending, already mapped through the null CDF) vs uniform.
struct KsResult {
    double statistic;
    double p_value;
};
KsResult ks_uniform(std::span<const double> sorted_u);

/// KS test of raw samples against a continuous CDF.
KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Sample mean, unbiased variance, and standard error of the mean.
struct MeanSe {
    double mean = 0.0;
    double var = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};
MeanSe mean_se(std::span<const double> xs);

/// Ordinary least squares y ~ intercept + slope * x with residual-based
/// standard error of the slope.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

} // namespace vortexlab

#endif
