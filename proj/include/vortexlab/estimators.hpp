#ifndef VORTEXLAB_ESTIMATORS_HPP
#define VORTEXLAB_ESTIMATORS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vortexlab/vec2.hpp"

namespace vortexlab {

/// N points in R^d, row-major, with seed lineage for anything stochastic
/// done to them downstream.
struct SampleCloud {
    std::vector<double> points; // n * d
    std::size_t n = 0;
    std::size_t d = 0;
    std::uint64_t seed = 0;

    const double* row(std::size_t i) const { return points.data() + i * d; }
    static SampleCloud from_vec2(std::span<const Vec2> pts, std::uint64_t seed = 0);
    /// Concatenate per-replica R^2 blocks into rows of dimension 2*blocks.
    static SampleCloud from_vec2_columns(std::span<const std::span<const Vec2>> cols,
                                         std::uint64_t seed = 0);
    void validate() const;
};

/// Output of an estimator: point estimate with uncertainty, and for test
/// methods the statistic / p-value pair.
struct StatReport {
    double estimate = 0.0;
    double std_error = 0.0;
    double statistic = 0.0;
    double p_value = -1.0; // in [0,1] for tests, -1 when not a test
    std::size_t n_samples = 0;
    std::string method;
    std::uint64_t seed = 0;

    bool is_test() const { return p_value >= 0.0; }
};

/// Estimate of H(cloud || N(mean, cov_scale I)): exact Gaussian cross-entropy
/// minus a Kozachenko-Leonenko k-nearest-neighbour entropy estimate.
/// std_error from splitting the sample into 10 folds.
StatReport relative_entropy_vs_gaussian(const SampleCloud& cloud,
                                        std::span<const double> mean,
                                        double cov_scale, int k);

/// Empirical W_alpha between equal-size clouds via optimal assignment on
/// |x - y|^alpha costs. Exact; intended for N <= 2000.
double wasserstein_exact(const SampleCloud& a, const SampleCloud& b, double alpha);

/// Average over seeded random unit directions of the 1D W_alpha between the
/// projected samples. Trend surrogate for larger N.
double sliced_wasserstein(const SampleCloud& a, const SampleCloud& b, double alpha,
                          int n_projections, std::uint64_t seed);

/// Two-sample energy-distance test with a seeded permutation p-value.
StatReport energy_distance_test(const SampleCloud& a, const SampleCloud& b,
                                int n_permutations, std::uint64_t seed,
                                unsigned threads = 0);

/// Centre and scale both clouds by the pooled per-coordinate moments (one
/// affine map applied to both samples, so equality in law is preserved and
/// permutation tests stay exact). Evens out coordinates of very different
/// magnitudes before a distance-based test.
void standardize_pooled(SampleCloud& a, SampleCloud& b);

/// Both Mardia statistics and their asymptotic p-values.
struct MardiaStats {
    double b1 = 0.0;        // multivariate skewness
    double b2 = 0.0;        // multivariate kurtosis
    double skew_stat = 0.0; // N b1 / 6, chi-square
    double skew_p = 1.0;
    double kurt_z = 0.0; // normalized kurtosis, standard normal
    double kurt_p = 1.0;
    double combined_p = 1.0; // Bonferroni
};
MardiaStats mardia_stats(const SampleCloud& cloud);

/// Mardia skewness/kurtosis normality test; p_value is the Bonferroni
/// combination, estimate/std_error report the kurtosis against its null.
StatReport mardia_normality(const SampleCloud& cloud);

/// Least-squares decay rate of ln(values) against times; estimate is the
/// rate (minus the slope), p_value the two-sided trend significance.
StatReport fit_exponential_rate(std::span<const double> times,
                                std::span<const double> values);

/// Histogram total-variation proxy between two planar clouds (Scott's-rule
/// bins over the pooled sample). Trend diagnostic only.
double histogram_tv_2d(const SampleCloud& a, const SampleCloud& b);

} // namespace vortexlab

#endif
