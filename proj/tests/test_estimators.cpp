#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "vortexlab/estimators.hpp"
#include "vortexlab/rng.hpp"
#include "vortexlab/stats_math.hpp"

using namespace vortexlab;

namespace {

SampleCloud gaussian_cloud(std::size_t n, std::size_t d, std::span<const double> mean,
                           double sigma, std::uint64_t seed) {
    SampleCloud c;
    c.n = n;
    c.d = d;
    c.seed = seed;
    c.points.resize(n * d);
    RngStream stream(seed, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k)
            c.points[i * d + k] = mean[k] + sigma * stream.normal();
    return c;
}

// Exhaustive minimum over all assignments, for small clouds.
double wasserstein_bruteforce(const SampleCloud& a, const SampleCloud& b, double alpha) {
    std::vector<std::size_t> perm(a.n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.n; ++i) {
            double sq = 0.0;
            for (std::size_t k = 0; k < a.d; ++k) {
                const double diff = a.row(i)[k] - b.row(perm[i])[k];
                sq += diff * diff;
            }
            acc += std::pow(std::sqrt(sq), alpha);
        }
        best = std::min(best, acc);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::pow(best / double(a.n), 1.0 / alpha);
}

SampleCloud random_cloud(std::size_t n, std::size_t d, std::uint64_t seed, double scale = 1.0) {
    std::vector<double> zero(d, 0.0);
    return gaussian_cloud(n, d, zero, scale, seed);
}

} // namespace

TEST_SUITE("estimators") {

TEST_CASE("relative entropy of a Gaussian against itself is zero") {
    const std::vector<double> mean{0.0, 0.0};
    const SampleCloud c = gaussian_cloud(20000, 2, mean, 2.0, 101);
    const StatReport rep = relative_entropy_vs_gaussian(c, mean, 4.0, 5);
    CHECK(std::abs(rep.estimate) < 3.0 * rep.std_error + 0.02);
}

TEST_CASE("relative entropy closed form under a mean shift") {
    const double nu = 1.0;
    const std::vector<double> m{1.5, -0.5};
    const std::vector<double> zero{0.0, 0.0};
    const SampleCloud c = gaussian_cloud(20000, 2, m, std::sqrt(4.0 * nu), 202);
    const StatReport rep = relative_entropy_vs_gaussian(c, zero, 4.0 * nu, 5);
    const double target = (m[0] * m[0] + m[1] * m[1]) / (8.0 * nu);
    CHECK(std::abs(rep.estimate - target) < 3.0 * rep.std_error + 0.05 * target);
}

TEST_CASE("relative entropy closed form under a variance mismatch") {
    // N(0, sigma^2 I) against N(0, s^2 I) in d = 2 with ratio = 1/2:
    // H = ratio - 1 - ln ratio = ln 2 - 1/2.
    const std::vector<double> zero{0.0, 0.0};
    const SampleCloud c = gaussian_cloud(20000, 2, zero, std::sqrt(2.0), 303);
    const StatReport rep = relative_entropy_vs_gaussian(c, zero, 4.0, 5);
    const double target = std::log(2.0) - 0.5;
    CHECK(std::abs(rep.estimate - target) < 3.0 * rep.std_error + 0.05 * target);
}

TEST_CASE("relative entropy is invariant under simultaneous rotation") {
    const std::vector<double> zero{0.0, 0.0};
    SampleCloud c = gaussian_cloud(5000, 2, std::vector<double>{1.0, 0.0}, 1.3, 404);
    const StatReport before = relative_entropy_vs_gaussian(c, zero, 4.0, 5);
    const double th = 1.1;
    SampleCloud rot = c;
    for (std::size_t i = 0; i < c.n; ++i) {
        const double x = c.row(i)[0], y = c.row(i)[1];
        rot.points[2 * i] = std::cos(th) * x - std::sin(th) * y;
        rot.points[2 * i + 1] = std::sin(th) * x + std::cos(th) * y;
    }
    const StatReport after = relative_entropy_vs_gaussian(rot, zero, 4.0, 5);
    CHECK(after.estimate == doctest::Approx(before.estimate).epsilon(1e-6));
}

TEST_CASE("relative entropy rejects coincident points and bad arguments") {
    SampleCloud c = random_cloud(200, 2, 1);
    c.points[2] = c.points[0];
    c.points[3] = c.points[1];
    const std::vector<double> zero{0.0, 0.0};
    CHECK_THROWS_AS(relative_entropy_vs_gaussian(c, zero, 1.0, 5), std::domain_error);
    const SampleCloud ok = random_cloud(200, 2, 2);
    CHECK_THROWS_AS(relative_entropy_vs_gaussian(ok, zero, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(relative_entropy_vs_gaussian(ok, zero, 1.0, 21), std::invalid_argument);
}

TEST_CASE("wasserstein: identity, single points, symmetry") {
    const SampleCloud a = random_cloud(50, 3, 7);
    CHECK(wasserstein_exact(a, a, 1.0) == doctest::Approx(0.0));
    CHECK(wasserstein_exact(a, a, 2.0) == doctest::Approx(0.0));

    SampleCloud x, y;
    x.n = y.n = 1;
    x.d = y.d = 2;
    x.points = {0.0, 0.0};
    y.points = {3.0, 4.0};
    for (double alpha : {1.0, 1.7, 2.0})
        CHECK(wasserstein_exact(x, y, alpha) == doctest::Approx(5.0));

    const SampleCloud b = random_cloud(50, 3, 8);
    CHECK(wasserstein_exact(a, b, 1.5) == doctest::Approx(wasserstein_exact(b, a, 1.5)));
}

TEST_CASE("wasserstein matches brute force on 5-point clouds") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const SampleCloud a = random_cloud(5, 2, 100 + seed);
        const SampleCloud b = random_cloud(5, 2, 200 + seed);
        for (double alpha : {1.0, 2.0})
            CHECK(wasserstein_exact(a, b, alpha) ==
                  doctest::Approx(wasserstein_bruteforce(a, b, alpha)).epsilon(1e-10));
    }
}

TEST_CASE("wasserstein triangle inequality on random triples") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SampleCloud a = random_cloud(24, 2, 300 + seed);
        const SampleCloud b = random_cloud(24, 2, 400 + seed);
        const SampleCloud c = random_cloud(24, 2, 500 + seed, 2.0);
        for (double alpha : {1.0, 2.0}) {
            const double ab = wasserstein_exact(a, b, alpha);
            const double bc = wasserstein_exact(b, c, alpha);
            const double ac = wasserstein_exact(a, c, alpha);
            CHECK(ac <= ab + bc + 1e-12);
        }
    }
}

TEST_CASE("wasserstein rejects size mismatch and oversized inputs") {
    const SampleCloud a = random_cloud(10, 2, 1);
    const SampleCloud b = random_cloud(11, 2, 2);
    CHECK_THROWS_AS(wasserstein_exact(a, b, 1.0), std::invalid_argument);
}

TEST_CASE("sliced equals exact in one dimension") {
    SampleCloud a = random_cloud(64, 1, 11);
    SampleCloud b = random_cloud(64, 1, 12, 1.5);
    for (double alpha : {1.0, 2.0}) {
        const double sw = sliced_wasserstein(a, b, alpha, 32, 99);
        CHECK(sw == doctest::Approx(wasserstein_exact(a, b, alpha)).epsilon(1e-12));
    }
}

TEST_CASE("sliced is dominated by exact on matched clouds") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const SampleCloud a = random_cloud(40, 3, 600 + seed);
        const SampleCloud b = random_cloud(40, 3, 700 + seed);
        for (double alpha : {1.0, 2.0})
            CHECK(sliced_wasserstein(a, b, alpha, 64, seed) <=
                  wasserstein_exact(a, b, alpha) + 1e-12);
    }
}

TEST_CASE("sliced translated-Gaussian scaling approaches |m| E|cos|") {
    const std::vector<double> zero{0.0, 0.0};
    const std::vector<double> m{2.0, 0.0};
    const SampleCloud a = gaussian_cloud(100000, 2, zero, 1.0, 21);
    const SampleCloud b = gaussian_cloud(100000, 2, m, 1.0, 22);
    const double sw = sliced_wasserstein(a, b, 2.0, 128, 5);
    const double target = 2.0 * 2.0 / std::numbers::pi; // |m| E|<u, e>| in 2D
    CHECK(sw == doctest::Approx(target).epsilon(0.08));
}

TEST_CASE("energy distance: two-point statistic and null behaviour") {
    SampleCloud x, y;
    x.n = y.n = 1;
    x.d = y.d = 2;
    x.points = {0.0, 0.0};
    y.points = {3.0, 4.0};
    const StatReport two = energy_distance_test(x, y, 9, 1);
    CHECK(two.statistic == doctest::Approx(10.0)); // 2 |x - y|

    // two halves of one Gaussian batch: non-rejection in >= 98/100 seeds
    int nonreject = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SampleCloud pool = random_cloud(200, 2, 9000 + seed);
        SampleCloud a, b;
        a.n = b.n = 100;
        a.d = b.d = 2;
        a.points.assign(pool.points.begin(), pool.points.begin() + 200);
        b.points.assign(pool.points.begin() + 200, pool.points.end());
        const StatReport rep = energy_distance_test(a, b, 199, seed);
        if (rep.p_value >= 0.01) ++nonreject;
    }
    CHECK(nonreject >= 98);
}

TEST_CASE("energy distance detects a unit mean shift") {
    const std::vector<double> zero{0.0, 0.0};
    const std::vector<double> m{1.0, 0.0};
    const SampleCloud a = gaussian_cloud(500, 2, zero, 1.0, 31);
    const SampleCloud b = gaussian_cloud(500, 2, m, 1.0, 32);
    const StatReport rep = energy_distance_test(a, b, 1999, 5);
    CHECK(rep.p_value < 0.001);
}

TEST_CASE("energy distance null p-values are uniform") {
    std::vector<double> ps;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const SampleCloud a = gaussian_cloud(60, 2, std::vector<double>{0.0, 0.0}, 1.0, 40000 + 2 * seed);
        const SampleCloud b = gaussian_cloud(60, 2, std::vector<double>{0.0, 0.0}, 1.0, 40001 + 2 * seed);
        ps.push_back(energy_distance_test(a, b, 99, seed).p_value);
    }
    const KsResult ks = ks_test(ps, [](double p) { return std::clamp(p, 0.0, 1.0); });
    CHECK(ks.p_value >= 0.01);
}

TEST_CASE("pooled standardization preserves the permutation level and whitens") {
    SampleCloud a = random_cloud(300, 3, 81);
    SampleCloud b = random_cloud(300, 3, 82);
    // stretch one coordinate massively in both clouds
    for (std::size_t i = 0; i < a.n; ++i) a.points[3 * i + 2] *= 1000.0;
    for (std::size_t i = 0; i < b.n; ++i) b.points[3 * i + 2] *= 1000.0;
    SampleCloud sa = a, sb = b;
    standardize_pooled(sa, sb);
    // pooled mean 0, pooled variance 1 per coordinate
    for (std::size_t k = 0; k < 3; ++k) {
        double m = 0.0, ss = 0.0;
        for (std::size_t i = 0; i < sa.n; ++i) m += sa.row(i)[k];
        for (std::size_t i = 0; i < sb.n; ++i) m += sb.row(i)[k];
        m /= double(sa.n + sb.n);
        CHECK(std::abs(m) < 1e-12);
        for (std::size_t i = 0; i < sa.n; ++i) ss += sa.row(i)[k] * sa.row(i)[k];
        for (std::size_t i = 0; i < sb.n; ++i) ss += sb.row(i)[k] * sb.row(i)[k];
        CHECK(ss / double(sa.n + sb.n - 1) == doctest::Approx(1.0).epsilon(1e-10));
    }
    // same-law inputs stay non-rejecting after standardization
    const StatReport rep = energy_distance_test(sa, sb, 199, 4);
    CHECK(rep.p_value >= 0.01);
}

TEST_CASE("energy distance is deterministic across thread counts") {
    const SampleCloud a = random_cloud(150, 2, 71);
    const SampleCloud b = random_cloud(150, 2, 72, 1.2);
    const StatReport one = energy_distance_test(a, b, 500, 9, 1);
    const StatReport four = energy_distance_test(a, b, 500, 9, 4);
    CHECK(one.p_value == four.p_value);
    CHECK(one.statistic == four.statistic);
}

TEST_CASE("mardia null calibration and kurtosis identity") {
    int nonreject = 0;
    double kurt_ok = 0;
    const std::size_t n = 20000, d = 4;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SampleCloud c = random_cloud(n, d, 50000 + seed);
        const MardiaStats st = mardia_stats(c);
        if (st.combined_p >= 0.01) ++nonreject;
        const double sd = std::sqrt(8.0 * double(d) * double(d + 2) / double(n));
        if (std::abs(st.b2 - double(d * (d + 2))) < 4.0 * sd) ++kurt_ok;
    }
    CHECK(nonreject >= 95);
    CHECK(kurt_ok >= 95);
}

TEST_CASE("mardia rejects a product of exponentials") {
    SampleCloud c;
    c.n = 10000;
    c.d = 2;
    c.points.resize(c.n * 2);
    RngStream stream(3141, 0);
    for (auto& v : c.points) v = -std::log(stream.uniform());
    const StatReport rep = mardia_normality(c);
    CHECK(rep.p_value < 0.001);
}

TEST_CASE("mardia rejects singular covariance") {
    SampleCloud c;
    c.n = 600;
    c.d = 2;
    c.points.resize(c.n * 2);
    RngStream stream(5, 0);
    for (std::size_t i = 0; i < c.n; ++i) {
        const double x = stream.normal();
        c.points[2 * i] = x;
        c.points[2 * i + 1] = 2.0 * x; // collinear
    }
    CHECK_THROWS_AS(mardia_normality(c), std::domain_error);
}

TEST_CASE("exponential rate fit recovers exact and noisy rates") {
    std::vector<double> ts{0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
    std::vector<double> vs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) vs[i] = std::exp(-ts[i]);
    const StatReport exact = fit_exponential_rate(ts, vs);
    CHECK(exact.estimate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(exact.std_error == doctest::Approx(0.0));

    std::fill(vs.begin(), vs.end(), 3.7);
    const StatReport flat = fit_exponential_rate(ts, vs);
    CHECK(flat.estimate == doctest::Approx(0.0));

    RngStream stream(8, 0);
    for (std::size_t i = 0; i < ts.size(); ++i)
        vs[i] = std::exp(-ts[i]) * (1.0 + 0.05 * stream.normal());
    const StatReport noisy = fit_exponential_rate(ts, vs);
    CHECK(std::abs(noisy.estimate - 1.0) < 3.0 * noisy.std_error);

    vs[2] = -1.0;
    CHECK_THROWS_AS(fit_exponential_rate(ts, vs), std::domain_error);
}

TEST_CASE("histogram TV proxy separates shifted clouds and vanishes on identity") {
    const std::vector<double> zero{0.0, 0.0};
    const SampleCloud a = gaussian_cloud(20000, 2, zero, 1.0, 61);
    const SampleCloud b = gaussian_cloud(20000, 2, zero, 1.0, 62);
    const SampleCloud far = gaussian_cloud(20000, 2, std::vector<double>{3.0, 0.0}, 1.0, 63);
    // bias-dominated proxy: only the trend separation is meaningful
    const double same = histogram_tv_2d(a, b);
    const double diff = histogram_tv_2d(a, far);
    CHECK(same < 0.25);
    CHECK(diff > 0.7);
    CHECK(diff > 3.0 * same);
}

} // TEST_SUITE
