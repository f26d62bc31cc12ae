#include "vortexlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vortexlab/parallel.hpp"
#include "vortexlab/rng.hpp"
#include "vortexlab/stats_math.hpp"

namespace vortexlab {

SampleCloud SampleCloud::from_vec2(std::span<const Vec2> pts, std::uint64_t seed) {
    SampleCloud c;
    c.n = pts.size();
    c.d = 2;
    c.seed = seed;
    c.points.resize(c.n * 2);
    for (std::size_t i = 0; i < c.n; ++i) {
        c.points[2 * i] = pts[i].x;
        c.points[2 * i + 1] = pts[i].y;
    }
    return c;
}

SampleCloud SampleCloud::from_vec2_columns(std::span<const std::span<const Vec2>> cols,
                                           std::uint64_t seed) {
    if (cols.empty()) throw std::invalid_argument("SampleCloud: no columns");
    SampleCloud c;
    c.n = cols[0].size();
    c.d = 2 * cols.size();
    c.seed = seed;
    c.points.resize(c.n * c.d);
    for (const auto& col : cols)
        if (col.size() != c.n) throw std::invalid_argument("SampleCloud: ragged columns");
    for (std::size_t i = 0; i < c.n; ++i)
        for (std::size_t b = 0; b < cols.size(); ++b) {
            c.points[i * c.d + 2 * b] = cols[b][i].x;
            c.points[i * c.d + 2 * b + 1] = cols[b][i].y;
        }
    return c;
}

void SampleCloud::validate() const {
    if (n < 1) throw std::invalid_argument("SampleCloud: need >= 1 point");
    if (d < 1 || points.size() != n * d) throw std::invalid_argument("SampleCloud: bad shape");
    for (double v : points)
        if (!std::isfinite(v)) throw std::invalid_argument("SampleCloud: non-finite entry");
}

namespace {

double sq_dist(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
    }
    return s;
}

// Median-split kd-tree over row indices; supports k-th-nearest queries
// excluding the query point itself.
class KdTree {
public:
    KdTree(const double* pts, std::size_t n, std::size_t d)
        : pts_(pts), n_(n), d_(d), idx_(n), dim_(n) {
        for (std::size_t i = 0; i < n; ++i) idx_[i] = static_cast<std::uint32_t>(i);
        build(0, n, 0);
    }

    // Distance from point `self` to its k-th nearest neighbour; also flags
    // an exactly coincident neighbour among the k found.
    double kth_neighbour_dist(std::size_t self, int k, bool* coincident) const {
        heap_.clear();
        k_ = static_cast<std::size_t>(k);
        query(0, n_, pts_ + self * d_, self);
        *coincident = std::any_of(heap_.begin(), heap_.end(), [](double v) { return v == 0.0; });
        return std::sqrt(heap_.front());
    }

private:
    void build(std::size_t lo, std::size_t hi, int depth) {
        if (hi - lo <= kLeaf) return;
        const std::size_t mid = (lo + hi) / 2;
        const std::size_t dim = static_cast<std::size_t>(depth) % d_;
        std::nth_element(idx_.begin() + lo, idx_.begin() + mid, idx_.begin() + hi,
                         [&](std::uint32_t a, std::uint32_t b) {
                             return pts_[a * d_ + dim] < pts_[b * d_ + dim];
                         });
        dim_[mid] = static_cast<std::uint8_t>(dim);
        build(lo, mid, depth + 1);
        build(mid + 1, hi, depth + 1);
    }

    void consider(std::uint32_t i, const double* q, std::size_t self) const {
        if (i == self) return;
        const double d2 = sq_dist(q, pts_ + i * d_, d_);
        if (heap_.size() < k_) {
            heap_.push_back(d2);
            std::push_heap(heap_.begin(), heap_.end());
        } else if (d2 < heap_.front()) {
            std::pop_heap(heap_.begin(), heap_.end());
            heap_.back() = d2;
            std::push_heap(heap_.begin(), heap_.end());
        }
    }

    void query(std::size_t lo, std::size_t hi, const double* q, std::size_t self) const {
        if (hi - lo <= kLeaf) {
            for (std::size_t i = lo; i < hi; ++i) consider(idx_[i], q, self);
            return;
        }
        const std::size_t mid = (lo + hi) / 2;
        consider(idx_[mid], q, self);
        const std::size_t dim = dim_[mid];
        const double diff = q[dim] - pts_[idx_[mid] * d_ + dim];
        const bool left_first = diff < 0.0;
        if (left_first) query(lo, mid, q, self);
        else query(mid + 1, hi, q, self);
        if (heap_.size() < k_ || diff * diff < heap_.front()) {
            if (left_first) query(mid + 1, hi, q, self);
            else query(lo, mid, q, self);
        }
    }

    static constexpr std::size_t kLeaf = 8;
    const double* pts_;
    std::size_t n_, d_;
    std::vector<std::uint32_t> idx_;
    std::vector<std::uint8_t> dim_;
    mutable std::vector<double> heap_;
    mutable std::size_t k_ = 0;
};

// Kozachenko-Leonenko entropy of `rows` row-major points.
double knn_entropy(const double* pts, std::size_t n, std::size_t d, int k) {
    if (n <= static_cast<std::size_t>(k))
        throw std::invalid_argument("knn_entropy: need more samples than k");
    const KdTree tree(pts, n, d);
    double log_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        bool coincident = false;
        const double eps = tree.kth_neighbour_dist(i, k, &coincident);
        if (coincident)
            throw std::domain_error("relative_entropy: coincident sample points");
        log_sum += std::log(eps);
    }
    const double log_vd =
        0.5 * double(d) * std::log(std::numbers::pi) - std::lgamma(0.5 * double(d) + 1.0);
    return digamma(double(n)) - digamma(double(k)) + log_vd +
           double(d) / double(n) * log_sum;
}

double gaussian_cross_entropy(const double* pts, std::size_t n, std::size_t d,
                              std::span<const double> mean, double cov_scale) {
    const double log_norm = 0.5 * double(d) * std::log(2.0 * std::numbers::pi * cov_scale);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double q = 0.0;
        for (std::size_t kk = 0; kk < d; ++kk) {
            const double diff = pts[i * d + kk] - mean[kk];
            q += diff * diff;
        }
        acc += log_norm + q / (2.0 * cov_scale);
    }
    return acc / double(n);
}

} // namespace

StatReport relative_entropy_vs_gaussian(const SampleCloud& cloud,
                                        std::span<const double> mean,
                                        double cov_scale, int k) {
    cloud.validate();
    if (mean.size() != cloud.d) throw std::invalid_argument("relative_entropy: mean dimension mismatch");
    if (!(cov_scale > 0.0)) throw std::invalid_argument("relative_entropy: cov_scale must be > 0");
    if (cloud.n < 100) throw std::invalid_argument("relative_entropy: need >= 100 samples");
    if (k < 3 || k > 20) throw std::invalid_argument("relative_entropy: k must lie in [3, 20]");

    const auto estimate_on = [&](const std::vector<double>& rows, std::size_t nn) {
        return gaussian_cross_entropy(rows.data(), nn, cloud.d, mean, cov_scale) -
               knn_entropy(rows.data(), nn, cloud.d, k);
    };

    const double full = gaussian_cross_entropy(cloud.points.data(), cloud.n, cloud.d,
                                               mean, cov_scale) -
                        knn_entropy(cloud.points.data(), cloud.n, cloud.d, k);

    // Standard error from 10 disjoint folds (round-robin split).
    constexpr std::size_t folds = 10;
    std::vector<double> fold_vals(folds);
    for (std::size_t f = 0; f < folds; ++f) {
        std::vector<double> rows;
        rows.reserve((cloud.n / folds + 1) * cloud.d);
        std::size_t nn = 0;
        for (std::size_t i = f; i < cloud.n; i += folds) {
            rows.insert(rows.end(), cloud.row(i), cloud.row(i) + cloud.d);
            ++nn;
        }
        fold_vals[f] = estimate_on(rows, nn);
    }
    const MeanSe fs = mean_se(fold_vals);

    StatReport rep;
    rep.estimate = full;
    rep.std_error = std::sqrt(fs.var / double(folds));
    rep.n_samples = cloud.n;
    rep.method = "relative_entropy_knn_k" + std::to_string(k);
    rep.seed = cloud.seed;
    return rep;
}

namespace {

// Shortest-augmenting-path optimal assignment (Jonker-Volgenant flavour);
// cost is row-major size n*n. Returns the minimal total cost.
double solve_assignment(const std::vector<double>& cost, std::size_t n) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            const double* row = cost.data() + (i0 - 1) * n;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = row[j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0.0;
    for (std::size_t j = 1; j <= n; ++j) total += cost[(p[j] - 1) * n + (j - 1)];
    return total;
}

double wasserstein_1d(std::vector<double> xs, std::vector<double> ys, double alpha) {
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        acc += std::pow(std::abs(xs[i] - ys[i]), alpha);
    return std::pow(acc / double(xs.size()), 1.0 / alpha);
}

} // namespace

double wasserstein_exact(const SampleCloud& a, const SampleCloud& b, double alpha) {
    a.validate();
    b.validate();
    if (a.n != b.n || a.d != b.d)
        throw std::invalid_argument("wasserstein_exact: clouds must have equal sizes");
    if (!(alpha >= 1.0)) throw std::invalid_argument("wasserstein_exact: alpha must be >= 1");
    if (a.d == 1) return wasserstein_1d(a.points, b.points, alpha);
    if (a.n > 2000)
        throw std::invalid_argument("wasserstein_exact: capped at N = 2000; use sliced_wasserstein");
    const std::size_t n = a.n;
    std::vector<double> cost(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cost[i * n + j] = std::pow(std::sqrt(sq_dist(a.row(i), b.row(j), a.d)), alpha);
    return std::pow(solve_assignment(cost, n) / double(n), 1.0 / alpha);
}

double sliced_wasserstein(const SampleCloud& a, const SampleCloud& b, double alpha,
                          int n_projections, std::uint64_t seed) {
    a.validate();
    b.validate();
    if (a.n != b.n || a.d != b.d)
        throw std::invalid_argument("sliced_wasserstein: clouds must have equal sizes");
    if (n_projections < 16) throw std::invalid_argument("sliced_wasserstein: need >= 16 projections");
    if (!(alpha >= 1.0)) throw std::invalid_argument("sliced_wasserstein: alpha must be >= 1");
    double acc = 0.0;
    std::vector<double> dir(a.d), pa(a.n), pb(b.n);
    for (int pidx = 0; pidx < n_projections; ++pidx) {
        RngStream stream(seed, static_cast<std::uint64_t>(pidx));
        double nrm2 = 0.0;
        for (auto& c : dir) {
            c = stream.normal();
            nrm2 += c * c;
        }
        const double inv = 1.0 / std::sqrt(nrm2);
        for (auto& c : dir) c *= inv;
        for (std::size_t i = 0; i < a.n; ++i) {
            double sa = 0.0, sb = 0.0;
            for (std::size_t kk = 0; kk < a.d; ++kk) {
                sa += dir[kk] * a.row(i)[kk];
                sb += dir[kk] * b.row(i)[kk];
            }
            pa[i] = sa;
            pb[i] = sb;
        }
        acc += wasserstein_1d(pa, pb, alpha);
    }
    return acc / double(n_projections);
}

StatReport energy_distance_test(const SampleCloud& a, const SampleCloud& b,
                                int n_permutations, std::uint64_t seed,
                                unsigned threads) {
    a.validate();
    b.validate();
    if (a.d != b.d) throw std::invalid_argument("energy_distance_test: dimension mismatch");
    if (n_permutations < 1) throw std::invalid_argument("energy_distance_test: need >= 1 permutation");
    const std::size_t na = a.n, nb = b.n, m = na + nb;
    if (m > 12288) throw std::invalid_argument("energy_distance_test: pooled size capped at 12288");

    // Pooled distance matrix (float to halve the footprint); the observed
    // statistic is recomputed in double below.
    std::vector<float> dist(m * m);
    const auto row_of = [&](std::size_t i) { return i < na ? a.row(i) : b.row(i - na); };
    for (std::size_t i = 0; i < m; ++i) {
        dist[i * m + i] = 0.0f;
        for (std::size_t j = i + 1; j < m; ++j) {
            const float dv = static_cast<float>(std::sqrt(sq_dist(row_of(i), row_of(j), a.d)));
            dist[i * m + j] = dv;
            dist[j * m + i] = dv;
        }
    }
    double total = 0.0; // sum over unordered pooled pairs
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) total += dist[i * m + j];

    double s_aa = 0.0, s_bb = 0.0, s_ab = 0.0;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = i + 1; j < na; ++j) s_aa += std::sqrt(sq_dist(a.row(i), a.row(j), a.d));
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = i + 1; j < nb; ++j) s_bb += std::sqrt(sq_dist(b.row(i), b.row(j), a.d));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) s_ab += std::sqrt(sq_dist(a.row(i), b.row(j), a.d));
    const auto energy = [&](double saa, double sbb, double sab) {
        return 2.0 * sab / (double(na) * double(nb)) - 2.0 * saa / (double(na) * double(na)) -
               2.0 * sbb / (double(nb) * double(nb));
    };
    const double observed = energy(s_aa, s_bb, s_ab);

    std::vector<double> perm_stats(static_cast<std::size_t>(n_permutations));
    parallel_chunks(perm_stats.size(), [&](std::size_t lo, std::size_t hi) {
        std::vector<std::uint32_t> idx(m);
        for (std::size_t p = lo; p < hi; ++p) {
            for (std::size_t i = 0; i < m; ++i) idx[i] = static_cast<std::uint32_t>(i);
            RngStream stream(seed, p + 1);
            for (std::size_t i = m - 1; i > 0; --i)
                std::swap(idx[i], idx[stream.uniform_index(i + 1)]);
            // group sums are label-set functions; sorting restores locality
            std::sort(idx.begin(), idx.begin() + na);
            std::sort(idx.begin() + na, idx.end());
            double paa = 0.0, pbb = 0.0;
            for (std::size_t i = 0; i < na; ++i)
                for (std::size_t j = i + 1; j < na; ++j)
                    paa += dist[idx[i] * m + idx[j]];
            for (std::size_t i = na; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j)
                    pbb += dist[idx[i] * m + idx[j]];
            perm_stats[p] = energy(paa, pbb, total - paa - pbb);
        }
    }, threads);

    std::size_t count = 0;
    for (double s : perm_stats)
        if (s >= observed) ++count;

    StatReport rep;
    rep.estimate = observed;
    rep.statistic = observed;
    rep.p_value = double(count + 1) / double(n_permutations + 1);
    rep.n_samples = m;
    rep.method = "energy_distance_permutation";
    rep.seed = seed;
    return rep;
}

void standardize_pooled(SampleCloud& a, SampleCloud& b) {
    a.validate();
    b.validate();
    if (a.d != b.d) throw std::invalid_argument("standardize_pooled: dimension mismatch");
    const std::size_t tot = a.n + b.n;
    if (tot < 2) throw std::invalid_argument("standardize_pooled: too few points");
    for (std::size_t k = 0; k < a.d; ++k) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.n; ++i) m += a.row(i)[k];
        for (std::size_t i = 0; i < b.n; ++i) m += b.row(i)[k];
        m /= double(tot);
        double ss = 0.0;
        for (std::size_t i = 0; i < a.n; ++i) ss += (a.row(i)[k] - m) * (a.row(i)[k] - m);
        for (std::size_t i = 0; i < b.n; ++i) ss += (b.row(i)[k] - m) * (b.row(i)[k] - m);
        const double sd = std::sqrt(ss / double(tot - 1));
        if (sd == 0.0) throw std::domain_error("standardize_pooled: constant coordinate");
        for (std::size_t i = 0; i < a.n; ++i) a.points[i * a.d + k] = (a.points[i * a.d + k] - m) / sd;
        for (std::size_t i = 0; i < b.n; ++i) b.points[i * b.d + k] = (b.points[i * b.d + k] - m) / sd;
    }
}

namespace {

// Lower Cholesky of a d x d SPD matrix; throws on non-positive pivot.
std::vector<double> cholesky(const std::vector<double>& s, std::size_t d) {
    std::vector<double> l(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double acc = s[i * d + j];
            for (std::size_t kk = 0; kk < j; ++kk) acc -= l[i * d + kk] * l[j * d + kk];
            if (i == j) {
                if (!(acc > 0.0)) throw std::domain_error("mardia: singular sample covariance");
                l[i * d + i] = std::sqrt(acc);
            } else {
                l[i * d + j] = acc / l[j * d + j];
            }
        }
    }
    return l;
}

} // namespace

MardiaStats mardia_stats(const SampleCloud& cloud) {
    cloud.validate();
    const std::size_t n = cloud.n, d = cloud.d;
    if (n < 500) throw std::invalid_argument("mardia: need >= 500 samples");
    if (d > 8) throw std::invalid_argument("mardia: dimension capped at 8");

    std::vector<double> mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t kk = 0; kk < d; ++kk) mean[kk] += cloud.row(i)[kk];
    for (auto& v : mean) v /= double(n);

    std::vector<double> cov(d * d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t kk = 0; kk < d; ++kk)
            for (std::size_t ll = 0; ll <= kk; ++ll)
                cov[kk * d + ll] += (cloud.row(i)[kk] - mean[kk]) * (cloud.row(i)[ll] - mean[ll]);
    for (std::size_t kk = 0; kk < d; ++kk)
        for (std::size_t ll = 0; ll <= kk; ++ll) {
            cov[kk * d + ll] /= double(n);
            cov[ll * d + kk] = cov[kk * d + ll];
        }
    const std::vector<double> l = cholesky(cov, d);

    // Standardized rows y = L^{-1} (x - mean); third-moment tensor gives the
    // skewness as b1 = (1/N^2) sum_{klm} T_klm^2 without the N^2 pair loop.
    std::vector<double> t3(d * d * d, 0.0);
    std::vector<double> y(d);
    double b2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t kk = 0; kk < d; ++kk) {
            double acc = cloud.row(i)[kk] - mean[kk];
            for (std::size_t ll = 0; ll < kk; ++ll) acc -= l[kk * d + ll] * y[ll];
            y[kk] = acc / l[kk * d + kk];
        }
        double r2 = 0.0;
        for (std::size_t kk = 0; kk < d; ++kk) r2 += y[kk] * y[kk];
        b2 += r2 * r2;
        for (std::size_t kk = 0; kk < d; ++kk) {
            const double yk = y[kk];
            for (std::size_t ll = 0; ll < d; ++ll) {
                const double ykl = yk * y[ll];
                double* slice = t3.data() + (kk * d + ll) * d;
                for (std::size_t mm = 0; mm < d; ++mm) slice[mm] += ykl * y[mm];
            }
        }
    }
    b2 /= double(n);
    double b1 = 0.0;
    for (double t : t3) b1 += t * t;
    b1 /= double(n) * double(n);

    MardiaStats st;
    st.b1 = b1;
    st.b2 = b2;
    st.skew_stat = double(n) * b1 / 6.0;
    const double dof = double(d) * double(d + 1) * double(d + 2) / 6.0;
    st.skew_p = chi2_sf(st.skew_stat, dof);
    const double kurt_sd = std::sqrt(8.0 * double(d) * double(d + 2) / double(n));
    st.kurt_z = (b2 - double(d) * double(d + 2)) / kurt_sd;
    st.kurt_p = 2.0 * normal_sf(std::abs(st.kurt_z));
    st.combined_p = std::min(1.0, 2.0 * std::min(st.skew_p, st.kurt_p));
    return st;
}

StatReport mardia_normality(const SampleCloud& cloud) {
    const MardiaStats st = mardia_stats(cloud);
    StatReport rep;
    rep.estimate = st.b2;
    rep.std_error = std::sqrt(8.0 * double(cloud.d) * double(cloud.d + 2) / double(cloud.n));
    rep.statistic = st.skew_stat;
    rep.p_value = st.combined_p;
    rep.n_samples = cloud.n;
    rep.method = "mardia";
    rep.seed = cloud.seed;
    return rep;
}

StatReport fit_exponential_rate(std::span<const double> times,
                                std::span<const double> values) {
    if (times.size() != values.size() || times.size() < 4)
        throw std::invalid_argument("fit_exponential_rate: need >= 4 matched points");
    std::vector<double> logs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0)) throw std::domain_error("fit_exponential_rate: values must be > 0");
        logs[i] = std::log(values[i]);
    }
    const LineFit fit = fit_line(times, logs);
    StatReport rep;
    rep.estimate = -fit.slope;
    rep.std_error = fit.slope_se;
    rep.statistic = fit.slope_se > 0.0 ? fit.slope / fit.slope_se
                                       : std::copysign(std::numeric_limits<double>::infinity(),
                                                       fit.slope == 0.0 ? 0.0 : fit.slope);
    rep.p_value = fit.slope_se > 0.0 ? 2.0 * normal_sf(std::abs(rep.statistic))
                                     : (fit.slope == 0.0 ? 1.0 : 0.0);
    rep.n_samples = times.size();
    rep.method = "exponential_rate_ols";
    return rep;
}

double histogram_tv_2d(const SampleCloud& a, const SampleCloud& b) {
    a.validate();
    b.validate();
    if (a.d != 2 || b.d != 2) throw std::invalid_argument("histogram_tv_2d: planar clouds only");
    const std::size_t m = a.n + b.n;
    double lo[2], hi[2], var[2], mean[2];
    for (int kk = 0; kk < 2; ++kk) {
        lo[kk] = std::numeric_limits<double>::infinity();
        hi[kk] = -lo[kk];
        var[kk] = mean[kk] = 0.0;
    }
    const auto visit = [&](const SampleCloud& c) {
        for (std::size_t i = 0; i < c.n; ++i)
            for (int kk = 0; kk < 2; ++kk) {
                const double v = c.row(i)[kk];
                lo[kk] = std::min(lo[kk], v);
                hi[kk] = std::max(hi[kk], v);
                mean[kk] += v;
            }
    };
    visit(a);
    visit(b);
    for (int kk = 0; kk < 2; ++kk) mean[kk] /= double(m);
    for (std::size_t i = 0; i < a.n; ++i)
        for (int kk = 0; kk < 2; ++kk) var[kk] += (a.row(i)[kk] - mean[kk]) * (a.row(i)[kk] - mean[kk]);
    for (std::size_t i = 0; i < b.n; ++i)
        for (int kk = 0; kk < 2; ++kk) var[kk] += (b.row(i)[kk] - mean[kk]) * (b.row(i)[kk] - mean[kk]);
    std::size_t bins[2];
    for (int kk = 0; kk < 2; ++kk) {
        var[kk] /= double(m - 1);
        const double width = 3.5 * std::sqrt(var[kk]) * std::pow(double(m), -1.0 / 3.0);
        const double span = hi[kk] - lo[kk];
        bins[kk] = width > 0.0 && span > 0.0
                       ? std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(span / width)), 1, 512)
                       : 1;
    }
    std::vector<double> ha(bins[0] * bins[1], 0.0), hb(bins[0] * bins[1], 0.0);
    const auto fill = [&](const SampleCloud& c, std::vector<double>& h) {
        for (std::size_t i = 0; i < c.n; ++i) {
            std::size_t cell[2];
            for (int kk = 0; kk < 2; ++kk) {
                const double span = hi[kk] - lo[kk];
                const double f = span > 0.0 ? (c.row(i)[kk] - lo[kk]) / span : 0.0;
                cell[kk] = std::min(bins[kk] - 1, static_cast<std::size_t>(f * double(bins[kk])));
            }
            h[cell[0] * bins[1] + cell[1]] += 1.0 / double(c.n);
        }
    };
    fill(a, ha);
    fill(b, hb);
    double tv = 0.0;
    for (std::size_t i = 0; i < ha.size(); ++i) tv += std::abs(ha[i] - hb[i]);
    return 0.5 * tv;
}

} // namespace vortexlab
