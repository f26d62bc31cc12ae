#include "vortexlab/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vortexlab {

double lyapunov(std::span<const Vec2> z, std::span<const double> a) {
    double v = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) v += std::abs(a[i]) * norm2(z[i]);
    return v;
}

double pair_log(std::span<const Vec2> z, std::span<const double> a) {
    double m = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            const double r2 = norm2(z[i] - z[j]);
            if (r2 == 0.0) throw std::domain_error("pair_log: coincident positions");
            m += a[i] * a[j] * std::log(r2); // ordered pairs: 2 * (1/2) ln r2
        }
    }
    return m;
}

double expected_radius(std::span<const Vec2> z0, std::span<const double> a,
                       double nu, double t) {
    double abs_sum = 0.0;
    for (double ai : a) abs_sum += std::abs(ai);
    const double decay = std::exp(-t);
    return decay * lyapunov(z0, a) + (1.0 - decay) * 4.0 * nu * abs_sum;
}

FunctionalObserver::FunctionalObserver(const SystemSpec& spec, const SimParams& params,
                                       bool track_pair_log)
    : a_(spec.a), nu_(spec.nu), reg_(params.eps), track_pair_log_(track_pair_log),
      single_(spec.n == 1), samples_(params.replicas) {
    if (track_pair_log && spec.n < 2)
        throw std::invalid_argument("FunctionalObserver: pair_log needs n >= 2");
}

void FunctionalObserver::begin_path(std::size_t replica, std::span<const Vec2> state0) {
    FunctionalSample& s = samples_[replica];
    s = FunctionalSample{};
    s.R = lyapunov(state0, a_);
    if (track_pair_log_) s.M = pair_log(state0, a_);
}

void FunctionalObserver::after_step(const PathContext& ctx) {
    FunctionalSample& s = samples_[ctx.replica];
    s.R = lyapunov(ctx.after, a_);
    if (track_pair_log_) s.M = pair_log(ctx.after, a_);
    if (!single_) return;
    const double decay = std::exp(-0.5 * ctx.h);
    const double noise_w = std::sqrt(1.0 - decay * decay);
    s.IB = decay * s.IB + noise_w * ctx.gauss[0];
    s.IK = decay * s.IK + ctx.drift_weight * k_eps(ctx.before[0], reg_);
    s.zeta = 2.0 * std::sqrt(nu_) * s.IB;
    s.xi = s.IK;
}

double MinDistanceObserver::config_min(std::span<const Vec2> z) {
    if (z.size() == 1) return norm(z[0]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j)
            best = std::min(best, norm(z[i] - z[j]));
    return best;
}

void MinDistanceObserver::begin_path(std::size_t replica, std::span<const Vec2> state0) {
    mins_[replica] = config_min(state0);
}

void MinDistanceObserver::after_step(const PathContext& ctx) {
    mins_[ctx.replica] = std::min(mins_[ctx.replica], config_min(ctx.after));
}

TraceObserver::TraceObserver(std::vector<double> times, std::size_t replicas,
                             std::span<const double> vorticities, unsigned quantities)
    : times_(std::move(times)), replicas_(replicas),
      a_(vorticities.begin(), vorticities.end()), quantities_(quantities) {
    const std::size_t cells = times_.size() * replicas_;
    if (quantities_ & Lyapunov) lyap_.resize(cells);
    if (quantities_ & PairLog) plog_.resize(cells);
    if (quantities_ & SquaredNorm) sqn_.resize(cells);
}

void TraceObserver::record(std::size_t slot, std::size_t replica, std::span<const Vec2> z) {
    const std::size_t cell = slot * replicas_ + replica;
    if (quantities_ & Lyapunov) lyap_[cell] = lyapunov(z, a_);
    if (quantities_ & PairLog) plog_[cell] = pair_log(z, a_);
    if (quantities_ & SquaredNorm) sqn_[cell] = norm2(z[0]);
}

void TraceObserver::begin_path(std::size_t replica, std::span<const Vec2> state0) {
    for (std::size_t k = 0; k < times_.size(); ++k)
        if (times_[k] == 0.0) record(k, replica, state0);
}

void TraceObserver::after_step(const PathContext& ctx) {
    for (std::size_t k = 0; k < times_.size(); ++k)
        if (std::abs(times_[k] - ctx.t1) < 1e-9) record(k, ctx.replica, ctx.after);
}

SnapshotObserver::SnapshotObserver(std::vector<double> times, std::size_t replicas,
                                   std::size_t particles)
    : times_(std::move(times)), replicas_(replicas), particles_(particles),
      data_(times_.size() * replicas * particles) {}

void SnapshotObserver::after_step(const PathContext& ctx) {
    for (std::size_t k = 0; k < times_.size(); ++k) {
        if (std::abs(times_[k] - ctx.t1) < 1e-9) {
            Vec2* dst = data_.data() + (k * replicas_ + ctx.replica) * particles_;
            std::copy(ctx.after.begin(), ctx.after.end(), dst);
        }
    }
}

std::span<const Vec2> SnapshotObserver::at(std::size_t slot, std::size_t replica) const {
    return {data_.data() + (slot * replicas_ + replica) * particles_, particles_};
}

namespace {

// Mean and standard error of f over the batch, in one pass.
template <class F>
NamedEstimate estimate(const std::string& name, std::size_t n, F&& f) {
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = f(i);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / double(n);
    const double var = std::max(0.0, sum2 / double(n) - mean * mean);
    return {name, mean, std::sqrt(var / double(n))};
}

} // namespace

MomentReport moment_identity_residuals(std::span<const Vec2> z,
                                       std::span<const Vec2> zeta,
                                       std::span<const Vec2> xi, double a,
                                       double nu) {
    const std::size_t n = z.size();
    if (zeta.size() != n || xi.size() != n)
        throw std::invalid_argument("moment_identity_residuals: batch size mismatch");
    if (n < 2) throw std::invalid_argument("moment_identity_residuals: need >= 2 samples");
    const double tiny = 10.0 * std::numeric_limits<double>::epsilon();
    for (const Vec2& p : z)
        if (norm(p) < tiny)
            throw std::domain_error("moment_identity_residuals: degenerate sample near origin");

    constexpr double inv2pi = 1.0 / (2.0 * std::numbers::pi);
    MomentReport rep;
    rep.residuals.push_back(estimate("r1", n, [&](std::size_t i) {
        return 4.0 * nu - z[i].x * zeta[i].x - a * inv2pi * z[i].y * zeta[i].x / norm2(z[i]);
    }));
    rep.residuals.push_back(estimate("r2", n, [&](std::size_t i) {
        return -zeta[i].x * z[i].y + a * inv2pi * zeta[i].x * z[i].x / norm2(z[i]);
    }));
    if (a == 0.0) {
        rep.residuals.push_back(estimate("r3", n, [&](std::size_t i) {
            return xi[i].x * z[i].y + 1.0 / (4.0 * std::numbers::pi);
        }));
        // Gaussian-hypothesis contradiction equation; reported, not gated.
        const double m_xi2 = estimate("", n, [&](std::size_t i) { return xi[i].x * xi[i].x; }).value;
        const NamedEstimate cov = estimate("", n, [&](std::size_t i) { return xi[i].x * z[i].y; });
        const double r4 = 4.0 * nu * m_xi2 -
                          2.0 * (4.0 * nu * m_xi2 + 2.0 * cov.value * cov.value) -
                          3.0 / (4.0 * std::numbers::pi) * cov.value;
        rep.residuals.push_back({"r4", r4, cov.std_error});
    }

    // Empirical correlations of zeta_1 with Z_1 and Z_2 (the proof's beta, gamma).
    double mz1 = 0, mz2 = 0, mze = 0, vz1 = 0, vz2 = 0, vze = 0, c1 = 0, c2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mz1 += z[i].x; mz2 += z[i].y; mze += zeta[i].x;
    }
    mz1 /= double(n); mz2 /= double(n); mze /= double(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dz1 = z[i].x - mz1, dz2 = z[i].y - mz2, dze = zeta[i].x - mze;
        vz1 += dz1 * dz1; vz2 += dz2 * dz2; vze += dze * dze;
        c1 += dze * dz1; c2 += dze * dz2;
    }
    rep.corr_zeta1_z1 = c1 / std::sqrt(vze * vz1);
    rep.corr_zeta1_z2 = c2 / std::sqrt(vze * vz2);
    return rep;
}

} // namespace vortexlab
