#include "vortexlab/limitlaw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vortexlab {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 finalizer over seed ^ salt
    std::uint64_t z = (seed ^ salt) + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

ForwardIntegralObserver::ForwardIntegralObserver(std::size_t replicas, double nu, double eps)
    : inv_sqrt_4nu_(1.0 / std::sqrt(4.0 * nu)), reg_(eps), zbar0_(replicas),
      drift_(replicas), kernel_(replicas) {}

void ForwardIntegralObserver::begin_path(std::size_t replica, std::span<const Vec2> state0) {
    zbar0_[replica] = state0[0];
    drift_[replica] = Vec2{};
    kernel_[replica] = Vec2{};
}

void ForwardIntegralObserver::after_step(const PathContext& ctx) {
    const double e0 = std::exp(-0.5 * ctx.t0);
    const double e1 = std::exp(-0.5 * ctx.t1);
    const double w_ds = 2.0 * (e0 - e1);              // integral of e^{-s/2} over the step
    const double w_db = e0 * std::sqrt(1.0 - std::exp(-ctx.h));
    drift_[ctx.replica] += (w_ds * inv_sqrt_4nu_) * ctx.before[0] - w_db * ctx.gauss[0];
    kernel_[ctx.replica] += w_ds * k_eps(ctx.before[0], reg_);
}

TripletSample ForwardIntegralObserver::triplet(std::size_t replica, double truncation) const {
    return {zbar0_[replica], drift_[replica], kernel_[replica], truncation};
}

std::vector<TripletSample> sample_mu_inf(double nu, double a, const SimParams& params,
                                         double t_trunc) {
    if (!(t_trunc >= 10.0)) throw std::invalid_argument("sample_mu_inf: t_trunc must be >= 10");
    const SystemSpec spec = SystemSpec::reversed(a, nu);
    SimParams p = params;
    p.horizon = t_trunc;
    ForwardIntegralObserver obs(p.replicas, nu, p.eps);
    PathObserver* obs_list[] = {&obs};
    simulate(spec, InitSampler::stationary(spec), p, obs_list);
    std::vector<TripletSample> out(p.replicas);
    for (std::size_t r = 0; r < p.replicas; ++r) out[r] = obs.triplet(r, t_trunc);
    return out;
}

std::vector<LimitPairSample> sample_limit12(double a1, double a2, double nu,
                                            const SimParams& params, double t_trunc) {
    if (!(t_trunc >= 10.0)) throw std::invalid_argument("sample_limit12: t_trunc must be >= 10");
    std::vector<LimitPairSample> out(params.replicas);
    const double sd_half = std::sqrt(nu); // |Zbar0/2| column: N(0, nu I)
    if (a1 == a2) {
        // The kernel column has zero coefficient; the limit is the exact
        // Gaussian product of Zbar0/2 and the perpendicular noise column.
        for (std::size_t r = 0; r < params.replicas; ++r) {
            RngStream stream(params.master_seed, r);
            const Vec2 half_diff = sd_half * stream.normal_pair();
            const Vec2 g_perp = sd_half * stream.normal_pair();
            out[r] = {half_diff + g_perp, -1.0 * half_diff + g_perp};
        }
        return out;
    }
    const double coeff = 0.5 * (a2 - a1);
    const SystemSpec spec = SystemSpec::reversed(a1 + a2, nu);
    SimParams p = params;
    p.horizon = t_trunc;
    ForwardIntegralObserver obs(p.replicas, nu, p.eps);
    PathObserver* obs_list[] = {&obs};
    StateBatch end = simulate(spec, InitSampler::stationary(spec), p, obs_list);
    for (std::size_t r = 0; r < p.replicas; ++r) {
        const TripletSample tr = obs.triplet(r, t_trunc);
        const Vec2 g_perp = sd_half * end.stream(r).normal_pair();
        const Vec2 common = g_perp + coeff * tr.kernel_int;
        out[r] = {0.5 * tr.zbar0 + common, -0.5 * tr.zbar0 + common};
    }
    return out;
}

ReversalPair time_reversal_pair_controlled(double a, double nu, double t,
                                           const SimParams& params,
                                           bool flip_reversed_sign) {
    if (!(t >= 2.0)) throw std::invalid_argument("time_reversal_pair: t must be >= 2");
    ReversalPair pair;
    const double half = 0.5 * t;

    // Forward side: +aK dynamics from the stationary start over a window of
    // length t/2, with the backward-weighted integrals.
    {
        const SystemSpec spec = SystemSpec::difference(a, nu);
        SimParams p = params;
        p.horizon = half;
        FunctionalObserver obs(spec, p);
        PathObserver* obs_list[] = {&obs};
        StateBatch end = simulate(spec, InitSampler::stationary(spec), p, obs_list);
        pair.forward.resize(p.replicas);
        for (std::size_t r = 0; r < p.replicas; ++r) {
            const FunctionalSample& s = obs.sample(r);
            pair.forward[r] = {end.replica(r)[0], s.IB, s.IK, half};
        }
    }

    // Reversed side: -aK dynamics (or +aK for the power control) with the
    // forward-weighted integrals, on an independent seed.
    {
        const SystemSpec spec = flip_reversed_sign ? SystemSpec::difference(a, nu)
                                                   : SystemSpec::reversed(a, nu);
        SimParams p = params;
        p.horizon = half;
        p.master_seed = derive_seed(params.master_seed, 0x7265766572736544ull);
        ForwardIntegralObserver obs(p.replicas, nu, p.eps);
        PathObserver* obs_list[] = {&obs};
        simulate(spec, InitSampler::stationary(spec), p, obs_list);
        pair.reversed.resize(p.replicas);
        for (std::size_t r = 0; r < p.replicas; ++r) pair.reversed[r] = obs.triplet(r, half);
    }
    return pair;
}

ReversalPair time_reversal_pair(double a, double nu, double t, const SimParams& params) {
    return time_reversal_pair_controlled(a, nu, t, params, false);
}

double collision_sup_r2_bound(std::span<const Vec2> z0, std::span<const double> a,
                              double nu, double t) {
    double abs_sum = 0.0, a_max = 0.0, linear = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        abs_sum += std::abs(a[i]);
        a_max = std::max(a_max, std::abs(a[i]));
        linear += std::abs(a[i]) * (norm2(z0[i]) + 4.0 * nu * t);
    }
    const double v0 = lyapunov(z0, a);
    const double integral = v0 * (1.0 - std::exp(-t)) +
                            4.0 * nu * abs_sum * (t + std::exp(-t) - 1.0);
    return 2.0 * (linear * linear + 32.0 * nu * a_max * integral);
}

double collision_probability_bound(std::span<const Vec2> z0, std::span<const double> a,
                                   double nu, double eps, double t) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("collision_probability_bound: eps must lie in (0,1)");
    const std::size_t n = z0.size();
    double pair_term = 0.0;
    double min_prod = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            pair_term += a[i] * a[j] * (0.5 * t - std::log(norm(z0[i] - z0[j])));
            min_prod = std::min(min_prod, a[i] * a[j]);
        }
    }
    double sup_term = 0.0;
    const double sup_r2 = std::pow(collision_sup_r2_bound(z0, a, nu, t), 0.25);
    for (std::size_t i = 0; i < n; ++i) {
        double others = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) others += std::abs(a[j]);
        sup_term += std::sqrt(std::abs(a[i])) * others;
    }
    sup_term *= 2.0 * sup_r2;
    return (pair_term + sup_term) / (min_prod * std::log(1.0 / eps));
}

std::vector<CollisionBoundRow> collision_bound_experiment(
    std::span<const Vec2> z0, std::span<const double> a, double nu,
    std::span<const double> eps_list, double t, const SimParams& params) {
    if (z0.size() < 2) throw std::invalid_argument("collision_bound_experiment: need n >= 2");
    if (eps_list.empty()) throw std::invalid_argument("collision_bound_experiment: empty eps list");
    const bool all_pos = std::all_of(a.begin(), a.end(), [](double x) { return x > 0.0; });
    const bool all_neg = std::all_of(a.begin(), a.end(), [](double x) { return x < 0.0; });
    if (!all_pos && !all_neg)
        throw std::invalid_argument("collision_bound_experiment: vorticities must share one sign");
    double eps_min = eps_list[0];
    for (double e : eps_list) {
        if (!(e > 0.0 && e < 1.0))
            throw std::invalid_argument("collision_bound_experiment: eps values must lie in (0,1)");
        eps_min = std::min(eps_min, e);
    }

    const SystemSpec spec = SystemSpec::rescaled({a.begin(), a.end()}, nu);
    SimParams p = params;
    p.horizon = t;
    p.eps = eps_min / 10.0;
    MinDistanceObserver obs(p.replicas);
    PathObserver* obs_list[] = {&obs};
    simulate(spec, InitSampler::point({z0.begin(), z0.end()}), p, obs_list);

    std::vector<CollisionBoundRow> rows;
    rows.reserve(eps_list.size());
    for (double e : eps_list) {
        std::size_t hits = 0;
        for (std::size_t r = 0; r < p.replicas; ++r)
            if (obs.min_distance(r) <= e) ++hits;
        const double p_emp = double(hits) / double(p.replicas);
        const double se = std::sqrt(std::max(p_emp * (1.0 - p_emp), 1.0 / double(p.replicas)) /
                                    double(p.replicas));
        rows.push_back({e, p_emp, se, collision_probability_bound(z0, a, nu, e, t)});
    }
    return rows;
}

} // namespace vortexlab
