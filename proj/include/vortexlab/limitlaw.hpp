#ifndef VORTEXLAB_LIMITLAW_HPP
#define VORTEXLAB_LIMITLAW_HPP

#include <vector>

#include "vortexlab/observables.hpp"

namespace vortexlab {

/// One draw of the stationary triplet: the start point of the reversed
/// process and its two e^{-s/2}-weighted path integrals up to truncation_T.
struct TripletSample {
    Vec2 zbar0{};
    Vec2 drift_int{};  // int e^{-s/2} (Zbar_s / sqrt(4 nu) ds - dB_s)
    Vec2 kernel_int{}; // int e^{-s/2} K(Zbar_s) ds
    double truncation_T = 0.0;
};

/// One draw of the two-vortex limit configuration in R^4.
struct LimitPairSample {
    Vec2 z1{};
    Vec2 z2{};
};

/// Accumulates the forward-weighted integrals of the triplet along a
/// single-particle path: I += (integrated e^{-s/2} weight) * increment.
class ForwardIntegralObserver final : public PathObserver {
public:
    ForwardIntegralObserver(std::size_t replicas, double nu, double eps);

    void begin_path(std::size_t replica, std::span<const Vec2> state0) override;
    void after_step(const PathContext& ctx) override;

    TripletSample triplet(std::size_t replica, double truncation) const;

private:
    double inv_sqrt_4nu_;
    Regularization reg_;
    std::vector<Vec2> zbar0_, drift_, kernel_;
};

/// Samples the stationary triplet law: reversed-drift dynamics from the
/// stationary Gaussian start, integrals truncated at t_trunc (tail decays
/// like e^{-t_trunc/4} in every moment).
std::vector<TripletSample> sample_mu_inf(double nu, double a, const SimParams& params,
                                         double t_trunc);

/// Samples the limiting law of the two-vortex configuration: half-difference
/// from the stationary start, a common Gaussian N(0, nu I) column, and the
/// kernel integral weighted by (a2 - a1)/2.  Equal vorticities need no path
/// integral and sample the exact Gaussian limit directly.
std::vector<LimitPairSample> sample_limit12(double a1, double a2, double nu,
                                            const SimParams& params, double t_trunc);

/// Matched triplet batches whose equality in law is the time-reversal
/// statement: `forward` accumulates the e^{(s-t)/2}-weighted integrals along
/// the +aK dynamics from a stationary start; `reversed` the forward-weighted
/// integrals along the -aK dynamics. Independent seeds per side.
struct ReversalPair {
    std::vector<TripletSample> forward;
    std::vector<TripletSample> reversed;
};
ReversalPair time_reversal_pair(double a, double nu, double t, const SimParams& params);

/// Same construction, but with the reversed-side kernel drift sign flipped
/// to +aK; used as the power control (the batches then differ in law).
ReversalPair time_reversal_pair_controlled(double a, double nu, double t,
                                           const SimParams& params,
                                           bool flip_reversed_sign);

/// Right-hand side of the closed-form bound on E[sup_{s<=t} R_s^2].
double collision_sup_r2_bound(std::span<const Vec2> z0, std::span<const double> a,
                              double nu, double t);

/// Closed-form upper bound on P(min pairwise distance <= eps before t).
double collision_probability_bound(std::span<const Vec2> z0, std::span<const double> a,
                                   double nu, double eps, double t);

struct CollisionBoundRow {
    double eps = 0.0;
    double p_emp = 0.0;
    double std_error = 0.0;
    double bound = 0.0;
};

/// Empirical hitting probabilities of the pairwise-distance thresholds
/// against the closed-form bound. One simulation resolves every threshold:
/// its regularization is min(eps)/10, below eps/10 for each requested eps.
std::vector<CollisionBoundRow> collision_bound_experiment(
    std::span<const Vec2> z0, std::span<const double> a, double nu,
    std::span<const double> eps_list, double t, const SimParams& params);

} // namespace vortexlab

#endif
