#ifndef VORTEXLAB_OBSERVABLES_HPP
#define VORTEXLAB_OBSERVABLES_HPP

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vortexlab/dynamics.hpp"

namespace vortexlab {

/// V(z) = sum_i |a_i| |z_i|^2.
double lyapunov(std::span<const Vec2> z, std::span<const double> a);

/// sum over ordered pairs i != j of a_i a_j ln |z_i - z_j|.
/// Throws on coincident positions.
double pair_log(std::span<const Vec2> z, std::span<const double> a);

/// Closed-form mean of the Lyapunov value at time t:
/// e^{-t} V(z0) + (1 - e^{-t}) 4 nu sum |a_i|.
double expected_radius(std::span<const Vec2> z0, std::span<const double> a,
                       double nu, double t);

/// Per-replica accumulated path functionals at the current time.
struct FunctionalSample {
    double R = 0.0;  // Lyapunov value
    double M = 0.0;  // pairwise log (pairwise systems only)
    Vec2 IB{};       // int_0^t e^{(s-t)/2} dB_s for the designated noise
    Vec2 IK{};       // int_0^t e^{(s-t)/2} K(Z_s) ds along the path
    Vec2 zeta{};     // 2 sqrt(nu) IB
    Vec2 xi{};       // alias of IK
};

/// Accumulates FunctionalSample per replica along simulated paths. The
/// exponentially weighted integrals are kept only for the single-particle
/// variants; R (and optionally M) track any system.
class FunctionalObserver final : public PathObserver {
public:
    FunctionalObserver(const SystemSpec& spec, const SimParams& params,
                       bool track_pair_log = false);

    void begin_path(std::size_t replica, std::span<const Vec2> state0) override;
    void after_step(const PathContext& ctx) override;

    const FunctionalSample& sample(std::size_t replica) const { return samples_[replica]; }
    std::span<const FunctionalSample> samples() const { return samples_; }

private:
    std::vector<double> a_;
    double nu_;
    Regularization reg_;
    bool track_pair_log_;
    bool single_;
    std::vector<FunctionalSample> samples_;
};

/// Running minimum over the path of the minimal pairwise distance
/// (single-particle variants: the distance to the origin).
class MinDistanceObserver final : public PathObserver {
public:
    explicit MinDistanceObserver(std::size_t replicas)
        : mins_(replicas, std::numeric_limits<double>::infinity()) {}

    void begin_path(std::size_t replica, std::span<const Vec2> state0) override;
    void after_step(const PathContext& ctx) override;

    double min_distance(std::size_t replica) const { return mins_[replica]; }
    std::span<const double> mins() const { return mins_; }

private:
    static double config_min(std::span<const Vec2> z);
    std::vector<double> mins_;
};

/// Records scalar path quantities at fixed times (which must be step
/// boundaries, i.e. passed as simulate checkpoints).
class TraceObserver final : public PathObserver {
public:
    enum Quantity { Lyapunov = 1, PairLog = 2, SquaredNorm = 4 };

    TraceObserver(std::vector<double> times, std::size_t replicas,
                  std::span<const double> vorticities, unsigned quantities);

    void begin_path(std::size_t replica, std::span<const Vec2> state0) override;
    void after_step(const PathContext& ctx) override;

    std::span<const double> times() const { return times_; }
    /// values[time_index * replicas + replica]
    std::span<const double> lyapunov_trace() const { return lyap_; }
    std::span<const double> pair_log_trace() const { return plog_; }
    std::span<const double> squared_norm_trace() const { return sqn_; }
    std::size_t replicas() const { return replicas_; }

private:
    void record(std::size_t slot, std::size_t replica, std::span<const Vec2> z);
    std::vector<double> times_;
    std::size_t replicas_;
    std::vector<double> a_;
    unsigned quantities_;
    std::vector<double> lyap_, plog_, sqn_;
};

/// Stores full particle configurations at fixed times (step boundaries).
class SnapshotObserver final : public PathObserver {
public:
    SnapshotObserver(std::vector<double> times, std::size_t replicas, std::size_t particles);

    void after_step(const PathContext& ctx) override;

    std::span<const double> times() const { return times_; }
    /// Configuration of `replica` at times[slot].
    std::span<const Vec2> at(std::size_t slot, std::size_t replica) const;

private:
    std::vector<double> times_;
    std::size_t replicas_, particles_;
    std::vector<Vec2> data_;
};

/// One estimated stationarity identity: value, Monte Carlo standard error.
struct NamedEstimate {
    std::string name;
    double value = 0.0;
    double std_error = 0.0;
};

struct MomentReport {
    std::vector<NamedEstimate> residuals;
    double corr_zeta1_z1 = 0.0; // empirical beta
    double corr_zeta1_z2 = 0.0; // empirical gamma
};

/// Estimated residuals of the stationary moment identities from batches of
/// (Z, zeta, xi) sampled at large t.  r1, r2 always; r3 (cov against
/// -1/(4 pi)) and r4 additionally when a = 0.
MomentReport moment_identity_residuals(std::span<const Vec2> z,
                                       std::span<const Vec2> zeta,
                                       std::span<const Vec2> xi, double a,
                                       double nu);

} // namespace vortexlab

#endif
