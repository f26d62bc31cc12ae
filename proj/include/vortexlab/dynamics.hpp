#ifndef VORTEXLAB_DYNAMICS_HPP
#define VORTEXLAB_DYNAMICS_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "vortexlab/kernel.hpp"
#include "vortexlab/system.hpp"

namespace vortexlab {

/// First non-finite coordinate encountered during integration.
class SimulationError : public std::runtime_error {
public:
    SimulationError(std::size_t replica, double time);
    std::size_t replica;
    double time;
};

/// Per-step view handed to observers after each update of one replica.
/// `gauss` holds the standard Gaussian pair per particle; the injected noise
/// is noise_scale * gauss[i] and the state update weighted the start-of-step
/// kernel drift by drift_weight.
struct PathContext {
    std::size_t replica;
    double t0;
    double t1;
    double h;
    std::span<const Vec2> before;
    std::span<const Vec2> after;
    std::span<const Vec2> gauss;
    std::span<const Vec2> drift;
    double noise_scale;
    double drift_weight;
};

class PathObserver {
public:
    virtual ~PathObserver() = default;
    virtual void begin_path(std::size_t replica, std::span<const Vec2> state0) { (void)replica; (void)state0; }
    virtual void after_step(const PathContext& ctx) = 0;
};

/// One exponential-integrator update for a single particle under the linear
/// pull -z/2: exact OU transition plus explicitly weighted kernel drift.
inline Vec2 exp_ou_update(Vec2 z, Vec2 drift, double h, Vec2 gauss, double sigma_eff) {
    const double decay = std::exp(-0.5 * h);
    const double drift_w = 2.0 * (1.0 - decay);
    const double noise_s = sigma_eff * std::sqrt(1.0 - decay * decay);
    return decay * z + drift_w * drift + noise_s * gauss;
}

/// Euler-Maruyama update for the unrescaled dynamics.
inline Vec2 euler_update(Vec2 x, Vec2 drift, double h, Vec2 gauss, double sigma_eff) {
    return x + h * drift + (sigma_eff * std::sqrt(h)) * gauss;
}

/// Regularized kernel drift of the variant, written into `out`.
void kernel_drift(const SystemSpec& spec, const Regularization& reg,
                  std::span<const Vec2> z, std::span<Vec2> out);

/// Advance every replica by params.dt (one step of the exponential
/// integrator). Requires a Rescaled/Difference/Reversed/Ou spec.
void step_rescaled(StateBatch& state, const SystemSpec& spec, const SimParams& params);

/// Advance every replica by params.dt (one Euler-Maruyama step).
/// Requires an Original spec.
void step_original(StateBatch& state, const SystemSpec& spec, const SimParams& params);

/// Integrate from time 0 to params.horizon, updating observers after every
/// step. Steps land exactly on each checkpoint time and on the horizon.
/// Fully deterministic given params.master_seed, at any thread count.
StateBatch simulate(const SystemSpec& spec, const InitSampler& init,
                    const SimParams& params,
                    std::span<PathObserver* const> observers = {},
                    std::span<const double> checkpoints = {});

/// Exact draw of the squared-radius transition R_t | R_0 = r0 for the
/// square-root diffusion dR = 4 sqrt(nu R) dbeta + (8 nu - R) dt: a scaled
/// noncentral chi-square with two degrees of freedom.
double cir_exact_transition(double r0, double t, double nu, RngStream& stream);

} // namespace vortexlab

#endif
