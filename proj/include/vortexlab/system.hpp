#ifndef VORTEXLAB_SYSTEM_HPP
#define VORTEXLAB_SYSTEM_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vortexlab/rng.hpp"
#include "vortexlab/vec2.hpp"

namespace vortexlab {

/// Which SDE the integrator advances.
///   Original   n vortices, Brownian + pairwise kernel drift (Euler step)
///   Rescaled   self-similar variables: kernel drift + linear pull -z/2
///   Difference two-vortex difference process, drift +a K, noise 2 sqrt(nu)
///   Reversed   time-reversed difference process, drift -a K
///   Ou         no interaction (a = 0)
enum class Variant { Original, Rescaled, Difference, Reversed, Ou };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

/// Physical model: particle count, vorticities, viscosity, SDE variant.
/// Difference/Reversed/Ou collapse to one effective particle whose scalar
/// interaction strength is a[0].
struct SystemSpec {
    std::size_t n = 1;
    std::vector<double> a;
    double nu = 1.0;
    Variant variant = Variant::Rescaled;

    static SystemSpec original(std::vector<double> vorticities, double nu);
    static SystemSpec rescaled(std::vector<double> vorticities, double nu);
    static SystemSpec difference(double a_sum, double nu);
    static SystemSpec reversed(double a_sum, double nu);
    static SystemSpec ou(double nu);

    void validate() const;
    /// Noise coefficient per particle: sqrt(2 nu) for the n-vortex systems,
    /// 2 sqrt(nu) for the collapsed two-vortex variants.
    double sigma_eff() const;
    bool pairwise() const { return variant == Variant::Original || variant == Variant::Rescaled; }
};

/// Numerical controls for one simulation.
struct SimParams {
    double dt = 1e-3;
    double horizon = 1.0;
    double eps = 1e-2;
    std::size_t replicas = 1;
    std::uint64_t master_seed = 0;
    unsigned threads = 0; // 0 = hardware concurrency

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("SimParams: dt must be > 0");
        if (!(horizon > 0.0)) throw std::invalid_argument("SimParams: horizon must be > 0");
        if (dt > horizon) throw std::invalid_argument("SimParams: dt must be <= horizon");
        if (!(eps > 0.0)) throw std::invalid_argument("SimParams: eps must be > 0");
        if (replicas < 1) throw std::invalid_argument("SimParams: replicas must be >= 1");
    }
};

/// M replicas of an n-particle configuration plus their stream lineage.
class StateBatch {
public:
    StateBatch(std::size_t n_particles, std::size_t n_replicas, std::uint64_t master_seed)
        : n_(n_particles), positions_(n_particles * n_replicas),
          streams_(make_streams(master_seed, n_replicas)) {}

    std::size_t particles() const { return n_; }
    std::size_t replicas() const { return streams_.size(); }
    double time = 0.0;

    std::span<Vec2> replica(std::size_t r) { return {positions_.data() + r * n_, n_}; }
    std::span<const Vec2> replica(std::size_t r) const { return {positions_.data() + r * n_, n_}; }
    RngStream& stream(std::size_t r) { return streams_[r]; }

    std::span<const Vec2> flat() const { return positions_; }

private:
    std::size_t n_;
    std::vector<Vec2> positions_;
    std::vector<RngStream> streams_;
};

/// Draws initial configurations; deterministic per replica stream.
class InitSampler {
public:
    /// Every replica starts at exactly `z0`.
    static InitSampler point(std::vector<Vec2> z0);
    /// Independent N(mean_i, sigma2 I) per particle.
    static InitSampler gaussian(std::vector<Vec2> means, double sigma2);
    /// The stationary law of the variant: N(0, 2 nu I) per particle for the
    /// rescaled system, N(0, 4 nu I) for the collapsed two-vortex variants.
    static InitSampler stationary(const SystemSpec& spec);

    void sample(RngStream& stream, std::span<Vec2> out) const;
    std::size_t particles() const { return means_.size(); }

private:
    std::vector<Vec2> means_;
    double sigma2_ = 0.0;
};

} // namespace vortexlab

#endif
