#ifndef VORTEXLAB_KERNEL_HPP
#define VORTEXLAB_KERNEL_HPP

#include <span>
#include <stdexcept>

#include "vortexlab/vec2.hpp"

namespace vortexlab {

/// Length scale of the kernel smoothing.
struct Regularization {
    double eps;
    explicit Regularization(double e) : eps(e) {
        if (!(e > 0.0)) throw std::invalid_argument("Regularization: eps must be > 0");
    }
};

/// Singular rotational kernel z^perp / (2 pi |z|^2). Throws on z = 0.
Vec2 biot_savart(Vec2 z);

/// Radial blend: 1/2 on [0,1/2], r on [1,inf), quintic-smoothstep bridge
/// between. C^2, non-decreasing, >= 1/2 everywhere.
double blend_phi(double r);

/// d/dr of blend_phi; identically 0 on [0,1/2] and 1 on [1,inf).
double blend_phi_prime(double r);

/// Smoothed kernel: agrees with biot_savart for |z| >= eps, vanishes for
/// |z| <= eps/2, tangential everywhere, bounded by O(1/eps).
Vec2 k_eps(Vec2 z, const Regularization& lvl);

/// Residual of the product Gaussian under the n-vortex generator, divided by
/// the density: (1/2 nu) sum_{i != j} a_j K(z_i - z_j) . z_i.  Zero exactly
/// when all vorticities are equal.  Throws on coincident positions.
double stationarity_defect(std::span<const Vec2> z, std::span<const double> a,
                           double nu);

} // namespace vortexlab

#endif
