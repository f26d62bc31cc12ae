#include "vortexlab/kernel.hpp"

#include <cmath>
#include <numbers>

namespace vortexlab {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

// Quintic smoothstep and its derivative on [0,1].
double smoothstep5(double s) { return s * s * s * (10.0 + s * (-15.0 + 6.0 * s)); }
double smoothstep5_prime(double s) {
    const double u = s * (1.0 - s);
    return 30.0 * u * u;
}
} // namespace

Vec2 biot_savart(Vec2 z) {
    const double r2 = norm2(z);
    if (r2 == 0.0) throw std::domain_error("biot_savart: undefined at the origin");
    return (1.0 / (two_pi * r2)) * perp(z);
}

double blend_phi(double r) {
    if (r <= 0.5) return 0.5;
    if (r >= 1.0) return r;
    // phi(r) = r + (1/2 - r) (1 - S(2r - 1)); C^2 at both junctions.
    const double s = 2.0 * r - 1.0;
    return r + (0.5 - r) * (1.0 - smoothstep5(s));
}

double blend_phi_prime(double r) {
    if (r <= 0.5) return 0.0;
    if (r >= 1.0) return 1.0;
    const double s = 2.0 * r - 1.0;
    return smoothstep5(s) + s * smoothstep5_prime(s);
}

Vec2 k_eps(Vec2 z, const Regularization& lvl) {
    const double r2 = norm2(z);
    const double eps2 = lvl.eps * lvl.eps;
    if (r2 >= eps2) return (1.0 / (two_pi * r2)) * perp(z);
    if (r2 <= 0.25 * eps2) return {0.0, 0.0}; // phi' vanishes below eps/2
    const double r = std::sqrt(r2);
    const double u = r / lvl.eps;
    const double factor = blend_phi_prime(u) / (lvl.eps * blend_phi(u));
    return (factor / (two_pi * r)) * perp(z);
}

double stationarity_defect(std::span<const Vec2> z, std::span<const double> a,
                           double nu) {
    if (z.size() != a.size()) throw std::invalid_argument("stationarity_defect: size mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        for (std::size_t j = 0; j < z.size(); ++j) {
            if (j == i) continue;
            const Vec2 d = z[i] - z[j];
            if (norm2(d) == 0.0)
                throw std::domain_error("stationarity_defect: coincident positions");
            sum += a[j] * dot(biot_savart(d), z[i]);
        }
    }
    return sum / (2.0 * nu);
}

} // namespace vortexlab
