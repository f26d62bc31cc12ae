#include "vortexlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vortexlab/parallel.hpp"

namespace vortexlab {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::Original: return "original";
        case Variant::Rescaled: return "rescaled";
        case Variant::Difference: return "difference";
        case Variant::Reversed: return "reversed";
        case Variant::Ou: return "ou";
    }
    return "?";
}

Variant variant_from_string(const std::string& s) {
    if (s == "original") return Variant::Original;
    if (s == "rescaled") return Variant::Rescaled;
    if (s == "difference") return Variant::Difference;
    if (s == "reversed") return Variant::Reversed;
    if (s == "ou") return Variant::Ou;
    throw std::invalid_argument("unknown variant '" + s + "'");
}

SystemSpec SystemSpec::original(std::vector<double> vorticities, double nu) {
    SystemSpec s{vorticities.size(), std::move(vorticities), nu, Variant::Original};
    s.validate();
    return s;
}

SystemSpec SystemSpec::rescaled(std::vector<double> vorticities, double nu) {
    SystemSpec s{vorticities.size(), std::move(vorticities), nu, Variant::Rescaled};
    s.validate();
    return s;
}

SystemSpec SystemSpec::difference(double a_sum, double nu) {
    SystemSpec s{1, {a_sum}, nu, Variant::Difference};
    s.validate();
    return s;
}

SystemSpec SystemSpec::reversed(double a_sum, double nu) {
    SystemSpec s{1, {a_sum}, nu, Variant::Reversed};
    s.validate();
    return s;
}

SystemSpec SystemSpec::ou(double nu) {
    SystemSpec s{1, {0.0}, nu, Variant::Ou};
    s.validate();
    return s;
}

void SystemSpec::validate() const {
    if (n < 1) throw std::invalid_argument("SystemSpec: n must be >= 1");
    if (a.size() != n) throw std::invalid_argument("SystemSpec: vorticity count != n");
    if (!(nu > 0.0)) throw std::invalid_argument("SystemSpec: nu must be > 0");
    if (!pairwise() && n != 1)
        throw std::invalid_argument("SystemSpec: collapsed variants are single-particle");
    if (variant == Variant::Ou && a[0] != 0.0)
        throw std::invalid_argument("SystemSpec: OU variant requires a = 0");
}

double SystemSpec::sigma_eff() const {
    return pairwise() ? std::sqrt(2.0 * nu) : 2.0 * std::sqrt(nu);
}

InitSampler InitSampler::point(std::vector<Vec2> z0) {
    InitSampler s;
    s.means_ = std::move(z0);
    s.sigma2_ = 0.0;
    return s;
}

InitSampler InitSampler::gaussian(std::vector<Vec2> means, double sigma2) {
    if (!(sigma2 >= 0.0)) throw std::invalid_argument("InitSampler: sigma2 must be >= 0");
    InitSampler s;
    s.means_ = std::move(means);
    s.sigma2_ = sigma2;
    return s;
}

InitSampler InitSampler::stationary(const SystemSpec& spec) {
    const double sigma2 = spec.pairwise() ? 2.0 * spec.nu : 4.0 * spec.nu;
    return gaussian(std::vector<Vec2>(spec.n, Vec2{0.0, 0.0}), sigma2);
}

void InitSampler::sample(RngStream& stream, std::span<Vec2> out) const {
    if (out.size() != means_.size())
        throw std::invalid_argument("InitSampler: particle count mismatch");
    if (sigma2_ == 0.0) {
        std::copy(means_.begin(), means_.end(), out.begin());
        return;
    }
    const double sd = std::sqrt(sigma2_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = means_[i] + sd * stream.normal_pair();
}

SimulationError::SimulationError(std::size_t r, double t)
    : std::runtime_error("non-finite state in replica " + std::to_string(r) +
                         " at time " + std::to_string(t)),
      replica(r), time(t) {}

void kernel_drift(const SystemSpec& spec, const Regularization& reg,
                  std::span<const Vec2> z, std::span<Vec2> out) {
    const std::size_t n = z.size();
    std::fill(out.begin(), out.end(), Vec2{0.0, 0.0});
    if (spec.pairwise()) {
        // K is odd, so each unordered pair contributes antisymmetrically.
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const Vec2 k = k_eps(z[i] - z[j], reg);
                out[i] += spec.a[j] * k;
                out[j] -= spec.a[i] * k;
            }
        }
        return;
    }
    if (spec.variant == Variant::Ou) return;
    const double sign = spec.variant == Variant::Difference ? 1.0 : -1.0;
    out[0] = (sign * spec.a[0]) * k_eps(z[0], reg);
}

namespace {

struct StepWeights {
    double h;
    double decay;        // e^{-h/2}
    double drift_weight; // integral of e^{(s-h)/2} over the step
    double noise_scale;  // std of the injected OU noise
};

StepWeights exp_weights(double h, double sigma_eff) {
    const double decay = std::exp(-0.5 * h);
    return {h, decay, 2.0 * (1.0 - decay), sigma_eff * std::sqrt(1.0 - decay * decay)};
}

// Advance one replica by one step, reusing caller scratch. Returns false if
// a coordinate went non-finite.
bool advance_replica(const SystemSpec& spec, const Regularization& reg,
                     bool euler, const StepWeights& w, double sigma_eff,
                     RngStream& stream, std::span<Vec2> z,
                     std::span<Vec2> before, std::span<Vec2> gauss,
                     std::span<Vec2> drift) {
    std::copy(z.begin(), z.end(), before.begin());
    kernel_drift(spec, reg, before, drift);
    bool ok = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
        gauss[i] = stream.normal_pair();
        z[i] = euler ? euler_update(before[i], drift[i], w.h, gauss[i], sigma_eff)
                     : w.decay * before[i] + w.drift_weight * drift[i] +
                           w.noise_scale * gauss[i];
        ok = ok && finite(z[i]);
    }
    return ok;
}

void step_batch(StateBatch& state, const SystemSpec& spec, const SimParams& params,
                bool euler) {
    spec.validate();
    params.validate();
    if (state.particles() != spec.n)
        throw std::invalid_argument("step: state/spec particle count mismatch");
    const Regularization reg(params.eps);
    const double sigma_eff = spec.sigma_eff();
    const StepWeights w = exp_weights(params.dt, sigma_eff);
    const double t0 = state.time;
    parallel_chunks(state.replicas(), [&](std::size_t b, std::size_t e) {
        std::vector<Vec2> before(spec.n), gauss(spec.n), drift(spec.n);
        for (std::size_t r = b; r < e; ++r) {
            if (!advance_replica(spec, reg, euler, w, sigma_eff, state.stream(r),
                                 state.replica(r), before, gauss, drift))
                throw SimulationError(r, t0 + params.dt);
        }
    }, params.threads);
    state.time = t0 + params.dt;
}

} // namespace

void step_rescaled(StateBatch& state, const SystemSpec& spec, const SimParams& params) {
    if (spec.variant == Variant::Original)
        throw std::invalid_argument("step_rescaled: spec must not be Original");
    step_batch(state, spec, params, false);
}

void step_original(StateBatch& state, const SystemSpec& spec, const SimParams& params) {
    if (spec.variant != Variant::Original)
        throw std::invalid_argument("step_original: spec must be Original");
    step_batch(state, spec, params, true);
}

StateBatch simulate(const SystemSpec& spec, const InitSampler& init,
                    const SimParams& params,
                    std::span<PathObserver* const> observers,
                    std::span<const double> checkpoints) {
    spec.validate();
    params.validate();
    if (init.particles() != spec.n)
        throw std::invalid_argument("simulate: init/spec particle count mismatch");

    // Step boundaries: nominal dt grid clipped to checkpoints and horizon.
    std::vector<double> events(checkpoints.begin(), checkpoints.end());
    events.push_back(params.horizon);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    for (double t : events)
        if (!(t > 0.0) || t > params.horizon + 1e-12)
            throw std::invalid_argument("simulate: checkpoints must lie in (0, horizon]");

    const Regularization reg(params.eps);
    const double sigma_eff = spec.sigma_eff();
    const bool euler = spec.variant == Variant::Original;

    StateBatch state(spec.n, params.replicas, params.master_seed);
    parallel_chunks(params.replicas, [&](std::size_t b, std::size_t e) {
        std::vector<Vec2> before(spec.n), gauss(spec.n), drift(spec.n);
        for (std::size_t r = b; r < e; ++r) {
            RngStream& stream = state.stream(r);
            auto z = state.replica(r);
            init.sample(stream, z);
            for (auto* obs : observers) obs->begin_path(r, z);
            double t = 0.0;
            std::size_t next_event = 0;
            while (next_event < events.size()) {
                double t1 = std::min(t + params.dt, events[next_event]);
                if (events[next_event] - t1 < 1e-12 * params.horizon) t1 = events[next_event];
                const double h = t1 - t;
                const StepWeights w = exp_weights(h, sigma_eff);
                if (!advance_replica(spec, reg, euler, w, sigma_eff, stream, z,
                                     before, gauss, drift))
                    throw SimulationError(r, t1);
                const PathContext ctx{r, t, t1, h, before, z, gauss, drift,
                                      euler ? sigma_eff * std::sqrt(h) : w.noise_scale,
                                      euler ? h : w.drift_weight};
                for (auto* obs : observers) obs->after_step(ctx);
                t = t1;
                if (t == events[next_event]) ++next_event;
            }
        }
    }, params.threads);
    state.time = params.horizon;
    return state;
}

double cir_exact_transition(double r0, double t, double nu, RngStream& stream) {
    if (!(t > 0.0)) throw std::domain_error("cir_exact_transition: t must be > 0");
    if (!(r0 >= 0.0)) throw std::domain_error("cir_exact_transition: r0 must be >= 0");
    const double c = 4.0 * nu * (1.0 - std::exp(-t));
    const double lambda = r0 * std::exp(-t) / c;
    const Vec2 g = stream.normal_pair();
    const double gx = g.x + std::sqrt(lambda);
    return c * (gx * gx + g.y * g.y);
}

} // namespace vortexlab
