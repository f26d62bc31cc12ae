#include "vortexlab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "vortexlab/estimators.hpp"
#include "vortexlab/limitlaw.hpp"
#include "vortexlab/observables.hpp"
#include "vortexlab/stats_math.hpp"

namespace vortexlab {

namespace {

SimParams sim_params(const RunConfig& cfg) {
    SimParams p;
    p.dt = cfg.dt;
    p.horizon = cfg.horizon;
    p.eps = cfg.eps;
    p.replicas = cfg.replicas;
    p.master_seed = cfg.master_seed;
    return p;
}

// Unit-circle starting configuration with distinct positions.
std::vector<Vec2> circle_init(std::size_t n) {
    std::vector<Vec2> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double th = 2.0 * std::numbers::pi * double(i) / double(n);
        z[i] = {std::cos(th), std::sin(th)};
    }
    return z;
}

SampleCloud snapshot_cloud(const SnapshotObserver& snap, std::size_t slot,
                           std::size_t replicas, std::size_t particles,
                           std::uint64_t seed) {
    SampleCloud c;
    c.n = replicas;
    c.d = 2 * particles;
    c.seed = seed;
    c.points.resize(c.n * c.d);
    for (std::size_t r = 0; r < replicas; ++r) {
        const auto z = snap.at(slot, r);
        for (std::size_t i = 0; i < particles; ++i) {
            c.points[r * c.d + 2 * i] = z[i].x;
            c.points[r * c.d + 2 * i + 1] = z[i].y;
        }
    }
    return c;
}

SampleCloud triplet_cloud(std::span<const TripletSample> batch, std::uint64_t seed) {
    SampleCloud c;
    c.n = batch.size();
    c.d = 6;
    c.seed = seed;
    c.points.resize(c.n * 6);
    for (std::size_t i = 0; i < c.n; ++i) {
        double* row = c.points.data() + 6 * i;
        row[0] = batch[i].zbar0.x;
        row[1] = batch[i].zbar0.y;
        row[2] = batch[i].drift_int.x;
        row[3] = batch[i].drift_int.y;
        row[4] = batch[i].kernel_int.x;
        row[5] = batch[i].kernel_int.y;
    }
    return c;
}

// ---- stationarity (equal-vorticity invariant Gaussian) --------------------

CommandResult cmd_stationarity(const RunConfig& cfg) {
    const SystemSpec spec = SystemSpec::rescaled(cfg.a, cfg.nu);
    SimParams p = sim_params(cfg);
    const std::vector<double> times{0.5 * cfg.horizon, cfg.horizon};
    SnapshotObserver snap(times, p.replicas, spec.n);
    PathObserver* obs[] = {&snap};
    simulate(spec, InitSampler::stationary(spec), p, obs, times);

    CsvBuilder csv({"t", "var_min", "var_max", "var_target", "var_se", "max_abs_cross_cov",
                    "cross_se", "mardia_p"});
    bool pass = true;
    const double var_target = 2.0 * cfg.nu;
    for (std::size_t s = 0; s < times.size(); ++s) {
        const SampleCloud cloud =
            snapshot_cloud(snap, s, p.replicas, spec.n, cfg.master_seed);
        double vmin = std::numeric_limits<double>::infinity(), vmax = 0.0;
        std::vector<MeanSe> stats(cloud.d);
        for (std::size_t k = 0; k < cloud.d; ++k) {
            std::vector<double> col(cloud.n);
            for (std::size_t i = 0; i < cloud.n; ++i) col[i] = cloud.row(i)[k];
            stats[k] = mean_se(col);
            vmin = std::min(vmin, stats[k].var);
            vmax = std::max(vmax, stats[k].var);
        }
        const double var_se = var_target * std::sqrt(2.0 / double(cloud.n));
        double max_cross = 0.0;
        for (std::size_t k = 0; k < cloud.d; ++k)
            for (std::size_t l = k + 1; l < cloud.d; ++l) {
                double acc = 0.0;
                for (std::size_t i = 0; i < cloud.n; ++i)
                    acc += (cloud.row(i)[k] - stats[k].mean) * (cloud.row(i)[l] - stats[l].mean);
                max_cross = std::max(max_cross, std::abs(acc / double(cloud.n)));
            }
        const double cross_se = var_target / std::sqrt(double(cloud.n));
        double mardia_p = std::numeric_limits<double>::quiet_NaN();
        if (cloud.d <= 8 && cloud.n >= 500) {
            mardia_p = mardia_normality(cloud).p_value;
            if (mardia_p < 0.01) pass = false;
        }
        if (vmax - var_target > 4.0 * var_se || var_target - vmin > 4.0 * var_se) pass = false;
        if (max_cross > 4.0 * cross_se) pass = false;
        csv.add_row({CsvBuilder::cell(times[s]), CsvBuilder::cell(vmin), CsvBuilder::cell(vmax),
                     CsvBuilder::cell(var_target), CsvBuilder::cell(var_se),
                     CsvBuilder::cell(max_cross), CsvBuilder::cell(cross_se),
                     CsvBuilder::cell(mardia_p)});
    }
    return {{{"stationarity.csv", csv.str()}}, pass};
}

// ---- entropy-decay ---------------------------------------------------------

CommandResult cmd_entropy_decay(const RunConfig& cfg) {
    const double a = cfg.a_sum();
    const SystemSpec spec = a == 0.0 ? SystemSpec::ou(cfg.nu)
                                     : SystemSpec::difference(a, cfg.nu);
    SimParams p = sim_params(cfg);
    const Vec2 init_mean{2.0, 0.0};
    const double h0 = norm2(init_mean) / (8.0 * cfg.nu);
    std::vector<double> times;
    for (int i = 1; i <= 4; ++i) times.push_back(cfg.horizon * double(i) / 4.0);
    SnapshotObserver snap(times, p.replicas, 1);
    PathObserver* obs[] = {&snap};
    simulate(spec, InitSampler::gaussian({init_mean}, 4.0 * cfg.nu), p, obs, times);

    CsvBuilder csv({"t", "entropy_estimate", "std_error", "target"});
    const std::vector<double> zero{0.0, 0.0};
    std::vector<double> fit_t, fit_h;
    bool pass = true;
    for (std::size_t s = 0; s < times.size(); ++s) {
        const SampleCloud cloud = snapshot_cloud(snap, s, p.replicas, 1, cfg.master_seed);
        const StatReport rep = relative_entropy_vs_gaussian(cloud, zero, 4.0 * cfg.nu, cfg.k);
        const double target = h0 * std::exp(-times[s]);
        csv.add_row({CsvBuilder::cell(times[s]), CsvBuilder::cell(rep.estimate),
                     CsvBuilder::cell(rep.std_error), CsvBuilder::cell(target)});
        // points below the estimator noise floor carry no rate information
        if (rep.estimate > 2.0 * rep.std_error) {
            fit_t.push_back(times[s]);
            fit_h.push_back(rep.estimate);
        }
        if (a == 0.0) {
            if (std::abs(rep.estimate - target) > 0.10 * target + 3.0 * rep.std_error) pass = false;
        } else {
            if (rep.estimate > 1.10 * target + 3.0 * rep.std_error) pass = false;
        }
    }
    double rate_est = std::numeric_limits<double>::quiet_NaN();
    double rate_se = std::numeric_limits<double>::quiet_NaN();
    if (fit_t.size() >= 4) {
        const StatReport rate = fit_exponential_rate(fit_t, fit_h);
        rate_est = rate.estimate;
        rate_se = rate.std_error;
        if (a == 0.0 && (rate_est < 0.85 || rate_est > 1.15)) pass = false;
    }
    CsvBuilder rate_csv({"rate", "std_error", "h0", "points_used"});
    rate_csv.add_row({CsvBuilder::cell(rate_est), CsvBuilder::cell(rate_se),
                      CsvBuilder::cell(h0), CsvBuilder::cell(double(fit_t.size()))});
    return {{{"entropy.csv", csv.str()}, {"rate.csv", rate_csv.str()}}, pass};
}

// ---- radius-law ------------------------------------------------------------

CommandResult cmd_radius_law(const RunConfig& cfg) {
    const SystemSpec spec = SystemSpec::rescaled(cfg.a, cfg.nu);
    SimParams p = sim_params(cfg);
    const std::vector<Vec2> z0 = circle_init(spec.n);
    std::vector<double> times;
    for (double f : {0.05, 0.1, 0.2, 0.4, 0.7, 1.0}) times.push_back(cfg.horizon * f);
    TraceObserver trace(times, p.replicas, spec.a, TraceObserver::Lyapunov);
    PathObserver* obs[] = {&trace};
    simulate(spec, InitSampler::point(z0), p, obs, times);

    CsvBuilder csv({"t", "empirical_mean_R", "closed_form", "std_error"});
    bool pass = true;
    for (std::size_t s = 0; s < times.size(); ++s) {
        std::vector<double> vals(trace.lyapunov_trace().begin() + s * p.replicas,
                                 trace.lyapunov_trace().begin() + (s + 1) * p.replicas);
        const MeanSe st = mean_se(vals);
        const double target = expected_radius(z0, spec.a, cfg.nu, times[s]);
        if (std::abs(st.mean - target) > 4.0 * st.se) pass = false;
        csv.add_row({CsvBuilder::cell(times[s]), CsvBuilder::cell(st.mean),
                     CsvBuilder::cell(target), CsvBuilder::cell(st.se)});
    }
    return {{{"radius_law.csv", csv.str()}}, pass};
}

// ---- pairlog ---------------------------------------------------------------

CommandResult cmd_pairlog(const RunConfig& cfg) {
    if (cfg.n != 2) throw ConfigError("pairlog: needs n=2");
    const SystemSpec spec = SystemSpec::rescaled(cfg.a, cfg.nu);
    SimParams p = sim_params(cfg);
    // drift window: short enough that near-origin excursions stay below noise
    const double window = std::min(cfg.horizon, 0.1);
    p.horizon = window;
    std::vector<double> times;
    for (int i = 1; i <= 10; ++i) times.push_back(window * double(i) / 10.0);
    const std::vector<Vec2> z0{{1.0, 0.0}, {-1.0, 0.0}};
    TraceObserver trace(times, p.replicas, spec.a, TraceObserver::PairLog);
    MinDistanceObserver mind(p.replicas);
    PathObserver* obs[] = {&trace, &mind};
    simulate(spec, InitSampler::point(z0), p, obs, times);

    const double m0 = pair_log(z0, spec.a);
    const double target = -cfg.a[0] * cfg.a[1]; // -(1/2) * 2 a1 a2
    std::vector<double> ts{0.0};
    ts.insert(ts.end(), times.begin(), times.end());
    std::vector<double> slopes;
    std::size_t regularized = 0;
    for (std::size_t r = 0; r < p.replicas; ++r) {
        if (mind.min_distance(r) <= cfg.eps) {
            ++regularized;
            continue;
        }
        std::vector<double> ys{m0};
        for (std::size_t s = 0; s < times.size(); ++s)
            ys.push_back(trace.pair_log_trace()[s * p.replicas + r]);
        slopes.push_back(fit_line(ts, ys).slope);
    }
    const double fraction = double(regularized) / double(p.replicas);
    const MeanSe st = mean_se(slopes);
    const bool pass = std::abs(st.mean - target) <= 4.0 * st.se && fraction < 0.01;

    CsvBuilder mean_csv({"t", "mean_pair_log", "std_error"});
    mean_csv.add_row({CsvBuilder::cell(0.0), CsvBuilder::cell(m0), CsvBuilder::cell(0.0)});
    for (std::size_t s = 0; s < times.size(); ++s) {
        std::vector<double> vals(trace.pair_log_trace().begin() + s * p.replicas,
                                 trace.pair_log_trace().begin() + (s + 1) * p.replicas);
        const MeanSe m = mean_se(vals);
        mean_csv.add_row({CsvBuilder::cell(times[s]), CsvBuilder::cell(m.mean),
                          CsvBuilder::cell(m.se)});
    }
    CsvBuilder slope_csv({"slope", "std_error", "target", "fraction_regularized"});
    slope_csv.add_row({CsvBuilder::cell(st.mean), CsvBuilder::cell(st.se),
                       CsvBuilder::cell(target), CsvBuilder::cell(fraction)});
    return {{{"pairlog.csv", mean_csv.str()}, {"pairlog_slope.csv", slope_csv.str()}}, pass};
}

// ---- moments ---------------------------------------------------------------

CommandResult cmd_moments(const RunConfig& cfg) {
    const double a = cfg.a_sum();
    const SystemSpec spec = a == 0.0 ? SystemSpec::ou(cfg.nu)
                                     : SystemSpec::difference(a, cfg.nu);
    SimParams p = sim_params(cfg);
    FunctionalObserver fo(spec, p);
    PathObserver* obs[] = {&fo};
    StateBatch end = simulate(spec, InitSampler::stationary(spec), p, obs);

    std::vector<Vec2> z(p.replicas), zeta(p.replicas), xi(p.replicas);
    for (std::size_t r = 0; r < p.replicas; ++r) {
        z[r] = end.replica(r)[0];
        zeta[r] = fo.sample(r).zeta;
        xi[r] = fo.sample(r).xi;
    }
    const MomentReport rep = moment_identity_residuals(z, zeta, xi, a, cfg.nu);

    CsvBuilder csv({"name", "estimate", "std_error", "target", "gated"});
    bool pass = true;
    for (const NamedEstimate& e : rep.residuals) {
        const bool gated = e.name != "r4";
        double target = 0.0;
        if (gated && std::abs(e.value - target) > 4.0 * e.std_error) pass = false;
        csv.add_row({e.name, CsvBuilder::cell(e.value), CsvBuilder::cell(e.std_error),
                     CsvBuilder::cell(target), gated ? "1" : "0"});
    }
    if (a == 0.0) {
        // covariance against the closed constant -1/(4 pi)
        std::vector<double> prod(p.replicas);
        for (std::size_t r = 0; r < p.replicas; ++r) prod[r] = xi[r].x * z[r].y;
        const MeanSe st = mean_se(prod);
        const double target = -1.0 / (4.0 * std::numbers::pi);
        if (std::abs(st.mean - target) > 4.0 * st.se) pass = false;
        csv.add_row({"cov_xi1_z2", CsvBuilder::cell(st.mean), CsvBuilder::cell(st.se),
                     CsvBuilder::cell(target), "1"});
    }
    csv.add_row({"beta", CsvBuilder::cell(rep.corr_zeta1_z1), CsvBuilder::cell(0.0),
                 CsvBuilder::cell(std::numeric_limits<double>::quiet_NaN()), "0"});
    csv.add_row({"gamma", CsvBuilder::cell(rep.corr_zeta1_z2), CsvBuilder::cell(0.0),
                 CsvBuilder::cell(std::numeric_limits<double>::quiet_NaN()), "0"});
    return {{{"moments.csv", csv.str()}}, pass};
}

// ---- limit-law --------------------------------------------------------------

CommandResult cmd_limit_law(const RunConfig& cfg) {
    if (cfg.n != 2) throw ConfigError("limit-law: needs n=2");
    SimParams p = sim_params(cfg);
    const auto batch = sample_limit12(cfg.a[0], cfg.a[1], cfg.nu, p, cfg.t_trunc);

    SampleCloud cloud;
    cloud.n = batch.size();
    cloud.d = 4;
    cloud.seed = cfg.master_seed;
    cloud.points.resize(cloud.n * 4);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        double* row = cloud.points.data() + 4 * i;
        row[0] = batch[i].z1.x;
        row[1] = batch[i].z1.y;
        row[2] = batch[i].z2.x;
        row[3] = batch[i].z2.y;
    }
    const MardiaStats st = mardia_stats(cloud);
    const bool equal = cfg.a[0] == cfg.a[1];

    // Gated claims: the difference column is N(0, 4 nu I) by construction,
    // a1 z1 + a2 z2 is Gaussian with its closed-form variance, and the
    // equal-vorticity law is jointly Gaussian. (Mardia on the joint law is
    // reported either way; its rejection is not gated for unequal
    // vorticities, whose deviation sits below Mardia's resolution.)
    bool pass = true;
    CsvBuilder checks({"name", "estimate", "std_error", "target", "gated"});
    const auto gate_moment = [&](const std::string& name, std::span<const double> vals,
                                 double target) {
        const MeanSe ms = mean_se(vals);
        if (std::abs(ms.mean - target) > 4.0 * ms.se) pass = false;
        checks.add_row({name, CsvBuilder::cell(ms.mean), CsvBuilder::cell(ms.se),
                        CsvBuilder::cell(target), "1"});
    };
    std::vector<double> col(batch.size());
    for (int c = 0; c < 2; ++c) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const Vec2 d = batch[i].z1 - batch[i].z2;
            col[i] = c == 0 ? d.x : d.y;
        }
        gate_moment(c == 0 ? "diff_mean_x" : "diff_mean_y", col, 0.0);
        for (auto& v : col) v = v * v;
        gate_moment(c == 0 ? "diff_sqmean_x" : "diff_sqmean_y", col, 4.0 * cfg.nu);
    }
    SampleCloud lin;
    lin.n = batch.size();
    lin.d = 2;
    lin.seed = cfg.master_seed;
    lin.points.resize(2 * lin.n);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        lin.points[2 * i] = cfg.a[0] * batch[i].z1.x + cfg.a[1] * batch[i].z2.x;
        lin.points[2 * i + 1] = cfg.a[0] * batch[i].z1.y + cfg.a[1] * batch[i].z2.y;
    }
    const double lin_var = cfg.nu * ((cfg.a[1] - cfg.a[0]) * (cfg.a[1] - cfg.a[0]) +
                                     (cfg.a[0] + cfg.a[1]) * (cfg.a[0] + cfg.a[1]));
    for (int c = 0; c < 2; ++c) {
        for (std::size_t i = 0; i < lin.n; ++i) col[i] = lin.row(i)[c] * lin.row(i)[c];
        gate_moment(c == 0 ? "lin_sqmean_x" : "lin_sqmean_y", col, lin_var);
    }
    const double lin_p = mardia_normality(lin).p_value;
    if (lin_p < 0.01) pass = false;
    checks.add_row({"lin_mardia_p", CsvBuilder::cell(lin_p), CsvBuilder::cell(0.0),
                    CsvBuilder::cell(0.01), "1"});
    if (equal && st.combined_p < 0.01) pass = false;

    CsvBuilder summary({"b1", "b2", "skew_stat", "skew_p", "kurt_z", "kurt_p", "combined_p"});
    summary.add_row({CsvBuilder::cell(st.b1), CsvBuilder::cell(st.b2),
                     CsvBuilder::cell(st.skew_stat), CsvBuilder::cell(st.skew_p),
                     CsvBuilder::cell(st.kurt_z), CsvBuilder::cell(st.kurt_p),
                     CsvBuilder::cell(st.combined_p)});

    CsvBuilder raw({"z1_x", "z1_y", "z2_x", "z2_y"});
    const std::size_t rows = std::min(cfg.n_samples, batch.size());
    for (std::size_t i = 0; i < rows; ++i)
        raw.add_row({CsvBuilder::cell(batch[i].z1.x), CsvBuilder::cell(batch[i].z1.y),
                     CsvBuilder::cell(batch[i].z2.x), CsvBuilder::cell(batch[i].z2.y)});
    return {{{"limit_summary.csv", summary.str()},
             {"limit_checks.csv", checks.str()},
             {"limit_cloud.csv", raw.str()}},
            pass};
}

// ---- reversal ----------------------------------------------------------------

CommandResult cmd_reversal(const RunConfig& cfg) {
    SimParams p = sim_params(cfg);
    p.replicas = cfg.n_samples;
    const ReversalPair pair = time_reversal_pair(cfg.a_sum(), cfg.nu, cfg.horizon, p);
    SampleCloud ca = triplet_cloud(pair.forward, cfg.master_seed);
    SampleCloud cb = triplet_cloud(pair.reversed, cfg.master_seed + 1);
    standardize_pooled(ca, cb);
    const StatReport rep = energy_distance_test(ca, cb, cfg.n_permutations, cfg.master_seed);
    CsvBuilder csv({"statistic", "p_value", "n_per_side", "n_permutations"});
    csv.add_row({CsvBuilder::cell(rep.statistic), CsvBuilder::cell(rep.p_value),
                 CsvBuilder::cell(double(cfg.n_samples)),
                 CsvBuilder::cell(double(cfg.n_permutations))});
    return {{{"reversal.csv", csv.str()}}, rep.p_value >= 0.01};
}

// ---- scaling -----------------------------------------------------------------

CommandResult cmd_scaling(const RunConfig& cfg) {
    const double t = cfg.horizon;
    const std::vector<Vec2> x0 = circle_init(cfg.n);

    SimParams orig_p = sim_params(cfg);
    orig_p.replicas = cfg.n_samples;
    orig_p.horizon = std::exp(t) - 1.0;
    const SystemSpec orig = SystemSpec::original(cfg.a, cfg.nu);
    StateBatch xs = simulate(orig, InitSampler::point(x0), orig_p);

    SimParams resc_p = sim_params(cfg);
    resc_p.replicas = cfg.n_samples;
    resc_p.horizon = t;
    resc_p.master_seed = cfg.master_seed + 1; // independent noise
    const SystemSpec resc = SystemSpec::rescaled(cfg.a, cfg.nu);
    StateBatch zs = simulate(resc, InitSampler::point(x0), resc_p);

    const double shrink = std::exp(-0.5 * t);
    SampleCloud a, b;
    a.n = b.n = cfg.n_samples;
    a.d = b.d = 2 * cfg.n;
    a.seed = cfg.master_seed;
    b.seed = cfg.master_seed + 1;
    a.points.resize(a.n * a.d);
    b.points.resize(b.n * b.d);
    for (std::size_t r = 0; r < cfg.n_samples; ++r)
        for (std::size_t i = 0; i < cfg.n; ++i) {
            a.points[r * a.d + 2 * i] = shrink * xs.replica(r)[i].x;
            a.points[r * a.d + 2 * i + 1] = shrink * xs.replica(r)[i].y;
            b.points[r * b.d + 2 * i] = zs.replica(r)[i].x;
            b.points[r * b.d + 2 * i + 1] = zs.replica(r)[i].y;
        }
    const StatReport rep = energy_distance_test(a, b, cfg.n_permutations, cfg.master_seed);
    CsvBuilder csv({"t", "statistic", "p_value", "n_per_side"});
    csv.add_row({CsvBuilder::cell(t), CsvBuilder::cell(rep.statistic),
                 CsvBuilder::cell(rep.p_value), CsvBuilder::cell(double(cfg.n_samples))});
    return {{{"scaling.csv", csv.str()}}, rep.p_value >= 0.01};
}

// ---- collision-bound -----------------------------------------------------------

CommandResult cmd_collision_bound(const RunConfig& cfg) {
    std::vector<Vec2> z0;
    if (cfg.n == 2) z0 = {{1.0, 0.0}, {-1.0, 0.0}}; // |z1 - z2| = 2
    else z0 = circle_init(cfg.n);
    const std::vector<double> eps_list{0.1, 0.05, 0.01};
    SimParams p = sim_params(cfg);
    const auto rows = collision_bound_experiment(z0, cfg.a, cfg.nu, eps_list, cfg.horizon, p);
    CsvBuilder csv({"eps", "empirical_probability", "binomial_se", "bound"});
    bool pass = true;
    for (const auto& row : rows) {
        if (row.p_emp > row.bound + 3.0 * row.std_error) pass = false;
        csv.add_row({CsvBuilder::cell(row.eps), CsvBuilder::cell(row.p_emp),
                     CsvBuilder::cell(row.std_error), CsvBuilder::cell(row.bound)});
    }
    return {{{"collision_bound.csv", csv.str()}}, pass};
}

} // namespace

CommandResult run_command(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.command == "stationarity") return cmd_stationarity(cfg);
    if (cfg.command == "entropy-decay") return cmd_entropy_decay(cfg);
    if (cfg.command == "radius-law") return cmd_radius_law(cfg);
    if (cfg.command == "pairlog") return cmd_pairlog(cfg);
    if (cfg.command == "moments") return cmd_moments(cfg);
    if (cfg.command == "limit-law") return cmd_limit_law(cfg);
    if (cfg.command == "reversal") return cmd_reversal(cfg);
    if (cfg.command == "scaling") return cmd_scaling(cfg);
    if (cfg.command == "collision-bound") return cmd_collision_bound(cfg);
    throw ConfigError("config: missing or unknown command '" + cfg.command + "'");
}

int run(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    CommandResult result;
    try {
        result = run_command(cfg);
    } catch (const SimulationError&) {
        return kExitNumerical;
    }
    const double duration =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(cfg, result, duration);
    return result.gate_pass ? kExitOk : kExitGateFailed;
}

} // namespace vortexlab
