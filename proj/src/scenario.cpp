#include "arrowm/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>

#include "arrowm/dense_operator.hpp"
#include "arrowm/dynamics.hpp"
#include "arrowm/errors.hpp"
#include "arrowm/freeparticle.hpp"
#include "arrowm/mellin.hpp"
#include "arrowm/random_states.hpp"

namespace arrowm {
namespace fs = std::filesystem;

Subcommand parse_subcommand(const std::string& s) {
    if (s == "spectrum") return Subcommand::spectrum;
    if (s == "evolve") return Subcommand::evolve;
    if (s == "eigden") return Subcommand::eigden;
    if (s == "fig1") return Subcommand::fig1;
    if (s == "fig2") return Subcommand::fig2;
    if (s == "verify") return Subcommand::verify;
    throw DomainError("unknown subcommand '" + s + "'");
}

std::string to_string(Subcommand c) {
    switch (c) {
        case Subcommand::spectrum: return "spectrum";
        case Subcommand::evolve: return "evolve";
        case Subcommand::eigden: return "eigden";
        case Subcommand::fig1: return "fig1";
        case Subcommand::fig2: return "fig2";
        case Subcommand::verify: return "verify";
    }
    return "verify";
}

ScenarioConfig default_config(Subcommand command) {
    ScenarioConfig cfg;
    cfg.output.dir = fs::path("out") / to_string(command);
    switch (command) {
        case Subcommand::spectrum:
            cfg.grid = {1e-3, 1e3, 512};
            cfg.path = PathSelection::direct;
            break;
        case Subcommand::eigden:
            cfg.grid = {1e-18, 50.0, 4096};
            cfg.path = PathSelection::fast;
            break;
        default:
            break;
    }
    return cfg;
}

namespace {

class StageTimer {
public:
    StageTimer(Summary& summary, std::string stage)
        : summary_(summary), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
    ~StageTimer() {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
        summary_.set("time." + stage_ + "_s", dt.count());
    }

private:
    Summary& summary_;
    std::string stage_;
    std::chrono::steady_clock::time_point start_;
};

void prepare_output(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ScenarioError("cannot create output directory " + dir.string() + ": " + ec.message());
    const auto probe = dir / ".write_probe";
    {
        std::ofstream out(probe);
        if (!out) throw ScenarioError("output directory " + dir.string() + " is not writable");
    }
    fs::remove(probe, ec);
}

std::string frame_name(const std::string& stem, std::size_t k) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%03zu.csv", stem.c_str(), k);
    return buf;
}

EnergyState make_state(const ScenarioConfig& cfg, const GridPtr& grid, Summary& summary) {
    if (cfg.state == ScenarioConfig::StateKind::gaussian) {
        summary.set("state", std::string("gaussian"));
        summary.set("state.tail_mass", tail_mass(cfg.gaussian, *grid));
        return to_energy_state(cfg.gaussian, grid);
    }
    summary.set("state", std::string("eigenfunction"));
    const auto window = raised_cosine_window(*grid, cfg.eigenfunction.window);
    auto g = sample_eigenfunction(cfg.eigenfunction.m, cfg.eigenfunction.channel, grid, {"+", "-"});
    return normalized(windowed(std::move(g), window));
}

std::vector<PathKind> selected_paths(PathSelection sel) {
    switch (sel) {
        case PathSelection::direct: return {PathKind::direct};
        case PathSelection::fast: return {PathKind::fast};
        case PathSelection::both: return {PathKind::direct, PathKind::fast};
    }
    return {};
}

struct PathSet {
    std::shared_ptr<const DenseOperator> dense;
    std::vector<std::pair<PathKind, MApplier>> appliers;
};

PathSet make_paths(const ScenarioConfig& cfg, const GridPtr& grid, Summary& summary) {
    PathSet set;
    for (PathKind k : selected_paths(cfg.path)) {
        if (k == PathKind::direct) {
            StageTimer timer(summary, "build_dense");
            set.dense = std::make_shared<const DenseOperator>(grid);
            set.appliers.emplace_back(k, MApplier::direct(set.dense));
        } else {
            set.appliers.emplace_back(k, MApplier::fast(cfg.padding));
        }
    }
    return set;
}

void record_grid(const ScenarioConfig& cfg, Summary& summary) {
    summary.set("grid.e_min", cfg.grid.e_min);
    summary.set("grid.e_max", cfg.grid.e_max);
    summary.set("grid.n", cfg.grid.n);
    summary.set("path", to_string(cfg.path));
}

// --- spectrum ---------------------------------------------------------------

ScenarioResult run_spectrum(const ScenarioConfig& cfg) {
    ScenarioResult res;
    auto& s = res.summary;
    record_grid(cfg, s);
    const auto grid = make_log_grid(cfg.grid.e_min, cfg.grid.e_max, cfg.grid.n);
    std::vector<double> ev;
    double herm = 0.0;
    {
        StageTimer timer(s, "spectrum");
        const DenseOperator op(grid);
        herm = op.hermiticity_residual();
        ev = dense_spectrum(op);
    }
    CsvTable table({"index", "eigenvalue"});
    for (std::size_t i = 0; i < ev.size(); ++i) table.add_row({std::to_string(i), format_double(ev[i])});
    const auto csv = cfg.output.dir / "spectrum.csv";
    table.write(csv);
    res.files.push_back(csv);

    std::vector<std::size_t> bins(20, 0);
    for (double v : ev)
        if (v >= 0.0 && v <= 1.0) ++bins[std::min<std::size_t>(19, static_cast<std::size_t>(v / 0.05))];
    const auto empty = static_cast<std::size_t>(std::count(bins.begin(), bins.end(), 0u));

    s.set("hermiticity_residual", herm);
    s.set("eigenvalue_min", ev.front());
    s.set("eigenvalue_max", ev.back());
    s.set_bool("eigenvalues_in_range", ev.front() >= -1e-6 && ev.back() <= 1.0 + 1e-6);
    const bool hits = std::any_of(ev.begin(), ev.end(), [](double v) { return v == 0.0 || v == 1.0; });
    double gap = 1.0;
    for (double v : ev) gap = std::min({gap, std::abs(v), std::abs(1.0 - v)});
    s.set_bool("no_eigenvalue_equal_to_0_or_1", !hits);
    s.set("min_distance_to_0_or_1", gap);
    s.set("empty_bins_0.05", empty);

    if (cfg.output.svg) {
        PlotSeries series{"eigenvalues", {}, ev};
        for (std::size_t i = 0; i < ev.size(); ++i) series.x.push_back(static_cast<double>(i));
        const auto svg = cfg.output.dir / "spectrum.svg";
        write_svg_plot(svg, "Spectrum of the discretized M", "index", "eigenvalue", {&series, 1});
        res.files.push_back(svg);
    }
    return res;
}

// --- evolve / fig1 ----------------------------------------------------------

struct TrajectoryRun {
    std::vector<std::pair<PathKind, Trajectory>> runs;
    PathSet paths;
    EnergyState state;
};

TrajectoryRun run_trajectories(const ScenarioConfig& cfg, ScenarioResult& res) {
    auto& s = res.summary;
    record_grid(cfg, s);
    const auto grid = make_log_grid(cfg.grid.e_min, cfg.grid.e_max, cfg.grid.n);
    auto state = make_state(cfg, grid, s);
    s.set("state.norm", norm(state));
    auto paths = make_paths(cfg, grid, s);
    const auto times = uniform_times(cfg.times.t_start, cfg.times.t_end, cfg.times.steps);

    TrajectoryRun out{{}, std::move(paths), std::move(state)};
    CsvTable table({"t", "expectation_m", "path"});
    std::vector<PlotSeries> series;
    for (const auto& [kind, applier] : out.paths.appliers) {
        Trajectory traj;
        {
            StageTimer timer(s, "trajectory_" + to_string(kind));
            traj = trajectory(out.state, times, applier);
        }
        const std::string tag = to_string(kind);
        for (std::size_t i = 0; i < traj.times.size(); ++i)
            table.add_row({format_double(traj.times[i]), format_double(traj.values[i]), tag});
        s.set("m_t0." + tag, traj.initial_value());
        s.set("m_tend." + tag, traj.terminal_value());
        s.set("max_step_increase." + tag, traj.max_step_increase);
        s.set("monotone_violations." + tag, traj.monotone_violations.size());
        s.set_bool("monotone." + tag, traj.monotone_violations.empty());
        series.push_back({"<M>(t) " + tag, traj.times, traj.values});
        out.runs.emplace_back(kind, std::move(traj));
    }
    if (out.runs.size() == 2) {
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i)
            worst = std::max(worst, std::abs(out.runs[0].second.values[i] - out.runs[1].second.values[i]));
        s.set("dual_path_max_discrepancy", worst);
    }
    const auto csv = cfg.output.dir / "trajectory.csv";
    table.write(csv);
    res.files.push_back(csv);
    if (cfg.output.svg) {
        const auto svg = cfg.output.dir / "trajectory.svg";
        write_svg_plot(svg, "Expectation value of M along the trajectory", "t", "<M>", series);
        res.files.push_back(svg);
    }
    return out;
}

ScenarioResult run_evolve(const ScenarioConfig& cfg) {
    ScenarioResult res;
    run_trajectories(cfg, res);
    return res;
}

ScenarioResult run_fig1(const ScenarioConfig& cfg) {
    ScenarioResult res;
    auto run = run_trajectories(cfg, res);
    auto& s = res.summary;
    const double t_far = cfg.doubled_horizon * cfg.times.t_end;
    s.set("t_doubled", t_far);
    for (const auto& [kind, applier] : run.paths.appliers) {
        const std::string tag = to_string(kind);
        const auto it = std::find_if(run.runs.begin(), run.runs.end(),
                                     [k = kind](const auto& r) { return r.first == k; });
        const auto& traj = it->second;
        const double far = expectation_m(evolve(run.state, t_far), applier);
        s.set("m_doubled." + tag, far);
        s.set_bool("half_decay." + tag, traj.terminal_value() < 0.5 * traj.initial_value());
        s.set_bool("terminal_decreases." + tag, far < traj.terminal_value());
        s.set_bool("strictly_decreasing." + tag,
                   traj.max_step_increase < 0.0 && traj.monotone_violations.empty());
    }
    return res;
}

// --- eigen-density ----------------------------------------------------------

struct NuRange {
    double lo;
    double hi;
};

// Frequency extent of the spectrum of `state` (|c|^2 above 1e-20 of its peak),
// widened by a margin; explicit config bounds take precedence.
NuRange spectral_extent(const EnergyState& state, const ScenarioConfig& cfg) {
    const auto spec = forward_mellin(state, cfg.padding);
    double peak = 0.0;
    for (const auto& row : spec.coefficients)
        for (const auto& c : row) peak = std::max(peak, std::norm(c));
    double lo = 0.0, hi = 0.0;
    bool seen = false;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        double p = 0.0;
        for (const auto& row : spec.coefficients) p = std::max(p, std::norm(row[k]));
        if (p < 1e-20 * peak) continue;
        const double nu = spec.frequencies[k];
        lo = seen ? std::min(lo, nu) : nu;
        hi = seen ? std::max(hi, nu) : nu;
        seen = true;
    }
    lo -= 2.0;
    hi += 2.0;
    if (cfg.frames.nu_min) lo = *cfg.frames.nu_min;
    if (cfg.frames.nu_max) hi = *cfg.frames.nu_max;
    return {lo, hi};
}

struct DensityFrame {
    std::vector<double> m;
    std::vector<std::vector<double>> rho;
    double window_mass = 0.0;  // sampled in m
    double tail_mass = 0.0;    // outside the representable m range, integrated in nu
    double first = 0.0;

    double mass() const { return window_mass + tail_mass; }
};

DensityFrame density_frame(const EnergyState& state, const ScenarioConfig& cfg) {
    const auto full = spectral_extent(state, cfg);
    const double lo = std::max(full.lo, min_representable_frequency);
    const double hi = std::min(full.hi, max_representable_frequency);
    if (!(hi > lo)) throw ScenarioError("eigen-density: empty frequency window");
    DensityFrame fr;
    fr.m = eigenvalue_grid(lo, hi, cfg.frames.nu_points);
    fr.rho = eigen_density(state, fr.m);
    for (const auto& r : fr.rho) {
        fr.window_mass += integrate_density(fr.m, r, 0);
        fr.first += integrate_density(fr.m, r, 1);
    }
    // The tails continue the window's uniform nu grid, so the trapezoid rule sees
    // one grid across the seams.
    const double step = (hi - lo) / static_cast<double>(cfg.frames.nu_points - 1);
    auto tail = [&](double from, double beyond) {
        const auto k = static_cast<std::size_t>(std::ceil(std::abs(beyond - from) / step));
        const double to = from + (beyond > from ? 1.0 : -1.0) * static_cast<double>(k) * step;
        fr.tail_mass += frequency_mass(state, std::min(from, to), std::max(from, to), k + 1, 0);
        fr.first += frequency_mass(state, std::min(from, to), std::max(from, to), k + 1, 1);
    };
    if (full.lo < lo) tail(lo, full.lo);
    if (full.hi > hi) tail(hi, full.hi);
    return fr;
}

void write_density_csv(const fs::path& path, const EnergyState& state, const DensityFrame& fr) {
    CsvTable table({"m", "rho_plus", "rho_minus"});
    const auto idx = [&](const std::string& label) -> const std::vector<double>* {
        const auto& ch = state.channels();
        const auto it = std::find(ch.begin(), ch.end(), label);
        return it == ch.end() ? nullptr : &fr.rho[static_cast<std::size_t>(it - ch.begin())];
    };
    const auto* plus = idx("+");
    const auto* minus = idx("-");
    for (std::size_t i = 0; i < fr.m.size(); ++i)
        table.add_row({format_double(fr.m[i]), format_double(plus ? (*plus)[i] : 0.0),
                       format_double(minus ? (*minus)[i] : 0.0)});
    table.write(path);
}

ScenarioResult run_eigden(const ScenarioConfig& cfg) {
    ScenarioResult res;
    auto& s = res.summary;
    record_grid(cfg, s);
    const auto grid = make_log_grid(cfg.grid.e_min, cfg.grid.e_max, cfg.grid.n);
    const auto state = evolve(make_state(cfg, grid, s), cfg.times.t_start);
    s.set("t", cfg.times.t_start);
    DensityFrame fr;
    {
        StageTimer timer(s, "eigen_density");
        fr = density_frame(state, cfg);
    }
    const auto csv = cfg.output.dir / "eigen_density.csv";
    write_density_csv(csv, state, fr);
    res.files.push_back(csv);
    s.set("eigen_density.mass", fr.mass());
    s.set("eigen_density.window_mass", fr.window_mass);
    s.set("eigen_density.unrepresentable_mass", fr.tail_mass);
    s.set("eigen_density.first_moment", fr.first);
    auto paths = make_paths(cfg, grid, s);
    for (const auto& [kind, applier] : paths.appliers) {
        const double expectation = expectation_m(state, applier);
        s.set("expectation_m." + to_string(kind), expectation);
        s.set("moment_discrepancy." + to_string(kind), std::abs(expectation - fr.first / fr.mass()));
    }
    if (cfg.output.svg) {
        std::vector<PlotSeries> series;
        for (std::size_t c = 0; c < state.channel_count(); ++c)
            series.push_back({"rho " + state.channels()[c], fr.m, fr.rho[c]});
        const auto svg = cfg.output.dir / "eigen_density.svg";
        write_svg_plot(svg, "Eigen-density of M", "m", "rho(m)", series);
        res.files.push_back(svg);
    }
    return res;
}

// --- fig2 -------------------------------------------------------------------

ScenarioResult run_fig2(const ScenarioConfig& cfg) {
    if (cfg.state != ScenarioConfig::StateKind::gaussian)
        throw ScenarioError("fig2 needs state.kind = gaussian");
    ScenarioResult res;
    auto& s = res.summary;
    record_grid(cfg, s);
    const auto grid = make_log_grid(cfg.grid.e_min, cfg.grid.e_max, cfg.grid.n);
    const auto state0 = make_state(cfg, grid, s);
    const auto fast = MApplier::fast(cfg.padding);

    std::vector<double> times;
    if (cfg.frames.count == 1)
        times = {0.0};
    else
        times = uniform_times(0.0, cfg.frames.t_end, cfg.frames.count);

    CsvTable index({"frame", "t", "position_mass", "position_variance", "eigen_mass", "expectation_m"});
    std::vector<PlotSeries> position_series;
    StageTimer timer(s, "frames");
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        const double mean = position_mean(cfg.gaussian, t);
        const double width = position_width(cfg.gaussian, t);
        const double x_lo = mean - cfg.frames.x_span_widths * width;
        const double x_hi = mean + cfg.frames.x_span_widths * width;
        const std::size_t nx = cfg.frames.x_points;
        const double dx = (x_hi - x_lo) / static_cast<double>(nx - 1);

        CsvTable pos({"x", "density"});
        PlotSeries series{"t = " + format_double(t), {}, {}};
        double mass = 0.0, first = 0.0, second = 0.0;
        for (std::size_t i = 0; i < nx; ++i) {
            const double x = x_lo + static_cast<double>(i) * dx;
            const double d = position_density(cfg.gaussian, x, t);
            const double wq = (i == 0 || i + 1 == nx) ? 0.5 * dx : dx;
            mass += wq * d;
            first += wq * d * x;
            second += wq * d * x * x;
            pos.add_row({format_double(x), format_double(d)});
            series.x.push_back(x);
            series.y.push_back(d);
        }
        const double mu = first / mass;
        const double variance = second / mass - mu * mu;
        const auto pos_csv = cfg.output.dir / frame_name("frame_position", k);
        pos.write(pos_csv);
        res.files.push_back(pos_csv);
        position_series.push_back(std::move(series));

        const auto evolved = evolve(state0, t);
        const auto fr = density_frame(evolved, cfg);
        const auto eig_csv = cfg.output.dir / frame_name("frame_eigen", k);
        write_density_csv(eig_csv, evolved, fr);
        res.files.push_back(eig_csv);
        const double expectation = expectation_m(evolved, fast);

        index.add_row({std::to_string(k), format_double(t), format_double(mass), format_double(variance),
                       format_double(fr.mass()), format_double(expectation)});
        const std::string key = "frame." + std::to_string(k) + ".";
        s.set(key + "t", t);
        s.set(key + "position_mass", mass);
        s.set(key + "position_variance", variance);
        s.set(key + "eigen_mass", fr.mass());
        s.set(key + "eigen_window_mass", fr.window_mass);
        s.set(key + "eigen_unrepresentable_mass", fr.tail_mass);
        s.set(key + "expectation_m", expectation);
    }
    const auto idx_csv = cfg.output.dir / "frames.csv";
    index.write(idx_csv);
    res.files.push_back(idx_csv);
    if (cfg.output.svg) {
        const auto svg = cfg.output.dir / "frames_position.svg";
        write_svg_plot(svg, "|psi(x,t)|^2 frames", "x", "density", position_series);
        res.files.push_back(svg);
    }
    return res;
}

// --- verify -----------------------------------------------------------------

struct Check {
    std::string name;
    double value;
    double threshold;
    bool pass;
};

std::vector<Check> invariant_suite(const ScenarioConfig& cfg) {
    std::vector<Check> checks;
    auto upper = [&](std::string name, double value, double threshold) {
        checks.push_back({std::move(name), value, threshold, value <= threshold});
    };
    std::mt19937_64 rng(cfg.seed);

    {
        const auto g = make_log_grid(1e-4, 1e4, 4096);
        double sum = 0.0;
        for (double w : g->weights()) sum += w;
        upper("grid.weight_sum_rel_error", std::abs(sum - (1e4 - 1e-4)) / (1e4 - 1e-4), 1e-3);
        upper("grid.spacing_defect", g->spacing_defect(), 1e-12);
    }
    {
        const auto g = make_log_grid(1e-3, 1e3, 512);
        const DenseOperator op(g);
        upper("operator.hermiticity_residual", op.hermiticity_residual(), 1e-12);
        const auto ev = dense_spectrum(op);
        upper("operator.min_eigenvalue_below_zero", -ev.front(), 1e-6);
        upper("operator.max_eigenvalue_above_one", ev.back() - 1.0, 1e-6);
    }
    const auto g = make_log_grid(1e-3, 1e3, 1024);
    const auto op = std::make_shared<const DenseOperator>(g);
    {
        double dual = 0.0, round = 0.0, parseval = 0.0, mass = 0.0, moment = 0.0, imag = 0.0;
        for (int k = 0; k < 20; ++k) {
            const auto st = random_smooth_state(g, rng).state;
            const auto direct = apply_m_direct(st, *op);
            const auto fast = apply_m_fast(st, cfg.padding);
            dual = std::max(dual, norm(direct - fast) / norm(st));
            const auto spec = forward_mellin(st, cfg.padding);
            round = std::max(round, norm(inverse_mellin(spec) - st) / norm(st));
            const auto mom = spectral_moments(spec);
            parseval = std::max(parseval, std::abs(mom.mass - norm_squared(st)) / norm_squared(st));
            const cplx expect = inner_product(st, direct);
            imag = std::max(imag, std::abs(expect.imag()));
            if (k < 4) {
                const double floor = min_representable_frequency;
                // same step on both sides of the floor: 0.005
                const auto m_grid = eigenvalue_grid(floor, 30.0, 6701);
                const auto rho = eigen_density(st, m_grid);
                const double m0 = integrate_density(m_grid, rho[0], 0) + frequency_mass(st, -30.0, floor, 5301, 0);
                const double m1 = integrate_density(m_grid, rho[0], 1) + frequency_mass(st, -30.0, floor, 5301, 1);
                mass = std::max(mass, std::abs(m0 - 1.0));
                moment = std::max(moment, std::abs(m1 - expect.real()));
            }
        }
        upper("mellin.dual_path_rel_l2", dual, 1e-6);
        upper("mellin.round_trip_rel", round, 1e-12);
        upper("mellin.parseval_rel", parseval, 1e-8);
        upper("mellin.eigen_density_mass_error", mass, 1e-6);
        upper("mellin.eigen_density_first_moment_error", moment, 1e-6);
        upper("operator.expectation_imaginary_part", imag, 1e-10);
    }
    {
        const auto ge = make_log_grid(1e-12, 1e12, 2048);
        const DenseOperator ope(ge);
        const auto window = raised_cosine_window(*ge, 0.6);
        const auto mask = interior_mask(*ge, 0.3);
        double worst = 0.0;
        for (double m : {0.2, 0.5, 0.8}) {
            const auto gm = windowed(sample_eigenfunction(m, "+", ge), window);
            const auto mg = apply_m_direct(gm, ope);
            double num = 0.0, den = 0.0;
            const auto w = ge->weights();
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (!mask[i]) continue;
                num += w[i] * std::norm(mg.channel(0)[i] - m * gm.channel(0)[i]);
                den += w[i] * std::norm(gm.channel(0)[i]);
            }
            worst = std::max(worst, std::sqrt(num / den));
        }
        upper("mellin.eigenfunction_residual", worst, 1e-3);
    }
    {
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            const double e = std::pow(10.0, -1.0 + 3.0 * k / 9.0);
            const double ep = e * (k % 2 == 0 ? 1.7 : 0.45);
            const cplx kernel = cauchy_kernel(e, ep);
            worst = std::max(worst, std::abs(completeness_kernel_check(e, ep, 1e-5) - kernel) / std::abs(kernel));
        }
        upper("mellin.completeness_kernel_rel", worst, 1e-3);
    }
    {
        const auto gl = make_log_grid(1e-6, 1e2, 1024);
        const auto opl = std::make_shared<const DenseOperator>(gl);
        const auto direct = MApplier::direct(opl);
        SmoothStateSpec spec;
        spec.centre_fraction = 0.25;
        double worst = -1.0;
        for (int k = 0; k < 20; ++k) {
            const auto sm = random_smooth_state(gl, rng, spec);
            const double t_max = 1.0 / (std::exp(sm.max_log_energy) * gl->du());
            std::uniform_real_distribution<double> dist(0.0, t_max);
            std::vector<double> times(21);
            for (auto& t : times) t = dist(rng);
            std::sort(times.begin(), times.end());
            const auto traj = trajectory(sm.state, times, direct);
            for (std::size_t i = 0; i < times.size(); ++i)
                for (std::size_t j = i + 1; j < times.size(); ++j)
                    worst = std::max(worst, traj.values[j] - traj.values[i]);
        }
        upper("dynamics.lyapunov_max_increase", worst, monotonicity_tolerance);
    }
    {
        const GaussianPacketParams params{1.0, 0.64, 0.3};
        const auto gp = make_log_grid(1e-18, 50.0, 4096);
        const auto st = to_energy_state(params, gp);
        upper("freeparticle.energy_norm_error", std::abs(norm_squared(st) - 1.0), 1e-8);
        double minus = 0.0;
        const auto w = gp->weights();
        for (std::size_t i = 0; i < w.size(); ++i) minus += w[i] * std::norm(st.channel(1)[i]);
        upper("freeparticle.negative_channel_error", std::abs(minus - negative_momentum_mass(params)), 1e-4);
        const auto traj = trajectory(st, uniform_times(0.0, 20.0, 50), MApplier::fast(cfg.padding));
        upper("freeparticle.trajectory_max_step_increase", traj.max_step_increase, 0.0);
    }
    return checks;
}

ScenarioResult run_verify(const ScenarioConfig& cfg) {
    ScenarioResult res;
    auto& s = res.summary;
    std::vector<Check> checks;
    {
        StageTimer timer(s, "verify");
        checks = invariant_suite(cfg);
    }
    CsvTable table({"check", "value", "threshold", "pass"});
    std::size_t failed = 0;
    for (const auto& c : checks) {
        table.add_row({c.name, format_double(c.value), format_double(c.threshold), c.pass ? "true" : "false"});
        s.set_bool("check." + c.name, c.pass);
        if (!c.pass) ++failed;
    }
    const auto csv = cfg.output.dir / "verify.csv";
    table.write(csv);
    res.files.push_back(csv);
    s.set("checks", checks.size());
    s.set("checks_failed", failed);
    res.ok = failed == 0;
    return res;
}

}  // namespace

ScenarioResult run_scenario(Subcommand command, const ScenarioConfig& config) {
    config.validate();
    prepare_output(config.output.dir);
    ScenarioResult res;
    switch (command) {
        case Subcommand::spectrum: res = run_spectrum(config); break;
        case Subcommand::evolve: res = run_evolve(config); break;
        case Subcommand::eigden: res = run_eigden(config); break;
        case Subcommand::fig1: res = run_fig1(config); break;
        case Subcommand::fig2: res = run_fig2(config); break;
        case Subcommand::verify: res = run_verify(config); break;
    }
    res.summary.set("subcommand", to_string(command));
    res.summary.set_bool("ok", res.ok);
    const auto summary_path = config.output.dir / "summary.txt";
    res.summary.write(summary_path);
    res.files.push_back(summary_path);
    return res;
}

}  // namespace arrowm
