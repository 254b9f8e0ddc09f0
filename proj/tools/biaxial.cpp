#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "biaxial/blowup.hpp"
#include "biaxial/io.hpp"
#include "biaxial/minimize.hpp"
#include "biaxial/poisson.hpp"

namespace {

using namespace biaxial;

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read config '" + path + "'");
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

FlowState make_state(const RunConfig& cfg, const GridSpec& grid) {
    InitialData init = generate_initial(cfg, cfg.seed, grid);
    FlowState state(grid, cfg.nu);
    state.u = std::move(init.u);
    state.directors = std::move(init.directors);
    return state;
}

int run_check(const RunConfig& cfg) {
    GridSpec grid = cfg.grid();
    FlowState state = make_state(cfg, grid);
    ConstraintResiduals res = constraint_residuals(state.directors);
    std::printf("grid: %dx%d%s, %s\n", grid.dims[0], grid.dims[1],
                grid.ndim == 3 ? ("x" + std::to_string(grid.dims[2])).c_str() : "",
                cfg.bc.c_str());
    std::printf("recipe %s, seed %llu\n", cfg.recipe.c_str(),
                static_cast<unsigned long long>(cfg.seed));
    std::printf("max | |n|-1 | = %.3e, max | |m|-1 | = %.3e, max |n.m| = %.3e\n",
                res.max_norm_err_n, res.max_norm_err_m, res.max_dot);
    if (grid.ndim == 2) std::printf("max |div u| = %.3e\n", max_abs(divergence(state.u)));
    EnergyBreakdown e = total_energy(state.directors, cfg.k);
    std::printf("elastic energy = %.17g (modified %.17g)\n", e.total, e.total_modified);
    return 0;
}

int run_ellipticity(const RunConfig& cfg) {
    QuadraticForm form = blowup_form(cfg.k);
    EllipticityMargin margin = ellipticity_margin(form, cfg.k);
    std::printf("lambda_min = %.17g\nthreshold (alpha3/2) = %.17g\n%s\n", margin.lambda_min,
                margin.threshold, margin.passes ? "PASS" : "FAIL");
    return margin.passes ? 0 : 3;
}

int run_minimize(const RunConfig& cfg) {
    GridSpec grid = cfg.grid();
    if (grid.ndim != 3)
        throw ValidationError("nz", "minimize mode needs a 3-D grid (set nz > 0)");
    MinimizeConfig mc{grid, cfg.k, cfg.tau, cfg.max_iterations, cfg.tolerance, cfg.eps0_sq,
                      cfg.scan_radii};
    InitialData init = generate_initial(cfg, cfg.seed, grid);
    MinimizeResult result = minimize(mc, init.directors);

    std::filesystem::create_directories(cfg.out);
    {
        std::ofstream os(cfg.out + "/energy_trace.txt");
        for (double e : result.energy_trace) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e);
            os << buf << '\n';
        }
    }
    FlowState final_state(grid, cfg.nu);
    final_state.directors = result.field;
    write_snapshot(final_state, cfg.out + "/final.bfld");

    ElResidual res = el_residual(result.field, cfg.k);
    std::printf("iterations %d, converged %s\n", result.iterations,
                result.converged ? "yes" : "no");
    std::printf("projected-gradient norm = %.6e, residual norm = %.6e\n", result.grad_norm,
                res.norm);
    std::printf("final energy = %.17g\n", result.energy_trace.back());
    std::printf("flagged scaled-energy entries: %zu\n", result.singular_candidates.size());
    for (const auto& s : result.singular_candidates)
        std::printf("  center (%d,%d,%d) r=%.4g value=%.6g\n", s.center[0], s.center[1],
                    s.center[2], s.radius, s.value);
    if (!result.converged) {
        std::fprintf(stderr, "minimize did not reach tolerance\n");
        return 3;
    }
    return 0;
}

int run_flow2d(const RunConfig& cfg) {
    GridSpec grid = cfg.grid();
    if (grid.ndim != 2) throw ValidationError("nz", "flow2d mode needs nz = 0");
    FlowState state = make_state(cfg, grid);
    std::filesystem::create_directories(cfg.out);

    const long steps = static_cast<long>(std::llround(cfg.horizon / cfg.dt));
    std::vector<TimeseriesRecord> records;
    auto record = [&](long step, const FlowState& s, const EnergyBudget* b) {
        TimeseriesRecord r;
        r.step = step;
        r.time = s.t;
        if (b) {
            r.kinetic = b->kinetic;
            r.dirichlet_n = b->dirichlet_n;
            r.dirichlet_m = b->dirichlet_m;
            r.total = b->total;
            r.visc_dissip = b->viscous_dissipation;
            r.dir_dissip = b->director_dissipation;
            r.budget_residual = b->residual;
        } else {
            EnergyBudget init = energy_budget(s, s, 1.0);
            r.kinetic = init.kinetic;
            r.dirichlet_n = init.dirichlet_n;
            r.dirichlet_m = init.dirichlet_m;
            r.total = init.total;
        }
        ConstraintResiduals c = constraint_residuals(s.directors);
        r.max_norm_err_n = c.max_norm_err_n;
        r.max_norm_err_m = c.max_norm_err_m;
        r.max_dot_nm = c.max_dot;
        ConcentrationReport scan = concentration_scan(s, cfg.concentration_radius, cfg.c0);
        r.max_local_energy = scan.max_local;
        r.concentration_fired = scan.fired ? 1 : 0;
        records.push_back(r);
    };

    record(0, state, nullptr);
    for (long step = 1; step <= steps; ++step) {
        FlowStepResult next = flow_step(state, cfg.dt);
        state = std::move(next.state);
        record(step, state, &next.budget);
        if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) {
            char name[64];
            std::snprintf(name, sizeof name, "/snap_%06ld.bfld", step);
            write_snapshot(state, cfg.out + name);
        }
    }
    write_snapshot(state, cfg.out + "/final.bfld");
    write_timeseries(records, cfg.out + "/timeseries.csv");
    std::printf("steps %ld, t = %.6g\n", steps, state.t);
    std::printf("final energy = %.17g (initial %.17g)\n", records.back().total,
                records.front().total);
    std::printf("max |budget residual| over run = %.6e\n", [&] {
        double m = 0.0;
        for (const auto& r : records) m = std::max(m, std::fabs(r.budget_residual));
        return m;
    }());
    const long fired = std::count_if(records.begin(), records.end(), [](const TimeseriesRecord& r) {
        return r.concentration_fired != 0;
    });
    std::printf("concentration fired on %ld of %zu records\n", fired, records.size());
    return 0;
}

// Reports disk-energy integrals of the initial data at several radii so
// a threshold c0 can be calibrated against concentrated configurations.
int run_bubble_probe(const RunConfig& cfg) {
    GridSpec grid = cfg.grid();
    if (grid.ndim != 2) throw ValidationError("nz", "bubble-probe mode needs nz = 0");
    FlowState state = make_state(cfg, grid);
    std::vector<double> radii = cfg.scan_radii;
    if (radii.empty()) radii = {cfg.concentration_radius};
    for (double r : radii) {
        ConcentrationReport rep = concentration_scan(state, r, cfg.c0);
        std::printf("r = %.6g: max local energy = %.17g at (%d,%d), c0 = %.6g -> %s\n", r,
                    rep.max_local, rep.argmax[0], rep.argmax[1], cfg.c0,
                    rep.fired ? "fired" : "quiet");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"biaxial director-field toolkit"};
    std::string mode, config_path, out_override;
    std::uint64_t seed_override = 0;
    bool have_seed = false;
    app.add_option("mode", mode, "minimize | flow2d | check | ellipticity | bubble-probe")
        ->required();
    app.add_option("--config", config_path, "configuration file")->required();
    app.add_option("--out", out_override, "output directory (overrides config)");
    auto* seed_opt = app.add_option("--seed", seed_override, "PRNG seed (overrides config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    have_seed = seed_opt->count() > 0;

    try {
        RunConfig cfg = parse_config(read_file(config_path));
        cfg.mode = mode;
        if (!out_override.empty()) cfg.out = out_override;
        if (have_seed) cfg.seed = seed_override;
        cfg.validate();

        if (mode == "check") return run_check(cfg);
        if (mode == "ellipticity") return run_ellipticity(cfg);
        if (mode == "minimize") return run_minimize(cfg);
        if (mode == "flow2d") return run_flow2d(cfg);
        if (mode == "bubble-probe") return run_bubble_probe(cfg);
        throw ValidationError("mode", "unknown mode '" + mode + "'");
    } catch (const ParseError& e) {
        std::fprintf(stderr, "config line %d: %s\n", e.line, e.what());
        return 2;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "invalid %s: %s\n", e.field.c_str(), e.what());
        return 2;
    } catch (const UnknownRecipe& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime failure: %s\n", e.what());
        return 3;
    }
}
