#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biaxial/frank.hpp"
#include "biaxial/hydro.hpp"

namespace biaxial {

// Flat "key = value" configuration. Every key has a default; parsing an
// empty file yields this struct as-is. write_config emits the canonical
// form (all keys, fixed order, %.17g floats) and parse_config inverts it.
struct RunConfig {
    std::string mode = "check";  // minimize | flow2d | check | ellipticity | bubble-probe
    int nx = 32, ny = 32, nz = 0;  // nz = 0 selects a 2-D grid
    double hx = 0.19634954084936207, hy = 0.19634954084936207, hz = 0.19634954084936207;
    std::string bc = "periodic";  // periodic | dirichlet
    FrankConstants k = FrankConstants::one_constant();
    double nu = 1.0;
    double dt = 1e-3;
    double horizon = 0.5;
    std::uint64_t seed = 1;
    std::string recipe = "constant";
    double amplitude = 1.0;
    double sigma = 0.0;  // bump width; 0 = one eighth of the domain
    int modes = 2;       // Fourier modes per axis for random-smooth
    std::string out = ".";
    int snapshot_every = 0;  // steps between snapshots; 0 = final only
    double eps0_sq = 0.05;
    double theta0 = 0.25;
    double c0 = 25.132741228718345;  // 8*pi
    std::vector<double> scan_radii;
    double concentration_radius = 0.5;
    double tau = 0.0;  // 0 = stability bound
    int max_iterations = 20000;
    double tolerance = 1e-6;

    GridSpec grid() const;
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

// Throws ParseError (malformed line, unknown key, bad literal) with the
// 1-based line number, or ValidationError naming the offending field.
RunConfig parse_config(const std::string& text);

std::string write_config(const RunConfig& config);

struct InitialData {
    VectorField2D u;
    DirectorPairField directors;
};

// Recipes: constant, circle-wave, taylor-green, random-smooth,
// vortex-pair, concentrated-bump. Randomness comes from SplitMix64 on
// the given seed only. 2-D velocities are projected divergence-free;
// 3-D grids get u = 0.
InitialData generate_initial(const RunConfig& config, std::uint64_t seed, const GridSpec& grid);

// Raw container mirroring the snapshot file: magic "BIAXFLD1", then
// little-endian u32 header (version, ndim, dims..., field count), then
// per field a u32 name length, the name bytes, and node_count f64
// little-endian values (x fastest).
struct Snapshot {
    std::uint32_t version = 1;
    std::uint32_t ndim = 2;
    std::vector<std::uint32_t> dims;
    std::vector<std::pair<std::string, std::vector<double>>> fields;

    bool operator==(const Snapshot&) const = default;
};

void write_snapshot(const Snapshot& snap, const std::string& path);
Snapshot read_snapshot(const std::string& path);

// Fields ux, uy, p, nx, ny, nz, mx, my, mz (time lives in the CSV).
Snapshot snapshot_from_state(const FlowState& state);
void write_snapshot(const FlowState& state, const std::string& path);

struct TimeseriesRecord {
    long step = 0;
    double time = 0.0;
    double kinetic = 0.0;
    double dirichlet_n = 0.0;
    double dirichlet_m = 0.0;
    double total = 0.0;
    double visc_dissip = 0.0;
    double dir_dissip = 0.0;
    double budget_residual = 0.0;
    double max_norm_err_n = 0.0;
    double max_norm_err_m = 0.0;
    double max_dot_nm = 0.0;
    double max_local_energy = 0.0;
    int concentration_fired = 0;
};

void write_timeseries(const std::vector<TimeseriesRecord>& records, const std::string& path);
std::vector<TimeseriesRecord> read_timeseries(const std::string& path);

}  // namespace biaxial
