#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "biaxial/io.hpp"
#include "biaxial/poisson.hpp"
#include "biaxial/rng.hpp"

using namespace biaxial;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

RunConfig random_config(SplitMix64& rng) {
    RunConfig c;
    c.mode = (rng.next() & 1) ? "flow2d" : "check";
    c.nx = 8 + static_cast<int>(rng.next() % 24);
    c.ny = 8 + static_cast<int>(rng.next() % 24);
    c.hx = rng.uniform(0.01, 1.0);
    c.hy = rng.uniform(0.01, 1.0);
    c.bc = (rng.next() & 1) ? "dirichlet" : "periodic";
    for (int i = 0; i < 6; ++i) c.k.k[i] = rng.uniform(0.1, 4.0);
    for (int i = 6; i < 12; ++i) c.k.k[i] = rng.uniform(0.0, 4.0);
    c.nu = rng.uniform(0.1, 2.0);
    c.dt = rng.uniform(1e-5, 1e-2);
    c.horizon = rng.uniform(0.0, 1.0);
    c.seed = rng.next();
    c.amplitude = rng.uniform(0.1, 2.0);
    c.scan_radii = {rng.uniform(0.05, 0.2), rng.uniform(0.2, 0.5)};
    c.tolerance = rng.uniform(1e-9, 1e-4);
    return c;
}

}  // namespace

TEST_CASE("minimal config gets documented defaults") {
    RunConfig c = parse_config("mode = flow2d\nnu = 1.0\n");
    CHECK(c.mode == "flow2d");
    CHECK(c.nu == 1.0);
    CHECK(c.nx == 32);
    CHECK(c.eps0_sq == 0.05);
    CHECK(c.theta0 == 0.25);
    CHECK(c.c0 == doctest::Approx(8.0 * M_PI));
    CHECK(c.k.k[0] == 1.0);
    CHECK(c.k.k[6] == 0.0);
}

TEST_CASE("comments, blank lines, and spacing are tolerated") {
    RunConfig c = parse_config("# header\n\n  nx   =  16  # trailing\n\tseed=42\n");
    CHECK(c.nx == 16);
    CHECK(c.seed == 42);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_config("nx = 8\nwhat is this\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    try {
        parse_config("unknown_key = 3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
    }
    CHECK_THROWS_AS(parse_config("nx = eight\n"), ParseError);
    CHECK_THROWS_AS(parse_config("k13 = 1\n"), ParseError);
}

TEST_CASE("validation names the offending field") {
    try {
        parse_config("k1 = -1\n");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.field == "k1");
    }
    CHECK_THROWS_AS(parse_config("mode = dance\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("nx = 2\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("recipe = nonsense\n"), ValidationError);
}

TEST_CASE("canonical write/parse round trip") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        RunConfig c = random_config(rng);
        RunConfig back = parse_config(write_config(c));
        CHECK((back == c));
        // Canonical text is a fixed point.
        CHECK(write_config(back) == write_config(c));
    }
}

TEST_CASE("constant recipe") {
    RunConfig cfg;
    GridSpec g = GridSpec::periodic2d(8, 8, 0.5, 0.5);
    InitialData init = generate_initial(cfg, 1, g);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        CHECK(init.u.comp[0][i] == 0.0);
        CHECK(init.directors.n.at(i).z == 1.0);
        CHECK(init.directors.m.at(i).x == 1.0);
    }
}

TEST_CASE("taylor-green recipe matches the analytic field") {
    RunConfig cfg;
    cfg.recipe = "taylor-green";
    cfg.amplitude = 0.7;
    const int n = 16;
    GridSpec g = GridSpec::periodic2d(n, n, 2.0 * M_PI / n, 2.0 * M_PI / n);
    InitialData init = generate_initial(cfg, 1, g);
    for (std::size_t idx = 0; idx < g.node_count(); ++idx) {
        auto c = g.coords(idx);
        const double x = g.coord(0, c[0]), y = g.coord(1, c[1]);
        CHECK(init.u.comp[0][idx] == doctest::Approx(0.7 * std::sin(x) * std::cos(y)));
        CHECK(init.u.comp[1][idx] == doctest::Approx(-0.7 * std::cos(x) * std::sin(y)));
    }
}

TEST_CASE("every recipe meets the admissibility tolerances") {
    GridSpec g = GridSpec::periodic2d(24, 24, 2.0 * M_PI / 24, 2.0 * M_PI / 24);
    for (const char* recipe : {"constant", "circle-wave", "taylor-green", "random-smooth",
                               "vortex-pair", "concentrated-bump"}) {
        RunConfig cfg;
        cfg.recipe = recipe;
        InitialData init = generate_initial(cfg, 3, g);
        ConstraintResiduals res = constraint_residuals(init.directors);
        CHECK(res.max_norm_err_n <= 1e-12);
        CHECK(res.max_norm_err_m <= 1e-12);
        CHECK(res.max_dot <= 1e-12);
        CHECK(max_abs(divergence(init.u)) <= 1e-9);
    }
}

TEST_CASE("random-smooth is deterministic per seed") {
    RunConfig cfg;
    cfg.recipe = "random-smooth";
    GridSpec g = GridSpec::periodic2d(16, 16, 0.4, 0.4);
    InitialData a = generate_initial(cfg, 123, g);
    InitialData b = generate_initial(cfg, 123, g);
    CHECK((a.u.comp[0] == b.u.comp[0]));
    CHECK((a.directors.n.comp[1] == b.directors.n.comp[1]));
    InitialData c = generate_initial(cfg, 124, g);
    CHECK((a.u.comp[0] != c.u.comp[0]));
}

TEST_CASE("snapshot round trip is bit-exact") {
    GridSpec g = GridSpec::periodic2d(12, 10, 0.3, 0.3);
    FlowState state(g, 1.0);
    SplitMix64 rng(5);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        state.u.comp[0][i] = rng.uniform(-1.0, 1.0);
        state.u.comp[1][i] = rng.uniform(-1.0, 1.0);
        state.p[i] = rng.uniform(-1.0, 1.0);
        state.directors.n.set(i, {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    }
    const std::string path = "snap_test.bfld";
    Snapshot snap = snapshot_from_state(state);
    write_snapshot(snap, path);
    Snapshot back = read_snapshot(path);
    CHECK((back == snap));

    // Identical content writes identical bytes.
    const std::string bytes = slurp(path);
    write_snapshot(back, path);
    CHECK(slurp(path) == bytes);
    CHECK(bytes.substr(0, 8) == "BIAXFLD1");
    std::remove(path.c_str());
}

TEST_CASE("snapshot format errors") {
    const std::string path = "snap_bad.bfld";
    {
        std::ofstream os(path, std::ios::binary);
        os << "NOTMAGIC" << std::string(16, '\0');
    }
    CHECK_THROWS_AS(read_snapshot(path), FormatError);
    {
        GridSpec g = GridSpec::periodic2d(8, 8, 0.5, 0.5);
        write_snapshot(FlowState(g, 1.0), path);
        // Chop the payload.
        std::string bytes = slurp(path);
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        os.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 11));
    }
    CHECK_THROWS_AS(read_snapshot(path), TruncatedFile);
    std::remove(path.c_str());
}

TEST_CASE("timeseries header and round trip") {
    std::vector<TimeseriesRecord> records(3);
    SplitMix64 rng(8);
    for (std::size_t i = 0; i < records.size(); ++i) {
        records[i].step = static_cast<long>(i);
        records[i].time = 1e-3 * static_cast<double>(i);
        records[i].kinetic = rng.uniform(0.0, 2.0);
        records[i].total = records[i].kinetic + rng.uniform(0.0, 1.0);
        records[i].budget_residual = rng.uniform(-1e-8, 1e-8);
        records[i].concentration_fired = static_cast<int>(rng.next() & 1);
    }
    const std::string path = "series_test.csv";
    write_timeseries(records, path);

    std::ifstream is(path);
    std::string header;
    std::getline(is, header);
    CHECK(header ==
          "step,time,kinetic,dirichlet_n,dirichlet_m,total,visc_dissip,dir_dissip,"
          "budget_residual,max_norm_err_n,max_norm_err_m,max_dot_nm,max_local_energy,"
          "concentration_fired");

    auto back = read_timeseries(path);
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(back[i].step == records[i].step);
        CHECK(back[i].kinetic == records[i].kinetic);  // 17 digits reparse exactly
        CHECK(back[i].budget_residual == records[i].budget_residual);
        CHECK(back[i].concentration_fired == records[i].concentration_fired);
    }

    const std::string bytes = slurp(path);
    write_timeseries(records, path);
    CHECK(slurp(path) == bytes);
    std::remove(path.c_str());

    CHECK_THROWS_AS(write_timeseries({}, path), ValidationError);
}
