#include "biaxial/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "biaxial/poisson.hpp"
#include "biaxial/rng.hpp"
#include "biaxial/stencils.hpp"

namespace biaxial {

GridSpec RunConfig::grid() const {
    GridSpec g;
    g.ndim = nz > 0 ? 3 : 2;
    g.dims = {nx, ny, nz > 0 ? nz : 1};
    g.h = {hx, hy, nz > 0 ? hz : 1.0};
    const Bc b = bc == "dirichlet" ? Bc::dirichlet : Bc::periodic;
    g.bc = {b, b, nz > 0 ? b : Bc::periodic};
    g.validate();
    return g;
}

void RunConfig::validate() const {
    static const char* modes_[] = {"minimize", "flow2d", "check", "ellipticity", "bubble-probe"};
    bool ok = false;
    for (const char* m : modes_) ok = ok || mode == m;
    if (!ok) throw ValidationError("mode", "unknown mode '" + mode + "'");
    if (bc != "periodic" && bc != "dirichlet")
        throw ValidationError("bc", "bc must be periodic or dirichlet");
    grid();
    k.validate();
    if (!(nu > 0.0)) throw ValidationError("nu", "nu must be > 0");
    if (!(dt > 0.0)) throw ValidationError("dt", "dt must be > 0");
    if (horizon < 0.0) throw ValidationError("horizon", "horizon must be >= 0");
    static const char* recipes_[] = {"constant",    "circle-wave", "taylor-green",
                                     "random-smooth", "vortex-pair", "concentrated-bump"};
    ok = false;
    for (const char* r : recipes_) ok = ok || recipe == r;
    if (!ok) throw ValidationError("recipe", "unknown recipe '" + recipe + "'");
    if (sigma < 0.0) throw ValidationError("sigma", "sigma must be >= 0");
    if (modes < 1) throw ValidationError("modes", "modes must be >= 1");
    if (snapshot_every < 0) throw ValidationError("snapshot_every", "must be >= 0");
    if (!(eps0_sq > 0.0)) throw ValidationError("eps0_sq", "must be > 0");
    if (!(theta0 > 0.0 && theta0 < 1.0)) throw ValidationError("theta0", "must be in (0,1)");
    if (!(c0 > 0.0)) throw ValidationError("c0", "must be > 0");
    for (double r : scan_radii)
        if (!(r > 0.0)) throw ValidationError("scan_radii", "radii must be > 0");
    if (tau < 0.0) throw ValidationError("tau", "tau must be >= 0");
    if (max_iterations < 1) throw ValidationError("max_iterations", "must be >= 1");
    if (!(tolerance > 0.0)) throw ValidationError("tolerance", "must be > 0");
    if (!(concentration_radius > 0.0))
        throw ValidationError("concentration_radius", "must be > 0");
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError(line, "bad numeric literal '" + v + "'");
    }
}

int to_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError(line, "bad integer literal '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        std::uint64_t x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError(line, "bad unsigned literal '" + v + "'");
    }
}

std::vector<double> to_radii(const std::string& v, int line) {
    std::vector<double> out;
    if (v.empty()) return out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item), line));
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        std::string s = raw;
        std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty()) throw ParseError(line, "empty key");

        if (key == "mode") c.mode = val;
        else if (key == "nx") c.nx = to_int(val, line);
        else if (key == "ny") c.ny = to_int(val, line);
        else if (key == "nz") c.nz = to_int(val, line);
        else if (key == "hx") c.hx = to_double(val, line);
        else if (key == "hy") c.hy = to_double(val, line);
        else if (key == "hz") c.hz = to_double(val, line);
        else if (key == "bc") c.bc = val;
        else if (key.size() >= 2 && key[0] == 'k' && key.find_first_not_of("0123456789", 1) ==
                                                         std::string::npos) {
            int ki = to_int(key.substr(1), line);
            if (ki < 1 || ki > 12) throw ParseError(line, "unknown key '" + key + "'");
            c.k.k[ki - 1] = to_double(val, line);
        } else if (key == "nu") c.nu = to_double(val, line);
        else if (key == "dt") c.dt = to_double(val, line);
        else if (key == "horizon") c.horizon = to_double(val, line);
        else if (key == "seed") c.seed = to_u64(val, line);
        else if (key == "recipe") c.recipe = val;
        else if (key == "amplitude") c.amplitude = to_double(val, line);
        else if (key == "sigma") c.sigma = to_double(val, line);
        else if (key == "modes") c.modes = to_int(val, line);
        else if (key == "out") c.out = val;
        else if (key == "snapshot_every") c.snapshot_every = to_int(val, line);
        else if (key == "eps0_sq") c.eps0_sq = to_double(val, line);
        else if (key == "theta0") c.theta0 = to_double(val, line);
        else if (key == "c0") c.c0 = to_double(val, line);
        else if (key == "scan_radii") c.scan_radii = to_radii(val, line);
        else if (key == "concentration_radius") c.concentration_radius = to_double(val, line);
        else if (key == "tau") c.tau = to_double(val, line);
        else if (key == "max_iterations") c.max_iterations = to_int(val, line);
        else if (key == "tolerance") c.tolerance = to_double(val, line);
        else throw ParseError(line, "unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

std::string write_config(const RunConfig& c) {
    std::ostringstream os;
    os << "mode = " << c.mode << "\n";
    os << "nx = " << c.nx << "\nny = " << c.ny << "\nnz = " << c.nz << "\n";
    os << "hx = " << fmt_double(c.hx) << "\nhy = " << fmt_double(c.hy) << "\nhz = "
       << fmt_double(c.hz) << "\n";
    os << "bc = " << c.bc << "\n";
    for (int i = 0; i < 12; ++i) os << "k" << i + 1 << " = " << fmt_double(c.k.k[i]) << "\n";
    os << "nu = " << fmt_double(c.nu) << "\n";
    os << "dt = " << fmt_double(c.dt) << "\n";
    os << "horizon = " << fmt_double(c.horizon) << "\n";
    os << "seed = " << c.seed << "\n";
    os << "recipe = " << c.recipe << "\n";
    os << "amplitude = " << fmt_double(c.amplitude) << "\n";
    os << "sigma = " << fmt_double(c.sigma) << "\n";
    os << "modes = " << c.modes << "\n";
    os << "out = " << c.out << "\n";
    os << "snapshot_every = " << c.snapshot_every << "\n";
    os << "eps0_sq = " << fmt_double(c.eps0_sq) << "\n";
    os << "theta0 = " << fmt_double(c.theta0) << "\n";
    os << "c0 = " << fmt_double(c.c0) << "\n";
    os << "scan_radii = ";
    for (std::size_t i = 0; i < c.scan_radii.size(); ++i)
        os << (i ? "," : "") << fmt_double(c.scan_radii[i]);
    os << "\n";
    os << "concentration_radius = " << fmt_double(c.concentration_radius) << "\n";
    os << "tau = " << fmt_double(c.tau) << "\n";
    os << "max_iterations = " << c.max_iterations << "\n";
    os << "tolerance = " << fmt_double(c.tolerance) << "\n";
    return os.str();
}

namespace {

// Smooth periodic scalar from a few random Fourier modes.
double fourier_bump(double x, double y, double Lx, double Ly, int modes,
                    const std::vector<double>& coeff) {
    double v = 0.0;
    std::size_t c = 0;
    for (int kx = 1; kx <= modes; ++kx)
        for (int ky = 1; ky <= modes; ++ky) {
            v += coeff[c] * std::sin(2.0 * M_PI * kx * x / Lx + coeff[c + 1]) *
                 std::sin(2.0 * M_PI * ky * y / Ly + coeff[c + 2]);
            c += 3;
        }
    return v;
}

}  // namespace

InitialData generate_initial(const RunConfig& config, std::uint64_t seed, const GridSpec& g) {
    InitialData out{VectorField2D(g), DirectorPairField(g)};
    const double Lx = g.length(0), Ly = g.length(1);
    const double amp = config.amplitude;
    const double sigma = config.sigma > 0.0 ? config.sigma : std::min(Lx, Ly) / 8.0;
    SplitMix64 rng(seed);

    const Vec3 n0{0.0, 0.0, 1.0}, m0{1.0, 0.0, 0.0};
    const std::size_t count = g.node_count();
    for (std::size_t idx = 0; idx < count; ++idx) {
        out.directors.n.set(idx, n0);
        out.directors.m.set(idx, m0);
    }

    const std::string& r = config.recipe;
    if (r == "constant") {
        return out;
    }
    if (r == "circle-wave") {
        for (std::size_t idx = 0; idx < count; ++idx) {
            auto c = g.coords(idx);
            const double phi = amp * 2.0 * M_PI * g.coord(0, c[0]) / Lx;
            out.directors.n.set(idx, {std::cos(phi), std::sin(phi), 0.0});
            out.directors.m.set(idx, {0.0, 0.0, 1.0});
        }
        return out;
    }
    if (r == "taylor-green") {
        for (std::size_t idx = 0; idx < count; ++idx) {
            auto c = g.coords(idx);
            const double x = 2.0 * M_PI * g.coord(0, c[0]) / Lx;
            const double y = 2.0 * M_PI * g.coord(1, c[1]) / Ly;
            out.u.comp[0][idx] = amp * std::sin(x) * std::cos(y);
            out.u.comp[1][idx] = -amp * std::cos(x) * std::sin(y);
        }
        return out;
    }
    if (r == "random-smooth") {
        const int modes = config.modes;
        std::vector<double> cs(3 * static_cast<std::size_t>(modes) * modes);
        std::vector<double> ca(cs.size()), cb(cs.size());
        auto fill = [&](std::vector<double>& v) {
            for (std::size_t i = 0; i < v.size(); i += 3) {
                v[i] = rng.uniform(-1.0, 1.0);
                v[i + 1] = rng.uniform(0.0, 2.0 * M_PI);
                v[i + 2] = rng.uniform(0.0, 2.0 * M_PI);
            }
        };
        fill(cs);  // streamfunction
        fill(ca);  // director tilt angle
        fill(cb);  // director twist angle
        // u = perp-grad of the streamfunction, taken discretely below.
        ScalarField psi(g);
        for (std::size_t idx = 0; idx < count; ++idx) {
            auto c = g.coords(idx);
            const double x = g.coord(0, c[0]), y = g.coord(1, c[1]);
            psi[idx] = amp * fourier_bump(x, y, Lx, Ly, modes, cs);
            const double a = amp * fourier_bump(x, y, Lx, Ly, modes, ca);
            const double b = amp * fourier_bump(x, y, Lx, Ly, modes, cb);
            // Rotate the constant pair by a about e2, then b about e3.
            Vec3 n{std::sin(a) * std::cos(b), std::sin(a) * std::sin(b), std::cos(a)};
            Vec3 m{std::cos(a) * std::cos(b), std::cos(a) * std::sin(b), -std::sin(a)};
            auto rr = retract(n, m);
            out.directors.n.set(idx, rr.n);
            out.directors.m.set(idx, rr.m);
        }
        std::vector<double> dpsi_dx, dpsi_dy;
        apply_deriv(g, 0, psi.values, dpsi_dx);
        apply_deriv(g, 1, psi.values, dpsi_dy);
        for (std::size_t idx = 0; idx < count; ++idx) {
            out.u.comp[0][idx] = dpsi_dy[idx];
            out.u.comp[1][idx] = -dpsi_dx[idx];
        }
        if (g.ndim == 2) project(out.u);
        return out;
    }
    if (r == "vortex-pair") {
        // Counter-rotating Gaussian pair, u = discrete perp-grad of psi so
        // the central divergence vanishes by commutation of the stencils.
        const double cx1 = 0.35 * Lx, cx2 = 0.65 * Lx, cy = 0.5 * Ly;
        ScalarField psi(g);
        for (std::size_t idx = 0; idx < count; ++idx) {
            auto c = g.coords(idx);
            const double x = g.coord(0, c[0]), y = g.coord(1, c[1]);
            auto gauss = [&](double cx) {
                const double dx = x - cx, dy = y - cy;
                return std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            };
            psi[idx] = amp * (gauss(cx1) - gauss(cx2));
        }
        std::vector<double> dpsi_dx, dpsi_dy;
        apply_deriv(g, 0, psi.values, dpsi_dx);
        apply_deriv(g, 1, psi.values, dpsi_dy);
        for (std::size_t idx = 0; idx < count; ++idx) {
            out.u.comp[0][idx] = dpsi_dy[idx];
            out.u.comp[1][idx] = -dpsi_dx[idx];
        }
        if (g.ndim == 2) project(out.u);
        return out;
    }
    if (r == "concentrated-bump") {
        const double cx = 0.5 * Lx, cy = 0.5 * Ly;
        for (std::size_t idx = 0; idx < count; ++idx) {
            auto c = g.coords(idx);
            const double dx = g.coord(0, c[0]) - cx, dy = g.coord(1, c[1]) - cy;
            const double phi = amp * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            out.directors.n.set(idx, {std::sin(phi), 0.0, std::cos(phi)});
            out.directors.m.set(idx, {std::cos(phi), 0.0, -std::sin(phi)});
        }
        return out;
    }
    throw UnknownRecipe("unknown recipe '" + r + "'");
}

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw TruncatedFile("header cut short");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw TruncatedFile("payload cut short");
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

constexpr char kMagic[8] = {'B', 'I', 'A', 'X', 'F', 'L', 'D', '1'};

}  // namespace

void write_snapshot(const Snapshot& snap, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os.write(kMagic, 8);
    put_u32(os, snap.version);
    put_u32(os, snap.ndim);
    for (std::uint32_t d : snap.dims) put_u32(os, d);
    put_u32(os, static_cast<std::uint32_t>(snap.fields.size()));
    for (const auto& [name, values] : snap.fields) {
        put_u32(os, static_cast<std::uint32_t>(name.size()));
        os.write(name.data(), static_cast<std::streamsize>(name.size()));
        for (double v : values) put_f64(os, v);
    }
    if (!os) throw IoError("write to '" + path + "' failed");
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "'");
    char magic[8];
    if (!is.read(magic, 8)) throw TruncatedFile("missing magic");
    if (std::memcmp(magic, kMagic, 8) != 0) throw FormatError("bad magic");
    Snapshot snap;
    snap.version = get_u32(is);
    if (snap.version != 1) throw FormatError("unsupported version");
    snap.ndim = get_u32(is);
    if (snap.ndim < 2 || snap.ndim > 3) throw FormatError("bad ndim");
    snap.dims.resize(snap.ndim);
    std::size_t count = 1;
    for (auto& d : snap.dims) {
        d = get_u32(is);
        count *= d;
    }
    if (count == 0 || count > (1u << 28)) throw FormatError("bad dims");
    const std::uint32_t nfields = get_u32(is);
    for (std::uint32_t f = 0; f < nfields; ++f) {
        const std::uint32_t len = get_u32(is);
        if (len > 256) throw FormatError("field name too long");
        std::string name(len, '\0');
        if (!is.read(name.data(), len)) throw TruncatedFile("field name cut short");
        std::vector<double> values(count);
        for (auto& v : values) v = get_f64(is);
        snap.fields.emplace_back(std::move(name), std::move(values));
    }
    return snap;
}

Snapshot snapshot_from_state(const FlowState& state) {
    const GridSpec& g = state.u.grid;
    Snapshot snap;
    snap.ndim = static_cast<std::uint32_t>(g.ndim);
    for (int a = 0; a < g.ndim; ++a) snap.dims.push_back(static_cast<std::uint32_t>(g.dims[a]));
    snap.fields = {{"ux", state.u.comp[0]},          {"uy", state.u.comp[1]},
                   {"p", state.p.values},            {"nx", state.directors.n.comp[0]},
                   {"ny", state.directors.n.comp[1]}, {"nz", state.directors.n.comp[2]},
                   {"mx", state.directors.m.comp[0]}, {"my", state.directors.m.comp[1]},
                   {"mz", state.directors.m.comp[2]}};
    return snap;
}

void write_snapshot(const FlowState& state, const std::string& path) {
    write_snapshot(snapshot_from_state(state), path);
}

void write_timeseries(const std::vector<TimeseriesRecord>& records, const std::string& path) {
    if (records.empty()) throw ValidationError("records", "timeseries must be nonempty");
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << "step,time,kinetic,dirichlet_n,dirichlet_m,total,visc_dissip,dir_dissip,"
          "budget_residual,max_norm_err_n,max_norm_err_m,max_dot_nm,max_local_energy,"
          "concentration_fired\n";
    for (const auto& r : records) {
        os << r.step << ',' << fmt_double(r.time) << ',' << fmt_double(r.kinetic) << ','
           << fmt_double(r.dirichlet_n) << ',' << fmt_double(r.dirichlet_m) << ','
           << fmt_double(r.total) << ',' << fmt_double(r.visc_dissip) << ','
           << fmt_double(r.dir_dissip) << ',' << fmt_double(r.budget_residual) << ','
           << fmt_double(r.max_norm_err_n) << ',' << fmt_double(r.max_norm_err_m) << ','
           << fmt_double(r.max_dot_nm) << ',' << fmt_double(r.max_local_energy) << ','
           << r.concentration_fired << '\n';
    }
    if (!os) throw IoError("write to '" + path + "' failed");
}

std::vector<TimeseriesRecord> read_timeseries(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(is, line)) throw FormatError("empty timeseries");
    std::vector<TimeseriesRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 14) throw FormatError("bad column count");
        TimeseriesRecord r;
        r.step = std::stol(cells[0]);
        r.time = std::stod(cells[1]);
        r.kinetic = std::stod(cells[2]);
        r.dirichlet_n = std::stod(cells[3]);
        r.dirichlet_m = std::stod(cells[4]);
        r.total = std::stod(cells[5]);
        r.visc_dissip = std::stod(cells[6]);
        r.dir_dissip = std::stod(cells[7]);
        r.budget_residual = std::stod(cells[8]);
        r.max_norm_err_n = std::stod(cells[9]);
        r.max_norm_err_m = std::stod(cells[10]);
        r.max_dot_nm = std::stod(cells[11]);
        r.max_local_energy = std::stod(cells[12]);
        r.concentration_fired = std::stoi(cells[13]);
        out.push_back(r);
    }
    return out;
}

}  // namespace biaxial
