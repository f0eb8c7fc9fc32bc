#include "elhs/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "elhs/greens.hpp"
#include "elhs/medium.hpp"
#include "elhs/spectral_ops.hpp"
#include "elhs/trace_grid.hpp"
#include "elhs/validate.hpp"
#include "elhs/waves.hpp"

namespace elhs {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    size_t used = 0;
    double x = 0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ScenarioParseError("scenario: bad number for key '" + key + "': " + v);
    }
    if (used != v.size())
        throw ScenarioParseError("scenario: trailing characters for key '" + key + "': " + v);
    return x;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    size_t used = 0;
    std::uint64_t x = 0;
    try {
        x = std::stoull(v, &used);
    } catch (const std::exception&) {
        throw ScenarioParseError("scenario: bad integer for key '" + key + "': " + v);
    }
    if (used != v.size())
        throw ScenarioParseError("scenario: trailing characters for key '" + key + "': " + v);
    return x;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
    Scenario s;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ScenarioParseError("scenario line " + std::to_string(lineno) +
                                     ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ScenarioParseError("scenario line " + std::to_string(lineno) +
                                     ": empty key or value");
        if (s.raw.count(key))
            throw ScenarioParseError("scenario: duplicate key '" + key + "'");
        s.raw[key] = val;

        if (key == "medium.lambda") s.lambda = parse_double(key, val);
        else if (key == "medium.mu") s.mu = parse_double(key, val);
        else if (key == "medium.omega") s.omega = parse_double(key, val);
        else if (key == "seed") s.seed = parse_u64(key, val);
        else if (key == "incidence.type") s.incidence_type = val;
        else if (key == "incidence.theta") s.theta = parse_double(key, val);
        else if (key == "incidence.phi") s.phi = parse_double(key, val);
        else if (key == "incidence.c_p.re") s.c_p.real(parse_double(key, val));
        else if (key == "incidence.c_p.im") s.c_p.imag(parse_double(key, val));
        else if (key == "incidence.c_s1.re") s.c_s1.real(parse_double(key, val));
        else if (key == "incidence.c_s1.im") s.c_s1.imag(parse_double(key, val));
        else if (key == "incidence.c_s2.re") s.c_s2.real(parse_double(key, val));
        else if (key == "incidence.c_s2.im") s.c_s2.imag(parse_double(key, val));
        else if (key == "incidence.beam.kind") s.beam_kind = val;
        else if (key == "incidence.beam.support_radius") s.beam_support_radius = parse_double(key, val);
        else if (key == "incidence.beam.reference_height") s.beam_reference_height = parse_double(key, val);
        else if (key == "incidence.beam.amp.re") s.beam_amp.real(parse_double(key, val));
        else if (key == "incidence.beam.amp.im") s.beam_amp.imag(parse_double(key, val));
        else if (key == "incidence.beam.q1.re") s.beam_q[0].real(parse_double(key, val));
        else if (key == "incidence.beam.q1.im") s.beam_q[0].imag(parse_double(key, val));
        else if (key == "incidence.beam.q2.re") s.beam_q[1].real(parse_double(key, val));
        else if (key == "incidence.beam.q2.im") s.beam_q[1].imag(parse_double(key, val));
        else if (key == "incidence.beam.q3.re") s.beam_q[2].real(parse_double(key, val));
        else if (key == "incidence.beam.q3.im") s.beam_q[2].imag(parse_double(key, val));
        else if (key == "incidence.point.y1") s.point_y[0] = parse_double(key, val);
        else if (key == "incidence.point.y2") s.point_y[1] = parse_double(key, val);
        else if (key == "incidence.point.y3") s.point_y[2] = parse_double(key, val);
        else if (key == "incidence.point.dir1") s.point_dir[0] = parse_double(key, val);
        else if (key == "incidence.point.dir2") s.point_dir[1] = parse_double(key, val);
        else if (key == "incidence.point.dir3") s.point_dir[2] = parse_double(key, val);
        else if (key == "grid.origin1") s.grid_origin[0] = parse_double(key, val);
        else if (key == "grid.origin2") s.grid_origin[1] = parse_double(key, val);
        else if (key == "grid.origin3") s.grid_origin[2] = parse_double(key, val);
        else if (key == "grid.extent1") s.grid_extent[0] = parse_double(key, val);
        else if (key == "grid.extent2") s.grid_extent[1] = parse_double(key, val);
        else if (key == "grid.extent3") s.grid_extent[2] = parse_double(key, val);
        else if (key == "grid.n1") s.grid_n[0] = static_cast<int>(parse_u64(key, val));
        else if (key == "grid.n2") s.grid_n[1] = static_cast<int>(parse_u64(key, val));
        else if (key == "grid.n3") s.grid_n[2] = static_cast<int>(parse_u64(key, val));
        else if (key == "output.quantity") s.quantity = val;
        else if (key == "quadrature.tolerance") s.quad_tolerance = parse_double(key, val);
        else if (key == "validate.light") s.validate_light = parse_u64(key, val) != 0;
        else if (key == "validate.groups") {
            std::stringstream gs(val);
            std::string g;
            while (std::getline(gs, g, ',')) {
                g = trim(g);
                if (!g.empty()) s.validate_groups.push_back(g);
            }
        } else {
            throw ScenarioParseError("scenario: unknown key '" + key + "'");
        }
    }
    return s;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioParseError("scenario: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

void validate_scenario(const Scenario& s, const std::string& subcommand) {
    try {
        (void)make_medium(s.lambda, s.mu, s.omega);
    } catch (const std::domain_error& e) {
        throw ScenarioInvariantError(e.what());
    }
    if (s.incidence_type != "plane" && s.incidence_type != "beam" &&
        s.incidence_type != "point_source")
        throw ScenarioInvariantError("scenario: unknown incidence.type '" + s.incidence_type + "'");
    if (s.quantity != "displacement" && s.quantity != "traction" && s.quantity != "residual")
        throw ScenarioInvariantError("scenario: unknown output.quantity '" + s.quantity + "'");
    if (!(s.theta >= 0.0 && s.theta < 0.5 * M_PI))
        throw ScenarioInvariantError("scenario: incidence.theta must lie in [0, pi/2)");
    if (s.quad_tolerance <= 0.0)
        throw ScenarioInvariantError("scenario: quadrature.tolerance must be > 0");

    if (subcommand == "validate") return;

    for (int a = 0; a < 3; ++a) {
        if (s.grid_extent[a] < 0.0)
            throw ScenarioInvariantError("scenario: grid extents must be >= 0");
        if (s.grid_extent[a] > 0.0 && s.grid_n[a] < 2)
            throw ScenarioInvariantError("scenario: resolution >= 2 required per sampled axis");
        if (s.grid_extent[a] == 0.0 && s.grid_n[a] != 1)
            throw ScenarioInvariantError("scenario: collapsed axis must have resolution 1");
    }
    if (s.grid_origin[2] < 0.0)
        throw ScenarioInvariantError("scenario: grid must not extend below the rigid plane");
    if (subcommand == "greens" && !(s.grid_origin[2] > 0.0))
        throw ScenarioInvariantError("scenario: half-space quantities need the grid strictly above the plane");
    if (subcommand == "greens" && s.incidence_type != "point_source")
        throw ScenarioInvariantError("scenario: greens subcommand expects incidence.type = point_source");
    if (subcommand == "beam" || s.incidence_type == "beam") {
        const ElasticMedium med = make_medium(s.lambda, s.mu, s.omega);
        const double kappa = s.beam_kind == "P" ? med.kappa_p : med.kappa_s;
        if (s.beam_kind != "P" && s.beam_kind != "S")
            throw ScenarioInvariantError("scenario: incidence.beam.kind must be P or S");
        if (!(s.beam_support_radius > 0.0) || s.beam_support_radius > 0.99 * kappa)
            throw ScenarioInvariantError(
                "scenario: beam support radius must lie in (0, 0.99 kappa]");
    }
    if (subcommand == "propagate") {
        if (!(s.grid_extent[0] > 0.0) || s.grid_extent[0] != s.grid_extent[1] ||
            s.grid_n[0] != s.grid_n[1])
            throw ScenarioInvariantError("scenario: propagate needs a square horizontal cell");
        const int n = s.grid_n[0];
        if (n < 2 || (n & (n - 1)) != 0)
            throw ScenarioInvariantError("scenario: propagate resolution must be a power of two");
    }
}

// ---------------------------------------------------------------------------
// execution
// ---------------------------------------------------------------------------

namespace {

struct FieldRecord {
    Vec3 x;
    CVec3 u;
};

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
    threads = std::max(1, threads);
    if (threads == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) body(i);
        });
    for (auto& th : pool) th.join();
}

std::vector<Vec3> grid_points(const Scenario& s) {
    std::vector<Vec3> pts;
    auto coord = [&](int axis, int idx) {
        if (s.grid_n[axis] == 1) return s.grid_origin[axis];
        return s.grid_origin[axis] + s.grid_extent[axis] * idx / (s.grid_n[axis] - 1);
    };
    for (int k = 0; k < s.grid_n[2]; ++k)
        for (int i = 0; i < s.grid_n[0]; ++i)
            for (int j = 0; j < s.grid_n[1]; ++j)
                pts.emplace_back(coord(0, i), coord(1, j), coord(2, k));
    return pts;
}

void write_field_file(const std::string& path, const std::vector<FieldRecord>& records,
                      bool binary) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    if (binary) {
        for (const auto& r : records) {
            // little-endian 64-bit floats, 3 coordinates then Re/Im per component
            double buf[9] = {r.x[0], r.x[1], r.x[2],
                             r.u[0].real(), r.u[0].imag(),
                             r.u[1].real(), r.u[1].imag(),
                             r.u[2].real(), r.u[2].imag()};
            out.write(reinterpret_cast<const char*>(buf), sizeof(buf));
        }
    } else {
        char line[400];
        for (const auto& r : records) {
            std::snprintf(line, sizeof(line),
                          "%.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g\n",
                          r.x[0], r.x[1], r.x[2],
                          r.u[0].real(), r.u[0].imag(),
                          r.u[1].real(), r.u[1].imag(),
                          r.u[2].real(), r.u[2].imag());
            out << line;
        }
    }
}

SpectralBeamSpec beam_from_scenario(const Scenario& s) {
    SpectralBeamSpec spec;
    spec.kind = s.beam_kind == "P" ? SpectralBeamSpec::Kind::P : SpectralBeamSpec::Kind::S;
    spec.support_radius = s.beam_support_radius;
    spec.reference_height = s.beam_reference_height;
    const double R = s.beam_support_radius;
    auto bump = [R](const Vec2& xi) -> double {
        const double r2 = xi.squaredNorm() / (R * R);
        if (r2 >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - r2));
    };
    if (spec.kind == SpectralBeamSpec::Kind::P) {
        spec.density_p = [bump, amp = s.beam_amp](const Vec2& xi) { return amp * bump(xi); };
    } else {
        spec.density_s = [bump, q = s.beam_q](const Vec2& xi) -> CVec3 { return q * bump(xi); };
    }
    return spec;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class MetadataWriter {
public:
    void set(const std::string& key, const std::string& value) { entries_[key] = value; }
    void set(const std::string& key, double v) { entries_[key] = format_double(v); }
    void set(const std::string& key, std::uint64_t v) { entries_[key] = std::to_string(v); }
    void echo_scenario(const Scenario& s) {
        for (const auto& [k, v] : s.raw) entries_["scenario." + k] = v;
    }
    void write(const std::string& path) const {
        std::ofstream out(path);
        for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
    }

private:
    std::map<std::string, std::string> entries_;
};

int run_validate(const ElasticMedium& med, const Scenario& s, const RunOptions& opt,
                 const std::filesystem::path& out_dir, MetadataWriter& meta) {
    SuiteConfig cfg;
    cfg.seed = opt.seed.value_or(s.seed);
    cfg.groups = s.validate_groups;
    cfg.quad_tolerance = opt.tolerance.value_or(s.quad_tolerance);
    cfg.light = s.validate_light;
    const ValidationReport rep = run_all(med, cfg);

    nlohmann::ordered_json j;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["status"] = c.status == CheckResult::Status::Pass
                          ? "pass"
                          : (c.status == CheckResult::Status::Fail ? "fail" : "skip");
        e["measured"] = c.measured;
        e["tolerance"] = c.tolerance;
        e["detail"] = c.detail;
        j["checks"].push_back(e);
    }
    std::ofstream out(out_dir / "report.json");
    out << j.dump(2) << "\n";
    meta.set("meta.checks", static_cast<std::uint64_t>(rep.checks.size()));
    meta.set("meta.failures", static_cast<std::uint64_t>(rep.failures()));
    return rep.all_passed() ? kSuccess : kCheckFailures;
}

}  // namespace

int run_scenario(const std::string& subcommand, const std::string& scenario_path,
                 const RunOptions& options, const std::string& out_dir) {
    Scenario s;
    try {
        s = parse_scenario_file(scenario_path);
        if (options.seed) s.seed = *options.seed;
        if (options.tolerance) s.quad_tolerance = *options.tolerance;
        validate_scenario(s, subcommand);
    } catch (const ScenarioParseError& e) {
        std::cerr << e.what() << "\n";
        return kParseError;
    } catch (const ScenarioInvariantError& e) {
        std::cerr << e.what() << "\n";
        return kInvariantError;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        const ElasticMedium med = make_medium(s.lambda, s.mu, s.omega);
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path dir(out_dir);
        MetadataWriter meta;
        meta.echo_scenario(s);
        meta.set("meta.version", std::string("elhs 0.1.0"));
        meta.set("meta.subcommand", subcommand);
        meta.set("meta.format", options.format);
        meta.set("meta.seed", static_cast<std::uint64_t>(s.seed));
        meta.set("meta.quad_tolerance", s.quad_tolerance);

        int code = kSuccess;
        const bool binary = options.format == "binary";
        const std::string field_name = binary ? "field.bin" : "field.txt";

        if (subcommand == "validate") {
            code = run_validate(med, s, options, dir, meta);
        } else if (subcommand == "reflect") {
            const PlaneWaveSpec spec =
                PlaneWaveSpec::mixed(s.theta, s.phi, s.c_p, s.c_s1, s.c_s2);
            const PlaneModeField uin = incident_plane_field(med, spec);
            const PlaneModeField ure = reflected_plane_field(med, spec);
            const std::vector<Vec3> pts = grid_points(s);
            std::vector<FieldRecord> rec(pts.size());
            parallel_for(static_cast<int>(pts.size()), options.threads, [&](int i) {
                rec[i].x = pts[i];
                if (s.quantity == "displacement") {
                    rec[i].u = uin(pts[i]) + ure(pts[i]);
                } else if (s.quantity == "traction") {
                    rec[i].u = traction(med, uin, pts[i]) + traction(med, ure, pts[i]);
                } else {
                    auto total = [&](const Vec3& x) { return uin(x) + ure(x); };
                    rec[i].u = navier_residual(med, total, pts[i], default_fd_step(med));
                }
            });
            write_field_file((dir / field_name).string(), rec, binary);
        } else if (subcommand == "propagate") {
            PlaneWaveSpec spec = PlaneWaveSpec::mixed(s.theta, s.phi, s.c_p, s.c_s1, s.c_s2);
            double kappa = med.kappa_p;
            if (spec.c_p == 0.0) kappa = med.kappa_s;
            else { spec.c_s1 = spec.c_s2 = 0.0; }  // single-polarization trace
            const Vec2 alpha = kappa * std::sin(s.theta) *
                               Vec2(std::cos(s.phi), std::sin(s.phi));
            const PlaneModeField ure = reflected_plane_field(med, spec);
            const double L = s.grid_extent[0];
            const int n = s.grid_n[0];
            const TraceGrid base = TraceGrid::from_function(L, n, alpha, s.grid_origin[2],
                                                            [&](const Vec2& xp) {
                return ure(Vec3(s.grid_origin[0] + xp[0], s.grid_origin[1] + xp[1],
                                s.grid_origin[2]));
            });
            std::vector<FieldRecord> rec;
            for (int k = 0; k < s.grid_n[2]; ++k) {
                const double dz =
                    s.grid_n[2] == 1 ? 0.0 : s.grid_extent[2] * k / (s.grid_n[2] - 1);
                const TraceGrid up = propagate(med, base, dz, Direction::Up);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        const Vec2 xp = up.point(i, j);
                        rec.push_back({Vec3(s.grid_origin[0] + xp[0], s.grid_origin[1] + xp[1],
                                            s.grid_origin[2] + dz),
                                       up.at(i, j)});
                    }
            }
            write_field_file((dir / field_name).string(), rec, binary);
        } else if (subcommand == "greens") {
            QuadratureConfig qc;
            qc.tolerance = s.quad_tolerance;
            const std::vector<Vec3> pts = grid_points(s);
            std::vector<FieldRecord> rec(pts.size());
            std::vector<double> errs(pts.size());
            const CVec3 dir_c = s.point_dir.cast<Complex>();
            parallel_for(static_cast<int>(pts.size()), options.threads, [&](int i) {
                const GreensResult g = greens_halfspace(med, pts[i], s.point_y, qc);
                rec[i] = {pts[i], g.value * dir_c};
                errs[i] = g.error_estimate;
            });
            meta.set("meta.max_error_estimate", *std::max_element(errs.begin(), errs.end()));
            write_field_file((dir / field_name).string(), rec, binary);
        } else if (subcommand == "beam") {
            const SpectralBeamSpec spec = beam_from_scenario(s);
            BeamQuadrature bq;
            bq.tolerance = s.quad_tolerance;
            const std::vector<Vec3> pts = grid_points(s);
            std::vector<FieldRecord> rec(pts.size());
            parallel_for(static_cast<int>(pts.size()), options.threads, [&](int i) {
                rec[i] = {pts[i], eval_incident_beam(med, spec, pts[i], bq) +
                                      eval_reflected_beam(med, spec, pts[i], bq)};
            });
            write_field_file((dir / field_name).string(), rec, binary);
        } else {
            std::cerr << "unknown subcommand '" << subcommand << "'\n";
            return kParseError;
        }

        const auto t1 = std::chrono::steady_clock::now();
        meta.set("meta.wall_ms",
                 std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() * 1.0);
        meta.write((dir / "metadata.txt").string());
        return code;
    } catch (const std::logic_error& e) {
        std::cerr << e.what() << "\n";
        return kInvariantError;
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return kQuadratureError;
    }
}

}  // namespace elhs
