#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "elhs/types.hpp"

namespace elhs {

/// Exit-code contract of the command-line front end.
enum ExitCode : int {
    kSuccess = 0,
    kCheckFailures = 1,
    kParseError = 2,
    kInvariantError = 3,
    kQuadratureError = 4,
};

struct ScenarioParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ScenarioInvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key-value scenario:
///   medium.lambda = 2.0        medium.mu = 1.0        medium.omega = 2.0
///   seed = 7
///   incidence.type = plane | beam | point_source
///   incidence.theta / incidence.phi
///   incidence.c_p.re / .im, incidence.c_s1.re / .im, incidence.c_s2.re / .im
///   incidence.beam.kind = P | S
///   incidence.beam.support_radius / .reference_height
///   incidence.beam.amp.re / .im  (P)   incidence.beam.q1..q3.re/.im  (S)
///   incidence.point.y1..y3, incidence.point.dir1..dir3
///   grid.origin1..3, grid.extent1..3, grid.n1..3
///   output.quantity = displacement | traction | residual
///   quadrature.tolerance = 1e-8
///   validate.groups = kernels,flux   (comma separated, optional)
///   validate.light = 0 | 1
/// '#' starts a comment; keys are unique; unknown keys are parse errors.
struct Scenario {
    double lambda = 2.0, mu = 1.0, omega = 2.0;
    std::uint64_t seed = 20240915;

    std::string incidence_type = "plane";
    double theta = 0.0, phi = 0.0;
    Complex c_p{1.0, 0.0}, c_s1{}, c_s2{};

    std::string beam_kind = "P";
    double beam_support_radius = 0.0;
    double beam_reference_height = 1.0;
    Complex beam_amp{1.0, 0.0};
    CVec3 beam_q = CVec3(Complex(0, 0), Complex(1, 0), Complex(0, 0));

    Vec3 point_y = Vec3(0, 0, 1);
    Vec3 point_dir = Vec3(0, 0, 1);

    Vec3 grid_origin = Vec3::Zero();
    Vec3 grid_extent = Vec3::Zero();
    int grid_n[3] = {2, 2, 1};

    std::string quantity = "displacement";
    double quad_tolerance = 1e-8;
    std::vector<std::string> validate_groups;
    bool validate_light = false;

    std::map<std::string, std::string> raw;  // verbatim echo for the metadata file
};

Scenario parse_scenario_file(const std::string& path);
Scenario parse_scenario_text(const std::string& text);

/// Semantic validation (medium constraints, grid shape); throws
/// ScenarioInvariantError.
void validate_scenario(const Scenario& s, const std::string& subcommand);

struct RunOptions {
    std::string format = "text";  // "text" | "binary"
    int threads = 1;
    std::optional<double> tolerance;      // quadrature override
    std::optional<std::uint64_t> seed;    // seed override
};

/// Executes one subcommand (reflect | propagate | greens | beam | validate),
/// writing metadata plus data files into out_dir.  Returns an ExitCode;
/// never throws for the contracted failure modes.
int run_scenario(const std::string& subcommand, const std::string& scenario_path,
                 const RunOptions& options, const std::string& out_dir);

}  // namespace elhs
