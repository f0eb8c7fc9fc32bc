#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "elhs/greens.hpp"
#include "elhs/medium.hpp"
#include "elhs/spectral_ops.hpp"
#include "elhs/trace_grid.hpp"
#include "elhs/waves.hpp"

namespace elhs {

struct CheckResult {
    enum class Status { Pass, Fail, Skip };
    std::string name;
    Status status = Status::Pass;
    double measured = 0.0;   // pass iff measured <= tolerance
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    int failures() const;
};

/// Seeded random quasi-biperiodic trace; mode amplitudes decay as
/// (1 + |m|)^-2, Nyquist row/column left empty.
TraceGrid random_trace(const ElasticMedium& med, double cell_length, int n, const Vec2& alpha,
                       double height, std::mt19937_64& rng, bool evanescent_only = false);

/// Smallest eigenvalue of Re(-i M(xi)) over rings |xi| = r for r in radii;
/// rings with r < 2 kappa_s are recorded in the detail string but excluded
/// from the pass criterion (the bound only holds for large |xi|).
CheckResult check_dtn_positivity(const ElasticMedium& med, const std::vector<double>& radii,
                                 int n_angles);

/// Two-sided evaluation of the surface flux identities on a periodic cell:
///   Rellich:  Int 2Re(Tu . d3 u~) - E(u,u~) + w^2 |u|^2
///              = L^2 Sum [2 w^2 beta^2 |A_p|^2 + 2 mu gamma^2 |A_s|^2]
///   Energy:   Im Int Tu . u~ = L^2 Sum [w^2 beta |A_p|^2 + mu gamma |A_s|^2]
/// with sums over discrete propagating modes.  Returns the two entries;
/// a zero trace yields Skip.
std::vector<CheckResult> check_flux_identities(const ElasticMedium& med, const TraceGrid& trace,
                                               double rel_tol = 1e-9);

/// Plane-wave consistency: (a) rigid boundary residual on a surface sample,
/// (b) propagate() against the closed-form reflected field at each height,
/// (c) observed Navier FD convergence order.
std::vector<CheckResult> check_scattering_consistency(const ElasticMedium& med,
                                                      const PlaneWaveSpec& spec,
                                                      const std::vector<double>& heights);

struct SuiteConfig {
    std::uint64_t seed = 20240915;
    std::vector<std::string> groups;  // empty = every group; else prefix match
    double quad_tolerance = 1e-8;
    bool light = false;               // trims the expensive greens/layer checks
};

/// Executes every registered check; check failures are recorded, never thrown.
ValidationReport run_all(const ElasticMedium& med, const SuiteConfig& config);

}  // namespace elhs
