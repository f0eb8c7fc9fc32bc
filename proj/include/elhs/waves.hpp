#pragma once

#include <functional>
#include <vector>

#include "elhs/medium.hpp"
#include "elhs/types.hpp"

namespace elhs {

/// Plane-wave incidence from above onto the rigid plane x3 = 0.
/// Propagation direction d = (sin t cos p, sin t sin p, -cos t); the two
/// shear polarizations d1_perp, d2_perp are unit vectors orthogonal to d.
struct PlaneWaveSpec {
    double theta = 0.0;           // polar angle in [0, pi/2)
    double phi = 0.0;             // azimuth in [0, 2pi)
    Complex c_p{};                // compressional amplitude
    Complex c_s1{}, c_s2{};       // shear amplitudes
    Vec3 d1_perp = Vec3::Zero();
    Vec3 d2_perp = Vec3::Zero();

    Vec3 direction() const;

    /// Standard polarization pair: d1 = (cos t cos p, cos t sin p, sin t),
    /// d2 = (-sin p, cos p, 0).
    static PlaneWaveSpec pressure(double theta, double phi, Complex amplitude = 1.0);
    static PlaneWaveSpec shear(double theta, double phi, Complex a1, Complex a2 = 0.0);
    static PlaneWaveSpec mixed(double theta, double phi, Complex cp, Complex cs1, Complex cs2);
};

/// Finite superposition of exponential modes a e^{i k . x} with complex
/// wavevectors; closed under the traction operator and exact under
/// differentiation.
struct PlaneMode {
    CVec3 amplitude = CVec3::Zero();
    CVec3 wavevector = CVec3::Zero();
};

class PlaneModeField {
public:
    PlaneModeField() = default;

    void add(const CVec3& amplitude, const CVec3& wavevector);

    CVec3 operator()(const Vec3& x) const;

    const std::vector<PlaneMode>& modes() const { return modes_; }

private:
    std::vector<PlaneMode> modes_;
};

/// Incident field c_p u_p + c_s1 u_s1 + c_s2 u_s2 as a mode superposition.
PlaneModeField incident_plane_field(const ElasticMedium& med, const PlaneWaveSpec& spec);

/// Mode-converted reflection off the rigid plane x3 = 0; together with the
/// incident field the total displacement vanishes identically on x3 = 0.
/// Valid for x3 >= 0 (post-critical shear incidence produces an evanescent
/// compressional part which grows below the plane).
PlaneModeField reflected_plane_field(const ElasticMedium& med, const PlaneWaveSpec& spec);

CVec3 eval_incident_plane(const ElasticMedium& med, const PlaneWaveSpec& spec, const Vec3& x);
CVec3 eval_reflected_plane(const ElasticMedium& med, const PlaneWaveSpec& spec, const Vec3& x);

/// Traction T u = 2 mu d3 u + lambda (div u) e3 + mu e3 x (curl u) of an
/// exponential-mode superposition, evaluated exactly at x.
CVec3 traction(const ElasticMedium& med, const PlaneModeField& field, const Vec3& x);

/// Traction on the plane x3 = 0 at horizontal position xp.
CVec3 traction_plane(const ElasticMedium& med, const PlaneModeField& field, const Vec2& xp);

using FieldEvaluator = std::function<CVec3(const Vec3&)>;

/// Navier residual mu Lap u + (lambda+mu) grad div u + omega^2 u at x via
/// 4th-order central finite differences with step h; O(h^4) for exact
/// solutions.
CVec3 navier_residual(const ElasticMedium& med, const FieldEvaluator& u, const Vec3& x, double h);

/// Default step: ~50 samples per shear wavelength.
double default_fd_step(const ElasticMedium& med);

/// Spectral beam: superposition of downward P or S modes with a smooth
/// density supported strictly inside the propagating disk.
///   P:  u(x) = Int_{|xi|<R} (xi,-beta) g(xi) e^{i(xi.x' - beta (x3-b))} dxi
///   S:  u(x) = Int_{|xi|<R} [(xi,-gamma) x q(xi)] e^{i(xi.x' - gamma (x3-b))} dxi
/// where b = reference_height.  Densities with support_radius > 0.99 kappa
/// are rejected (the vertical wavenumber degenerates at the branch circle).
struct SpectralBeamSpec {
    enum class Kind { P, S };
    Kind kind = Kind::P;
    double support_radius = 0.0;
    double reference_height = 0.0;
    std::function<Complex(const Vec2&)> density_p;  // g, used when kind == P
    std::function<CVec3(const Vec2&)> density_s;    // q, used when kind == S
};

struct BeamQuadrature {
    double tolerance = 1e-8;
    int max_doublings = 12;    // node counts double until converged
    int initial_radial = 8;    // Gauss-Legendre points per radial panel
    int initial_angular = 16;  // trapezoid nodes on the circle
};

/// Disk-integral evaluation of the beam field.  Throws std::runtime_error
/// when the doubling strategy fails to meet the tolerance.
CVec3 eval_incident_beam(const ElasticMedium& med, const SpectralBeamSpec& spec, const Vec3& x,
                         const BeamQuadrature& quad = {});

/// Reflection of the beam off the rigid plane, mode-wise:
/// the per-mode trace at x3 = 0 is cancelled by an upward P+S pair.
CVec3 eval_reflected_beam(const ElasticMedium& med, const SpectralBeamSpec& spec, const Vec3& x,
                          const BeamQuadrature& quad = {});

/// Source density p = T u_in - DtN u_in on the plane x3 = 0, evaluated by
/// the explicit per-mode disk integral:
///   P:  p(x') = Int i (2 w^2 beta/denom) (-xi, gamma) g(xi) e^{i xi.x' + i beta b} dxi
///   S:  p(x') = Int i (2 w^2 gamma/denom) [q_perp(xi) x (xi,-beta)] e^{i xi.x' + i gamma b} dxi
/// with q_perp the projection of q orthogonal to (xi,-gamma) under the
/// bilinear dot product ((xi,-gamma).(xi,-gamma) = kappa_s^2).
CVec3 source_density_p(const ElasticMedium& med, const SpectralBeamSpec& spec, const Vec2& xp,
                       const BeamQuadrature& quad = {});

}  // namespace elhs
