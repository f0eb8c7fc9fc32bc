#include "elhs/waves.hpp"

#include <cmath>
#include <stdexcept>

#include "elhs/kernels.hpp"
#include "elhs/quadrature.hpp"

namespace elhs {

Vec3 PlaneWaveSpec::direction() const {
    return Vec3(std::sin(theta) * std::cos(phi),
                std::sin(theta) * std::sin(phi),
                -std::cos(theta));
}

namespace {

void standard_polarizations(PlaneWaveSpec& s) {
    s.d1_perp = Vec3(std::cos(s.theta) * std::cos(s.phi),
                     std::cos(s.theta) * std::sin(s.phi),
                     std::sin(s.theta));
    s.d2_perp = Vec3(-std::sin(s.phi), std::cos(s.phi), 0.0);
}

}  // namespace

PlaneWaveSpec PlaneWaveSpec::pressure(double theta, double phi, Complex amplitude) {
    PlaneWaveSpec s;
    s.theta = theta;
    s.phi = phi;
    s.c_p = amplitude;
    standard_polarizations(s);
    return s;
}

PlaneWaveSpec PlaneWaveSpec::shear(double theta, double phi, Complex a1, Complex a2) {
    PlaneWaveSpec s;
    s.theta = theta;
    s.phi = phi;
    s.c_s1 = a1;
    s.c_s2 = a2;
    standard_polarizations(s);
    return s;
}

PlaneWaveSpec PlaneWaveSpec::mixed(double theta, double phi, Complex cp, Complex cs1, Complex cs2) {
    PlaneWaveSpec s;
    s.theta = theta;
    s.phi = phi;
    s.c_p = cp;
    s.c_s1 = cs1;
    s.c_s2 = cs2;
    standard_polarizations(s);
    return s;
}

void PlaneModeField::add(const CVec3& amplitude, const CVec3& wavevector) {
    modes_.push_back({amplitude, wavevector});
}

CVec3 PlaneModeField::operator()(const Vec3& x) const {
    CVec3 u = CVec3::Zero();
    for (const auto& m : modes_) {
        const Complex phase = m.wavevector[0] * x[0] + m.wavevector[1] * x[1] + m.wavevector[2] * x[2];
        u += m.amplitude * std::exp(iu * phase);
    }
    return u;
}

PlaneModeField incident_plane_field(const ElasticMedium& med, const PlaneWaveSpec& spec) {
    PlaneModeField f;
    const Vec3 d = spec.direction();
    if (spec.c_p != 0.0)
        f.add(spec.c_p * d.cast<Complex>(), med.kappa_p * d.cast<Complex>());
    if (spec.c_s1 != 0.0)
        f.add(spec.c_s1 * spec.d1_perp.cast<Complex>(), med.kappa_s * d.cast<Complex>());
    if (spec.c_s2 != 0.0)
        f.add(spec.c_s2 * spec.d2_perp.cast<Complex>(), med.kappa_s * d.cast<Complex>());
    return f;
}

namespace {

/// Reflection of one incident mode with polarization v, horizontal
/// wavevector alpha: boundary trace -v is re-radiated upward, split into
/// its P part along (alpha,beta) and transverse S remainder.
void add_reflected_modes(PlaneModeField& f, const SpectralSymbols& s, const CVec3& v,
                         Complex weight) {
    if (weight == 0.0) return;
    const CVec3 kP(s.xi[0], s.xi[1], s.beta);
    const CVec3 kS(s.xi[0], s.xi[1], s.gamma);
    const Complex ap = bdot(kS, v) / s.denom;
    const CVec3 a_p = -ap * kP;
    const CVec3 a_s = -(v - ap * kP);
    f.add(weight * a_p, kP);
    f.add(weight * a_s, kS);
}

}  // namespace

PlaneModeField reflected_plane_field(const ElasticMedium& med, const PlaneWaveSpec& spec) {
    PlaneModeField f;
    const Vec3 d = spec.direction();
    const double st = std::sin(spec.theta);
    const Vec2 alpha_p = med.kappa_p * st * Vec2(std::cos(spec.phi), std::sin(spec.phi));
    const Vec2 alpha_s = med.kappa_s * st * Vec2(std::cos(spec.phi), std::sin(spec.phi));
    if (spec.c_p != 0.0)
        add_reflected_modes(f, spectral_symbols(med, alpha_p), d.cast<Complex>(), spec.c_p);
    if (spec.c_s1 != 0.0)
        add_reflected_modes(f, spectral_symbols(med, alpha_s), spec.d1_perp.cast<Complex>(), spec.c_s1);
    if (spec.c_s2 != 0.0)
        add_reflected_modes(f, spectral_symbols(med, alpha_s), spec.d2_perp.cast<Complex>(), spec.c_s2);
    return f;
}

CVec3 eval_incident_plane(const ElasticMedium& med, const PlaneWaveSpec& spec, const Vec3& x) {
    return incident_plane_field(med, spec)(x);
}

CVec3 eval_reflected_plane(const ElasticMedium& med, const PlaneWaveSpec& spec, const Vec3& x) {
    return reflected_plane_field(med, spec)(x);
}

CVec3 traction(const ElasticMedium& med, const PlaneModeField& field, const Vec3& x) {
    CVec3 t = CVec3::Zero();
    for (const auto& m : field.modes()) {
        const CVec3& k = m.wavevector;
        const CVec3& c = m.amplitude;
        const Complex kc = k[0] * c[0] + k[1] * c[1] + k[2] * c[2];
        CVec3 v = 2.0 * med.mu * k[2] * c;
        v[2] += med.lambda * kc;
        v += med.mu * (k * c[2] - c * k[2]);
        const Complex phase = k[0] * x[0] + k[1] * x[1] + k[2] * x[2];
        t += iu * v * std::exp(iu * phase);
    }
    return t;
}

CVec3 traction_plane(const ElasticMedium& med, const PlaneModeField& field, const Vec2& xp) {
    return traction(med, field, Vec3(xp[0], xp[1], 0.0));
}

double default_fd_step(const ElasticMedium& med) {
    return 2.0 * M_PI / (50.0 * med.kappa_s);
}

namespace {

// 4th-order central stencils
constexpr double kD1[5] = {1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0};
constexpr double kD2[5] = {-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0};
constexpr int kOff[5] = {-2, -1, 0, 1, 2};

CVec3 second_derivative(const FieldEvaluator& u, const Vec3& x, int axis, double h) {
    CVec3 acc = CVec3::Zero();
    for (int a = 0; a < 5; ++a) {
        Vec3 p = x;
        p[axis] += kOff[a] * h;
        acc += kD2[a] * u(p);
    }
    return acc / (h * h);
}

CVec3 cross_derivative(const FieldEvaluator& u, const Vec3& x, int ax1, int ax2, double h) {
    CVec3 acc = CVec3::Zero();
    for (int a = 0; a < 5; ++a) {
        if (kD1[a] == 0.0) continue;
        for (int b = 0; b < 5; ++b) {
            if (kD1[b] == 0.0) continue;
            Vec3 p = x;
            p[ax1] += kOff[a] * h;
            p[ax2] += kOff[b] * h;
            acc += kD1[a] * kD1[b] * u(p);
        }
    }
    return acc / (h * h);
}

}  // namespace

CVec3 navier_residual(const ElasticMedium& med, const FieldEvaluator& u, const Vec3& x, double h) {
    CVec3 lap = CVec3::Zero();
    CVec3 dd[3];
    for (int k = 0; k < 3; ++k) {
        dd[k] = second_derivative(u, x, k, h);
        lap += dd[k];
    }
    // (grad div u)_j = sum_k d_j d_k u_k
    CVec3 graddiv;
    const CVec3 d01 = cross_derivative(u, x, 0, 1, h);
    const CVec3 d02 = cross_derivative(u, x, 0, 2, h);
    const CVec3 d12 = cross_derivative(u, x, 1, 2, h);
    graddiv[0] = dd[0][0] + d01[1] + d02[2];
    graddiv[1] = d01[0] + dd[1][1] + d12[2];
    graddiv[2] = d02[0] + d12[1] + dd[2][2];
    return med.mu * lap + (med.lambda + med.mu) * graddiv +
           med.omega * med.omega * u(x);
}

// ---------------------------------------------------------------------------
// spectral beams
// ---------------------------------------------------------------------------

namespace {

double beam_kappa(const ElasticMedium& med, const SpectralBeamSpec& spec) {
    return spec.kind == SpectralBeamSpec::Kind::P ? med.kappa_p : med.kappa_s;
}

void check_support(const ElasticMedium& med, const SpectralBeamSpec& spec) {
    const double kappa = beam_kappa(med, spec);
    if (spec.support_radius < 0.0)
        throw std::domain_error("spectral beam: support_radius must be >= 0");
    if (spec.support_radius > 0.99 * kappa)
        throw std::domain_error(
            "spectral beam: support_radius too close to the branch circle (> 0.99 kappa)");
}

/// Per-mode amplitude-and-vertical-wavenumber of the incident beam.
struct BeamMode {
    CVec3 amplitude;
    Complex k3;  // vertical wavenumber of e^{i k3 x3} after absorbing the -(x3-b) phase
};

CVec3 beam_disk_integral(const ElasticMedium& med, const SpectralBeamSpec& spec,
                         const BeamQuadrature& quad,
                         const std::function<CVec3(const SpectralSymbols&)>& mode_value) {
    check_support(med, spec);
    if (spec.support_radius == 0.0) return CVec3::Zero();
    auto f = [&](const Vec2& xi) { return mode_value(spectral_symbols(med, xi)); };
    // beta(xi) has a sqrt kink on the compressional circle, which S-beam
    // supports may cross; the substitution keeps the radial integrand smooth
    return disk_integral_adaptive(f, spec.support_radius, quad.tolerance, quad.initial_radial,
                                  quad.initial_angular, quad.max_doublings, med.kappa_p);
}

}  // namespace

CVec3 eval_incident_beam(const ElasticMedium& med, const SpectralBeamSpec& spec, const Vec3& x,
                         const BeamQuadrature& quad) {
    const double b = spec.reference_height;
    if (spec.kind == SpectralBeamSpec::Kind::P) {
        return beam_disk_integral(med, spec, quad, [&](const SpectralSymbols& s) -> CVec3 {
            const CVec3 k(s.xi[0], s.xi[1], -s.beta);
            const Complex phase = s.xi[0] * x[0] + s.xi[1] * x[1] - s.beta * (x[2] - b);
            return spec.density_p(s.xi) * k * std::exp(iu * phase);
        });
    }
    return beam_disk_integral(med, spec, quad, [&](const SpectralSymbols& s) -> CVec3 {
        const CVec3 kS(s.xi[0], s.xi[1], -s.gamma);
        const CVec3 w = bcross(kS, spec.density_s(s.xi));
        const Complex phase = s.xi[0] * x[0] + s.xi[1] * x[1] - s.gamma * (x[2] - b);
        return w * std::exp(iu * phase);
    });
}

namespace {

/// Upward re-radiation cancelling the per-mode trace t at x3 = 0.
CVec3 reflect_mode(const SpectralSymbols& s, const CVec3& t, const Vec3& x) {
    const CVec3 kP(s.xi[0], s.xi[1], s.beta);
    const CVec3 kS(s.xi[0], s.xi[1], s.gamma);
    const Complex ap = bdot(kS, t) / s.denom;
    const Complex horiz = s.xi[0] * x[0] + s.xi[1] * x[1];
    const CVec3 up = -ap * kP * std::exp(iu * (horiz + s.beta * x[2]));
    const CVec3 us = -(t - ap * kP) * std::exp(iu * (horiz + s.gamma * x[2]));
    return up + us;
}

}  // namespace

CVec3 eval_reflected_beam(const ElasticMedium& med, const SpectralBeamSpec& spec, const Vec3& x,
                          const BeamQuadrature& quad) {
    const double b = spec.reference_height;
    if (spec.kind == SpectralBeamSpec::Kind::P) {
        return beam_disk_integral(med, spec, quad, [&](const SpectralSymbols& s) -> CVec3 {
            const CVec3 t = spec.density_p(s.xi) *
                            CVec3(s.xi[0], s.xi[1], -s.beta) * std::exp(iu * s.beta * b);
            return reflect_mode(s, t, x);
        });
    }
    return beam_disk_integral(med, spec, quad, [&](const SpectralSymbols& s) -> CVec3 {
        const CVec3 kSd(s.xi[0], s.xi[1], -s.gamma);
        const CVec3 t = bcross(kSd, spec.density_s(s.xi)) * std::exp(iu * s.gamma * b);
        return reflect_mode(s, t, x);
    });
}

CVec3 source_density_p(const ElasticMedium& med, const SpectralBeamSpec& spec, const Vec2& xp,
                       const BeamQuadrature& quad) {
    const double b = spec.reference_height;
    const double w2 = med.omega * med.omega;
    if (spec.kind == SpectralBeamSpec::Kind::P) {
        return beam_disk_integral(med, spec, quad, [&](const SpectralSymbols& s) -> CVec3 {
            const CVec3 dir(-s.xi[0], -s.xi[1], s.gamma);
            const Complex phase = s.xi[0] * xp[0] + s.xi[1] * xp[1];
            return iu * (2.0 * w2 * s.beta / s.denom) * spec.density_p(s.xi) * dir *
                   std::exp(iu * phase) * std::exp(iu * s.beta * b);
        });
    }
    const double ks2 = med.kappa_s * med.kappa_s;
    return beam_disk_integral(med, spec, quad, [&](const SpectralSymbols& s) -> CVec3 {
        const CVec3 kSd(s.xi[0], s.xi[1], -s.gamma);
        const CVec3 q = spec.density_s(s.xi);
        // gauge: the beam sees only the part of q transverse to (xi,-gamma)
        const Complex along = (kSd[0] * q[0] + kSd[1] * q[1] + kSd[2] * q[2]) / ks2;
        const CVec3 qp = q - along * kSd;
        const CVec3 kPd(s.xi[0], s.xi[1], -s.beta);
        const Complex phase = s.xi[0] * xp[0] + s.xi[1] * xp[1];
        return iu * (2.0 * w2 * s.gamma / s.denom) * bcross(qp, kPd) *
               std::exp(iu * phase) * std::exp(iu * s.gamma * b);
    });
}

}  // namespace elhs
