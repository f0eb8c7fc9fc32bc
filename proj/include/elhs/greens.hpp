#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "elhs/medium.hpp"
#include "elhs/types.hpp"

namespace elhs {

/// Controls for the oscillatory spectral quadratures.
struct QuadratureConfig {
    double tolerance = 1e-8;     // absolute target for the spectral integrals
    int max_depth = 13;          // adaptive radial bisection depth
    int n_angular_min = 16;      // floor for trapezoid nodes on a ring
    int angular_per_cycle = 8;   // nodes per oscillation period rho*|dx'|
    double h_min_factor = 1e-3;  // reject x3+y3 < h_min_factor / kappa_s
    int patch_points = 40;       // Gauss-Legendre points per axis on a source patch

    /// Truncation radius: smallest Xi with
    /// e^{-sqrt(Xi^2-kappa_s^2) h} (kappa_s Xi)^2 <= tolerance.
    double xi_max(double kappa_s, double h) const;
};

/// Free-space Green tensor of the Navier equation,
/// G(x,y) = g_s/mu I + (1/w^2) Hess_y (g_s - g_p).
/// Throws std::domain_error when |x-y| < 1e-12.
CMat3 greens_free(const ElasticMedium& med, const Vec3& x, const Vec3& y);

struct GreensParts {
    CMat3 free = CMat3::Zero();        // G(x, y)
    CMat3 image = CMat3::Zero();       // G(x~, y), x~ = (x', -x3)
    CMat3 correction = CMat3::Zero();  // U(x, y)
};

struct GreensResult {
    CMat3 value = CMat3::Zero();
    double error_estimate = 0.0;
    std::optional<GreensParts> parts;
};

/// Half-space (rigid boundary) Green tensor G_H = G - G~ + U for
/// x3 > 0, y3 > 0.  U is the smooth spectral correction
///   U(x,y) = i/(4 pi^2 w^2) Int (1/den) [Mp~ e^{i b y3} + Ms~ e^{i g y3}]
///            e^{i xi.(y'-x')} (e^{i b x3} - e^{i g x3}) dxi
/// evaluated by branch-split polar quadrature.  Throws std::runtime_error
/// when x3 + y3 < h_min (the evanescent tail no longer truncates).
GreensResult greens_halfspace(const ElasticMedium& med, const Vec3& x, const Vec3& y,
                              const QuadratureConfig& config = {}, bool want_parts = false);

enum class CorrectionPiece { Both, P, S };

/// The correction U alone (or its P/S piece).
CMat3 correction_tensor(const ElasticMedium& med, const Vec3& x, const Vec3& y,
                        const QuadratureConfig& config, CorrectionPiece piece,
                        double* error_estimate = nullptr);

/// Per-xi kernel of the layer-potential representation, assembled from the
/// Green-tensor side (traction traces of G, G~ and U on the plane y3 = 0):
///   K(xi, x) = [ i M^-(-xi) Ghat(x,-xi) + i M(-xi) Ghat(x~,-xi) + That_U(x,-xi) ]^T
/// in the unscaled transform convention (ghat = i/(2 k3) e^{i k3 x3} e^{-i xi.x'}).
CMat3 layer_kernel_green(const ElasticMedium& med, const Vec2& xi, const Vec3& x);

/// The same kernel from the angular-spectrum side,
///   (1/den) [M_p(xi) e^{i b x3} + M_s(xi) e^{i g x3}] e^{i xi.x'}.
CMat3 layer_kernel_asr(const ElasticMedium& med, const Vec2& xi, const Vec3& x);

/// Axis-aligned rectangular support of a surface density.
struct SupportPatch {
    Vec2 lo = Vec2::Zero();
    Vec2 hi = Vec2::Zero();
};

/// Action of the layer-potential representation on a compactly supported
/// Dirichlet trace v on the plane x3 = 0:
///   u(x) = Int_{Gamma_0} T_y G_H(x, y) v(y) ds(y),  x3 > 0,
/// realized spectrally as (1/2pi) Int K(xi, x) vhat(xi) dxi with K the
/// Green-side kernel above and vhat the continuum transform of v.
CVec3 layer_potential(const ElasticMedium& med, const std::function<CVec3(const Vec2&)>& v,
                      const SupportPatch& support, const Vec3& x,
                      const QuadratureConfig& config = {});

struct DecayReport {
    std::vector<double> radii;
    std::vector<double> norm_p;  // |U_p| along the ray
    std::vector<double> norm_s;  // |U_s|
    double slope_p = 0.0;        // log-log regression slopes
    double slope_s = 0.0;
};

/// Samples the correction pieces along x = r * direction (fixed y) and fits
/// log|U| against log r.  direction must have positive third component and
/// the radii must be increasing.
DecayReport kupradze_decay_diagnostic(const ElasticMedium& med, const QuadratureConfig& config,
                                      const Vec3& direction, const std::vector<double>& radii,
                                      const Vec3& y = Vec3(0.25, -0.4, 1.2));

}  // namespace elhs
