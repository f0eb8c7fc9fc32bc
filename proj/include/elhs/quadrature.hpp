#pragma once

#include <functional>
#include <vector>

#include "elhs/types.hpp"

namespace elhs {

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per n, thread-safe.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

/// n-point Gauss-Legendre panel over [a, b] of a CMat3-valued integrand.
CMat3 gl_panel_mat3(const std::function<CMat3(double)>& f, double a, double b, int n);
CVec3 gl_panel_vec3(const std::function<CVec3(double)>& f, double a, double b, int n);

/// Adaptive bisection over [a, b]: a panel is accepted when the GL value and
/// its two-half refinement agree within the panel's tolerance share.
struct AdaptiveResult {
    CMat3 value = CMat3::Zero();
    double error = 0.0;       // accumulated local error estimate
    long evaluations = 0;
    bool converged = true;
};
AdaptiveResult integrate_adaptive_mat3(const std::function<CMat3(double)>& f, double a, double b,
                                       double tol, int max_depth = 14, int points = 15);

/// Disk integral of a CVec3-valued function over |xi| < radius, polar
/// coordinates: Gauss-Legendre radially, trapezoid in angle.  Node counts
/// double until successive values differ by less than tol (mixed
/// absolute/relative).  Throws std::runtime_error with the achieved gap
/// when max_doublings is exhausted.
///
/// sqrt_break > 0 names a branch wavenumber kappa where the integrand has
/// sqrt(kappa^2 - rho^2) behaviour: the radial axis is mapped through
/// rho = kappa sin t below it and rho = kappa cosh t above it, which makes
/// the integrand analytic per segment.
CVec3 disk_integral_adaptive(const std::function<CVec3(const Vec2&)>& f, double radius,
                             double tol, int initial_radial, int initial_angular,
                             int max_doublings, double sqrt_break = -1.0);

}  // namespace elhs
