#pragma once

#include "elhs/types.hpp"

namespace elhs {

/// Homogeneous isotropic elastic medium with unit mass density.
/// Time-harmonic convention e^{-i omega t}; kappa_p < kappa_s always.
struct ElasticMedium {
    double lambda = 0.0;   // first Lame parameter
    double mu = 0.0;       // shear modulus
    double omega = 0.0;    // angular frequency
    double kappa_p = 0.0;  // compressional wavenumber omega/sqrt(lambda+2mu)
    double kappa_s = 0.0;  // shear wavenumber omega/sqrt(mu)
};

/// Validates mu > 0, lambda + 2mu/3 > 0, omega > 0 and derives the
/// wavenumbers.  Throws std::domain_error on invalid parameters.
ElasticMedium make_medium(double lambda, double mu, double omega);

/// Vertical spectral wavenumbers at horizontal wavevector xi.
///
/// beta  = sqrt(kappa_p^2 - |xi|^2)   for |xi| <  kappa_p
///       = i sqrt(|xi|^2 - kappa_p^2) for |xi| >= kappa_p   (0 on the circle)
/// and analogously gamma with kappa_s.  Both are either purely real >= 0 or
/// purely imaginary with positive imaginary part; denom = beta*gamma + |xi|^2
/// never vanishes for real xi.
struct SpectralSymbols {
    Vec2 xi = Vec2::Zero();
    Complex beta{};
    Complex gamma{};
    Complex denom{};
};

SpectralSymbols spectral_symbols(const ElasticMedium& med, const Vec2& xi);

/// Single branch evaluation: sqrt(kappa^2 - t2) per the convention above,
/// with t2 = |xi|^2.  Computed from the real difference, never from a
/// complex sqrt, so the sign convention Im >= 0 is structural.
Complex vertical_wavenumber(double kappa, double xi_norm_sq);

}  // namespace elhs
