#include "elhs/medium.hpp"

#include <cmath>
#include <stdexcept>

namespace elhs {

ElasticMedium make_medium(double lambda, double mu, double omega) {
    if (!(mu > 0.0))
        throw std::domain_error("make_medium: shear modulus mu must be > 0");
    if (!(lambda + 2.0 * mu / 3.0 > 0.0))
        throw std::domain_error("make_medium: bulk constraint lambda + 2mu/3 must be > 0");
    if (!(omega > 0.0))
        throw std::domain_error("make_medium: angular frequency omega must be > 0");

    ElasticMedium m;
    m.lambda = lambda;
    m.mu = mu;
    m.omega = omega;
    m.kappa_p = omega / std::sqrt(lambda + 2.0 * mu);
    m.kappa_s = omega / std::sqrt(mu);
    return m;
}

Complex vertical_wavenumber(double kappa, double xi_norm_sq) {
    const double d = kappa * kappa - xi_norm_sq;
    if (d > 0.0) return Complex(std::sqrt(d), 0.0);
    return Complex(0.0, std::sqrt(-d));
}

SpectralSymbols spectral_symbols(const ElasticMedium& med, const Vec2& xi) {
    SpectralSymbols s;
    s.xi = xi;
    const double t2 = xi.squaredNorm();
    s.beta = vertical_wavenumber(med.kappa_p, t2);
    s.gamma = vertical_wavenumber(med.kappa_s, t2);
    s.denom = s.beta * s.gamma + t2;
    return s;
}

}  // namespace elhs
