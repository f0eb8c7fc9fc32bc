#include "elhs/kernels.hpp"

namespace elhs {

namespace {

CMat3 outer_pq(const CVec3& p, const CVec3& q) {
    return p * q.transpose();
}

CMat3 dtn_symbol_impl(const ElasticMedium& med, const Vec2& xi, Complex b, Complex g) {
    const double x1 = xi[0], x2 = xi[1];
    const double X = xi.squaredNorm();
    const double mu = med.mu;
    const double w2 = med.omega * med.omega;
    const double ks2 = med.kappa_s * med.kappa_s;
    const Complex den = b * g + X;
    const Complex c = 2.0 * mu * X - w2 + 2.0 * mu * b * g;

    CMat3 M;
    M << mu * ((g - b) * x2 * x2 + ks2 * b), -mu * x1 * x2 * (g - b), c * x1,
         -mu * x1 * x2 * (g - b), mu * ((g - b) * x1 * x1 + ks2 * b), c * x2,
         -c * x1, -c * x2, g * w2;
    return M / den;
}

}  // namespace

CMat3 dtn_symbol(const ElasticMedium& med, const Vec2& xi) {
    const SpectralSymbols s = spectral_symbols(med, xi);
    return dtn_symbol_impl(med, xi, s.beta, s.gamma);
}

CMat3 dtn_symbol_down(const ElasticMedium& med, const Vec2& xi) {
    const SpectralSymbols s = spectral_symbols(med, xi);
    return dtn_symbol_impl(med, xi, -s.beta, -s.gamma);
}

CMat3 traction_symbol(const ElasticMedium& med, const Vec2& xi, Complex k3) {
    const double x1 = xi[0], x2 = xi[1];
    const double mu = med.mu, lam = med.lambda;
    CMat3 T;
    T << mu * k3, 0.0, mu * x1,
         0.0, mu * k3, mu * x2,
         lam * x1, lam * x2, (lam + 2.0 * mu) * k3;
    return iu * T;
}

KernelMatrices kernel_matrices(const ElasticMedium& med, const Vec2& xi) {
    KernelMatrices k;
    k.sym = spectral_symbols(med, xi);
    const Complex b = k.sym.beta, g = k.sym.gamma, den = k.sym.denom;
    const double x1 = xi[0], x2 = xi[1];
    const double X = xi.squaredNorm();
    const double mu = med.mu, lam = med.lambda;
    const double kp2 = med.kappa_p * med.kappa_p;

    k.Dtilde << x1, 1.0, 0.0, 0.0,
                x2, 0.0, 1.0, 0.0,
                b, 0.0, 0.0, 1.0,
                0.0, x1, x2, g;

    k.D << x1, x2, g,
           b * g + x2 * x2, -x1 * x2, -x1 * g,
           -x1 * x2, b * g + x1 * x1, -x2 * g,
           -x1 * b, -x2 * b, X;
    k.D /= den;

    const CVec3 kP(x1, x2, b), kS(x1, x2, g);
    const CVec3 kPd(x1, x2, -b), kSd(x1, x2, -g);
    k.M_p = outer_pq(kP, kS);
    k.M_s = den * CMat3::Identity() - k.M_p;
    k.M_p_down = outer_pq(kPd, kSd);
    k.M_s_down = den * CMat3::Identity() - k.M_p_down;

    k.G << 2.0 * mu * b * x1, mu * g, 0.0, mu * x1,
           2.0 * mu * b * x2, 0.0, mu * g, mu * x2,
           2.0 * mu * b * b + lam * kp2, 0.0, 0.0, 2.0 * mu * g;

    k.M = dtn_symbol_impl(med, xi, b, g);
    k.M_minus = dtn_symbol_impl(med, xi, -b, -g);

    k.V << 0.0, 0.0, x1,
           0.0, 0.0, x2,
           x1, x2, 0.0;
    k.Mtilde_p = k.M_p * k.V;
    k.Mtilde_s = k.M_s * k.V;

    k.T_p = traction_symbol(med, xi, b);
    k.T_s = traction_symbol(med, xi, g);
    return k;
}

CMat3 asr_kernel(const ElasticMedium& med, const Vec2& xi, double dz, Direction dir) {
    const SpectralSymbols s = spectral_symbols(med, xi);
    const double x1 = xi[0], x2 = xi[1];
    const Complex b = s.beta, g = s.gamma;
    const Complex sgn = (dir == Direction::Up) ? 1.0 : -1.0;
    const CVec3 kP(x1, x2, sgn * b), kS(x1, x2, sgn * g);
    const CMat3 Mp = outer_pq(kP, kS);
    const CMat3 Ms = s.denom * CMat3::Identity() - Mp;
    // dz >= 0 in both directions; Im beta, Im gamma >= 0 so evanescent modes decay
    const Complex ep = std::exp(iu * b * dz);
    const Complex es = std::exp(iu * g * dz);
    return (Mp * ep + Ms * es) / s.denom;
}

}  // namespace elhs
