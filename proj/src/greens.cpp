#include "elhs/greens.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "elhs/kernels.hpp"
#include "elhs/quadrature.hpp"

namespace elhs {

double QuadratureConfig::xi_max(double kappa_s, double h) const {
    // fixed point of sqrt(Xi^2 - ks^2) = log((ks Xi)^2 / tol) / h
    double xi = kappa_s + 1.0;
    for (int it = 0; it < 60; ++it) {
        const double target = std::log(std::max((kappa_s * xi) * (kappa_s * xi) / tolerance, 2.0)) / h;
        const double next = std::sqrt(target * target + kappa_s * kappa_s);
        if (std::abs(next - xi) < 1e-9 * next) return next;
        xi = next;
    }
    return xi;
}

CMat3 greens_free(const ElasticMedium& med, const Vec3& x, const Vec3& y) {
    const Vec3 d = y - x;
    const double r = d.norm();
    if (r < 1e-12)
        throw std::domain_error("greens_free: source and observation points coincide");
    const Vec3 rh = d / r;

    auto parts = [&](double kappa, Complex& g, Complex& g1, Complex& g2) {
        g = std::exp(iu * kappa * r) / (4.0 * M_PI * r);
        const Complex f = iu * kappa - 1.0 / r;
        g1 = f * g;
        g2 = (f * f + 1.0 / (r * r)) * g;
    };
    Complex gs, gs1, gs2, gp, gp1, gp2;
    parts(med.kappa_s, gs, gs1, gs2);
    parts(med.kappa_p, gp, gp1, gp2);

    const Eigen::Matrix3d P = rh * rh.transpose();
    const Eigen::Matrix3d Q = Eigen::Matrix3d::Identity() - P;
    const CMat3 hess_diff =
        (gs2 - gp2) * P.cast<Complex>() + ((gs1 - gp1) / r) * Q.cast<Complex>();
    return (gs / med.mu) * CMat3::Identity() + hess_diff / (med.omega * med.omega);
}

// ---------------------------------------------------------------------------
// spectral correction U
// ---------------------------------------------------------------------------

namespace {

struct RadialSegment {
    std::function<double(double)> rho;       // rho(t)
    std::function<double(double)> drho;      // d rho / d t
    double t0, t1;
};

/// Branch-regularizing radial parametrizations: rho = kappa sin t on the
/// propagating segments, rho = kappa cosh t past a branch circle.
std::vector<RadialSegment> radial_segments(double kp, double ks, double xi_max) {
    std::vector<RadialSegment> seg;
    const double km = 0.5 * (kp + ks);
    seg.push_back({[kp](double t) { return kp * std::sin(t); },
                   [kp](double t) { return kp * std::cos(t); }, 0.0, 0.5 * M_PI});
    seg.push_back({[kp](double t) { return kp * std::cosh(t); },
                   [kp](double t) { return kp * std::sinh(t); }, 0.0, std::acosh(km / kp)});
    seg.push_back({[ks](double t) { return ks * std::sin(t); },
                   [ks](double t) { return ks * std::cos(t); }, std::asin(km / ks), 0.5 * M_PI});
    if (xi_max > ks)
        seg.push_back({[ks](double t) { return ks * std::cosh(t); },
                       [ks](double t) { return ks * std::sinh(t); }, 0.0,
                       std::acosh(xi_max / ks)});
    return seg;
}

/// 2-D spectral integral Int F(xi) dxi in polar coordinates with the
/// branch-split radial substitutions; F is a ring integral evaluated by
/// trapezoid with an oscillation-tracking node count.
CMat3 spectral_integral(const ElasticMedium& med, const QuadratureConfig& config,
                        double xi_max, double osc_scale,
                        const std::function<CMat3(const Vec2&)>& F, double* error_out) {
    auto ring = [&](double rho) -> CMat3 {
        int na = std::max(config.n_angular_min,
                          config.angular_per_cycle *
                              static_cast<int>(std::ceil(std::max(rho, med.kappa_s) * osc_scale)));
        na = std::min(na, 4096);
        CMat3 acc = CMat3::Zero();
        for (int j = 0; j < na; ++j) {
            const double th = 2.0 * M_PI * j / na;
            acc += F(Vec2(rho * std::cos(th), rho * std::sin(th)));
        }
        return acc * (2.0 * M_PI / na) * rho;
    };

    CMat3 total = CMat3::Zero();
    double err = 0.0;
    const auto segments = radial_segments(med.kappa_p, med.kappa_s, xi_max);
    const double tol_share = config.tolerance / segments.size();
    for (const auto& seg : segments) {
        auto f = [&](double t) -> CMat3 { return ring(seg.rho(t)) * seg.drho(t); };
        AdaptiveResult r = integrate_adaptive_mat3(f, seg.t0, seg.t1, tol_share, config.max_depth);
        total += r.value;
        err += r.error;
    }
    if (error_out) *error_out = err;
    return total;
}

CMat3 mtilde_p(const Vec2& xi, Complex b, Complex g) {
    const double x1 = xi[0], x2 = xi[1];
    const double X = xi.squaredNorm();
    CMat3 m;
    m << g * x1 * x1, g * x1 * x2, x1 * X,
         g * x1 * x2, g * x2 * x2, x2 * X,
         b * g * x1, b * g * x2, b * X;
    return m;
}

CMat3 mtilde_s(const Vec2& xi, Complex b, Complex g) {
    // M_s V = (den I - M_p) V = den V - Mtilde_p
    const double x1 = xi[0], x2 = xi[1];
    const double X = xi.squaredNorm();
    const Complex den = b * g + X;
    CMat3 V;
    V << 0.0, 0.0, x1,
         0.0, 0.0, x2,
         x1, x2, 0.0;
    return den * V - mtilde_p(xi, b, g);
}

void require_heights(const ElasticMedium& med, const QuadratureConfig& config, double h) {
    if (h < config.h_min_factor / med.kappa_s)
        throw std::runtime_error(
            "halfspace correction: x3 + y3 below h_min; spectral tail does not truncate");
}

}  // namespace

CMat3 correction_tensor(const ElasticMedium& med, const Vec3& x, const Vec3& y,
                        const QuadratureConfig& config, CorrectionPiece piece,
                        double* error_estimate) {
    const double h = x[2] + y[2];
    require_heights(med, config, h);
    const double xi_max = config.xi_max(med.kappa_s, h);
    const Vec2 dxy(y[0] - x[0], y[1] - x[1]);
    const double osc_scale = dxy.norm() + 1e-12;

    auto F = [&](const Vec2& xi) -> CMat3 {
        const SpectralSymbols s = spectral_symbols(med, xi);
        const Complex eb = std::exp(iu * s.beta * x[2]);
        const Complex eg = std::exp(iu * s.gamma * x[2]);
        const Complex phase = std::exp(iu * (xi[0] * dxy[0] + xi[1] * dxy[1]));
        CMat3 acc = CMat3::Zero();
        if (piece != CorrectionPiece::S)
            acc += mtilde_p(xi, s.beta, s.gamma) * std::exp(iu * s.beta * y[2]);
        if (piece != CorrectionPiece::P)
            acc += mtilde_s(xi, s.beta, s.gamma) * std::exp(iu * s.gamma * y[2]);
        return acc * (phase * (eb - eg) / s.denom);
    };

    double err = 0.0;
    CMat3 raw = spectral_integral(med, config, xi_max, osc_scale, F, &err);
    const double w2 = med.omega * med.omega;
    const double scale = 1.0 / (4.0 * M_PI * M_PI * w2);
    if (error_estimate) *error_estimate = err * scale + config.tolerance * 0.1;
    return (iu * scale) * raw;
}

GreensResult greens_halfspace(const ElasticMedium& med, const Vec3& x, const Vec3& y,
                              const QuadratureConfig& config, bool want_parts) {
    if (x[2] < 0.0 || y[2] < 0.0)
        throw std::domain_error("greens_halfspace: both points must lie in x3 >= 0");
    GreensResult res;
    GreensParts parts;
    parts.free = greens_free(med, x, y);
    const Vec3 xt(x[0], x[1], -x[2]);
    parts.image = greens_free(med, xt, y);
    parts.correction =
        correction_tensor(med, x, y, config, CorrectionPiece::Both, &res.error_estimate);
    res.value = parts.free - parts.image + parts.correction;
    if (want_parts) res.parts = parts;
    return res;
}

// ---------------------------------------------------------------------------
// layer potential
// ---------------------------------------------------------------------------

namespace {

/// Trace transform of the free tensor on y3 = 0 in the unscaled convention:
/// ghat = i/(2 k3) e^{i k3 |x3|} e^{-i xi.x'}.  upward selects the vertical
/// mode orientation seen from y3 = 0 (upward for the image point).
CMat3 greens_trace_hat(const ElasticMedium& med, const Vec2& xi, const Vec3& x, bool upward) {
    const SpectralSymbols s = spectral_symbols(med, xi);
    const double z = std::abs(x[2]);
    const Complex ph = std::exp(-iu * (xi[0] * x[0] + xi[1] * x[1]));
    const Complex gp = iu / (2.0 * s.beta) * std::exp(iu * s.beta * z) * ph;
    const Complex gs = iu / (2.0 * s.gamma) * std::exp(iu * s.gamma * z) * ph;
    const Complex sgn = upward ? 1.0 : -1.0;
    const CVec3 kP(xi[0], xi[1], sgn * s.beta);
    const CVec3 kS(xi[0], xi[1], sgn * s.gamma);
    const double w2 = med.omega * med.omega;
    return (gs / med.mu) * CMat3::Identity() -
           (kS * kS.transpose() * gs - kP * kP.transpose() * gp) / w2;
}

/// Trace transform of the correction U on y3 = 0, same convention:
/// Uhat(x, xi) = (i/w^2) (e^{i b x3} - e^{i g x3}) V(xi) e^{-i xi.x'}.
CMat3 correction_trace_hat(const ElasticMedium& med, const Vec2& xi, const Vec3& x) {
    const SpectralSymbols s = spectral_symbols(med, xi);
    const double w2 = med.omega * med.omega;
    CMat3 V;
    V << 0.0, 0.0, xi[0],
         0.0, 0.0, xi[1],
         xi[0], xi[1], 0.0;
    const Complex ph = std::exp(-iu * (xi[0] * x[0] + xi[1] * x[1]));
    return (iu / w2) * (std::exp(iu * s.beta * x[2]) - std::exp(iu * s.gamma * x[2])) * V * ph;
}

}  // namespace

CMat3 layer_kernel_green(const ElasticMedium& med, const Vec2& xi, const Vec3& x) {
    const Vec2 mxi = -xi;
    const Vec3 xt(x[0], x[1], -x[2]);
    const CMat3 Mup = dtn_symbol(med, mxi);
    const CMat3 Mdown = dtn_symbol_down(med, mxi);
    // T_y[G - G~ + U] transformed on y3 = 0: the downward DtN acts on the
    // direct trace, the upward DtN on the image and correction traces
    const CMat3 A = iu * Mdown * greens_trace_hat(med, mxi, x, /*upward=*/false) -
                    iu * Mup * greens_trace_hat(med, mxi, xt, /*upward=*/true) +
                    iu * Mup * correction_trace_hat(med, mxi, x);
    return A.transpose();
}

CMat3 layer_kernel_asr(const ElasticMedium& med, const Vec2& xi, const Vec3& x) {
    const SpectralSymbols s = spectral_symbols(med, xi);
    const CVec3 kP(xi[0], xi[1], s.beta), kS(xi[0], xi[1], s.gamma);
    const CMat3 Mp = kP * kS.transpose();
    const CMat3 Ms = s.denom * CMat3::Identity() - Mp;
    const Complex ph = std::exp(iu * (xi[0] * x[0] + xi[1] * x[1]));
    return (Mp * std::exp(iu * s.beta * x[2]) + Ms * std::exp(iu * s.gamma * x[2])) *
           (ph / s.denom);
}

CVec3 layer_potential(const ElasticMedium& med, const std::function<CVec3(const Vec2&)>& v,
                      const SupportPatch& support, const Vec3& x,
                      const QuadratureConfig& config) {
    if (!(x[2] > 0.0))
        throw std::domain_error("layer_potential: target must satisfy x3 > 0");
    require_heights(med, config, x[2]);

    // precompute the density at tensor Gauss-Legendre patch nodes
    const int np = config.patch_points;
    const GaussLegendre& gl = gauss_legendre(np);
    std::vector<double> y1(np), y2(np), w1(np), w2v(np);
    for (int i = 0; i < np; ++i) {
        y1[i] = 0.5 * (support.lo[0] + support.hi[0]) + 0.5 * (support.hi[0] - support.lo[0]) * gl.nodes[i];
        w1[i] = 0.5 * (support.hi[0] - support.lo[0]) * gl.weights[i];
        y2[i] = 0.5 * (support.lo[1] + support.hi[1]) + 0.5 * (support.hi[1] - support.lo[1]) * gl.nodes[i];
        w2v[i] = 0.5 * (support.hi[1] - support.lo[1]) * gl.weights[i];
    }
    std::vector<CVec3> vals(static_cast<size_t>(np) * np);
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < np; ++j) vals[i * np + j] = v(Vec2(y1[i], y2[j]));

    // vhat(xi) = (1/2pi) Int v e^{-i xi.y'} dy', separable phases per axis
    std::vector<Complex> ph1(np), ph2(np);
    auto vhat = [&](const Vec2& xi) -> CVec3 {
        for (int i = 0; i < np; ++i) {
            ph1[i] = w1[i] * std::exp(-iu * xi[0] * y1[i]);
            ph2[i] = w2v[i] * std::exp(-iu * xi[1] * y2[i]);
        }
        CVec3 acc = CVec3::Zero();
        for (int i = 0; i < np; ++i) {
            CVec3 row = CVec3::Zero();
            for (int j = 0; j < np; ++j) row += ph2[j] * vals[i * np + j];
            acc += ph1[i] * row;
        }
        return acc / (2.0 * M_PI);
    };

    const double xi_max = config.xi_max(med.kappa_s, x[2]);
    const Vec2 centre = 0.5 * (support.lo + support.hi);
    const double patch_radius = 0.5 * (support.hi - support.lo).norm();
    const double osc_scale = (Vec2(x[0], x[1]) - centre).norm() + patch_radius + 1.0;

    // integrand as a 3x3 block with the result in column 0
    auto F = [&](const Vec2& xi) -> CMat3 {
        CMat3 out = CMat3::Zero();
        out.col(0) = layer_kernel_green(med, xi, x) * vhat(xi);
        return out;
    };
    double err = 0.0;
    const CMat3 acc = spectral_integral(med, config, xi_max, osc_scale, F, &err);
    return acc.col(0) / (2.0 * M_PI);
}

DecayReport kupradze_decay_diagnostic(const ElasticMedium& med, const QuadratureConfig& config,
                                      const Vec3& direction, const std::vector<double>& radii,
                                      const Vec3& y) {
    if (!(direction[2] > 0.0))
        throw std::domain_error("kupradze_decay_diagnostic: direction must point upward");
    if (radii.size() < 2 || !std::is_sorted(radii.begin(), radii.end()) ||
        radii.front() < 5.0 / med.kappa_p)
        throw std::domain_error(
            "kupradze_decay_diagnostic: radii must increase and start at 5/kappa_p or beyond");
    const Vec3 d = direction.normalized();
    DecayReport rep;
    rep.radii = radii;
    for (double r : radii) {
        const Vec3 x = r * d;
        rep.norm_p.push_back(
            correction_tensor(med, x, y, config, CorrectionPiece::P, nullptr).norm());
        rep.norm_s.push_back(
            correction_tensor(med, x, y, config, CorrectionPiece::S, nullptr).norm());
    }
    auto fit = [&](const std::vector<double>& vals) {
        // least-squares slope of log|U| vs log r
        const int n = static_cast<int>(vals.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < n; ++i) {
            const double lx = std::log(rep.radii[i]), ly = std::log(vals[i]);
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    rep.slope_p = fit(rep.norm_p);
    rep.slope_s = fit(rep.norm_s);
    return rep;
}

}  // namespace elhs
