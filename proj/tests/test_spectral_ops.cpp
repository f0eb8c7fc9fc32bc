#include <doctest.h>

#include <random>

#include "elhs/spectral_ops.hpp"
#include "elhs/validate.hpp"
#include "elhs/waves.hpp"

using namespace elhs;

namespace {

const ElasticMedium kMed = make_medium(2.0, 1.0, 2.0);

TraceGrid single_mode_trace(double L, int n, const Vec2& alpha, const Vec2& xi0,
                            const CVec3& amp) {
    return TraceGrid::from_function(L, n, alpha, 0.0, [&](const Vec2& x) -> CVec3 {
        return amp * std::exp(iu * (xi0[0] * x[0] + xi0[1] * x[1]));
    });
}

}  // namespace

TEST_CASE("transform round trip is lossless") {
    std::mt19937_64 rng(17);
    const TraceGrid t = random_trace(kMed, 2.0 * M_PI * 1.3, 16, Vec2(0.23, -0.41), 0.7, rng);
    const TraceGrid back = inverse_transform(forward_transform(t));
    double worst = 0.0, scale = 0.0;
    for (int k = 0; k < 16 * 16; ++k) {
        worst = std::max(worst, (t.values()[k] - back.values()[k]).norm());
        scale = std::max(scale, t.values()[k].norm());
    }
    CHECK(worst <= 1e-13 * scale);
}

TEST_CASE("forward transform reproduces the delta normalization") {
    // a pure quasi-periodic mode e^{i xi_m . x'} has coefficient L^2/(2 pi)
    // at its bin (the discrete stand-in for 2 pi delta(xi - xi_m))
    const double L = 5.0;
    const int n = 8;
    const Vec2 alpha(0.3, 0.1);
    const Vec2 xi0 = alpha + (2.0 * M_PI / L) * Vec2(2, -3);
    const TraceGrid t = single_mode_trace(L, n, alpha, xi0, CVec3(1.0, 0.0, 0.0));
    const SpectrumGrid s = forward_transform(t);
    const double expected = L * L / (2.0 * M_PI);
    for (int bi = 0; bi < n; ++bi)
        for (int bj = 0; bj < n; ++bj) {
            const Complex c = s.coeff[s.idx(bi, bj)][0];
            if (s.mode_of_bin(bi) == 2 && s.mode_of_bin(bj) == -3)
                CHECK(std::abs(c - expected) <= 1e-13 * expected);
            else
                CHECK(std::abs(c) <= 1e-13 * expected);
        }
}

TEST_CASE("TraceGrid validates its construction parameters") {
    CHECK_THROWS_AS(TraceGrid(1.0, 12, Vec2::Zero(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TraceGrid(1.0, 0, Vec2::Zero(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TraceGrid(-1.0, 8, Vec2::Zero(), 0.0), std::invalid_argument);
}

TEST_CASE("decomposition of a vertical Dirichlet mode") {
    // trace (0,0,1) e^{i xi0.x'} with |xi0| < kappa_p: A_p = gamma/denom,
    // A_s = e3 - A_p (xi0, beta)
    const double L = 2.0 * M_PI;
    const int n = 8;
    const Vec2 xi0(0.5, 0.25);
    const TraceGrid t = single_mode_trace(L, n, xi0, xi0, CVec3(0, 0, 1));
    const SpectralDecomposition dec = decompose_trace(kMed, t);
    const SpectralSymbols s = spectral_symbols(kMed, xi0);
    const Complex ap_expect = s.gamma / s.denom;
    const CVec3 as_expect = CVec3(0, 0, 1) - ap_expect * CVec3(xi0[0], xi0[1], s.beta);
    const int k = dec.idx(0, 0);  // xi0 sits at m = (0,0) since alpha = xi0
    CHECK(std::abs(dec.A_p[k] - ap_expect) <= 1e-13);
    CHECK((dec.A_s[k] - as_expect).norm() <= 1e-13);
    // every other mode silent
    double rest = 0.0;
    for (int b = 1; b < n * n; ++b) rest += std::abs(dec.A_p[b]) + dec.A_s[b].norm();
    CHECK(rest <= 1e-12);
}

TEST_CASE("decomposition matches a direct 4x4 solve of the mode-matching system") {
    std::mt19937_64 rng(31);
    const Vec2 alpha(0.12, -0.34);
    const TraceGrid t = random_trace(kMed, 2.0 * M_PI, 8, alpha, 0.0, rng);
    const SpectralDecomposition dec = decompose_trace(kMed, t);
    const SpectrumGrid spec = forward_transform(t);
    const double series = 2.0 * M_PI / (t.cell_length() * t.cell_length());
    for (int bi = 0; bi < 8; ++bi)
        for (int bj = 0; bj < 8; ++bj) {
            if (spec.is_nyquist(bi) || spec.is_nyquist(bj)) continue;
            const Vec2 xi = spec.mode_xi(bi, bj);
            const SpectralSymbols s = spectral_symbols(kMed, xi);
            CMat4 Dt;
            Dt << xi[0], 1.0, 0.0, 0.0,
                  xi[1], 0.0, 1.0, 0.0,
                  s.beta, 0.0, 0.0, 1.0,
                  0.0, xi[0], xi[1], s.gamma;
            CVec4 rhs;
            const CVec3 um = series * spec.coeff[spec.idx(bi, bj)];
            rhs << um[0], um[1], um[2], 0.0;
            const CVec4 A = Dt.colPivHouseholderQr().solve(rhs);  // independent route
            const int k = dec.idx(bi, bj);
            CHECK(std::abs(A[0] - dec.A_p[k]) <= 1e-12 * std::max(1.0, std::abs(A[0])));
            CHECK((A.tail<3>() - dec.A_s[k]).norm() <= 1e-12);
        }
}

TEST_CASE("decomposition annihilates the shear part of a pure P mode") {
    const Vec2 xi0(0.4, -0.2);
    const SpectralSymbols s = spectral_symbols(kMed, xi0);
    const CVec3 amp = Complex(0.8, -0.3) * CVec3(xi0[0], xi0[1], s.beta);
    const TraceGrid t = single_mode_trace(2.0 * M_PI, 8, xi0, xi0, amp);
    const SpectralDecomposition dec = decompose_trace(kMed, t);
    const int k = dec.idx(0, 0);
    CHECK(std::abs(dec.A_p[k] - Complex(0.8, -0.3)) <= 1e-13);
    CHECK(dec.A_s[k].norm() <= 1e-13);
}

TEST_CASE("shear amplitudes are orthogonal to (xi, gamma)") {
    std::mt19937_64 rng(5);
    const TraceGrid t = random_trace(kMed, 2.0 * M_PI, 16, Vec2(0.21, 0.43), 0.0, rng);
    const SpectralDecomposition dec = decompose_trace(kMed, t);
    for (int bi = 0; bi < 16; ++bi)
        for (int bj = 0; bj < 16; ++bj) {
            const int k = dec.idx(bi, bj);
            const Vec2 xi = dec.mode_xi(bi, bj);
            const SpectralSymbols s = spectral_symbols(kMed, xi);
            const CVec3 ks(xi[0], xi[1], s.gamma);
            const Complex dot = bdot(ks, dec.A_s[k]);
            CHECK(std::abs(dot) <= 1e-12 * std::max(1.0, dec.A_s[k].norm() * std::abs(ks.norm())));
        }
}

TEST_CASE("zero trace decomposes to zero") {
    const TraceGrid t(2.0 * M_PI, 8, Vec2(0.1, 0.2), 0.0);
    const SpectralDecomposition dec = decompose_trace(kMed, t);
    for (int k = 0; k < 8 * 8; ++k) {
        CHECK(dec.A_p[k] == Complex(0.0, 0.0));
        CHECK(dec.A_s[k].norm() == 0.0);
    }
}

TEST_CASE("propagate: identity at dz = 0, semigroup in dz") {
    std::mt19937_64 rng(23);
    const TraceGrid t = random_trace(kMed, 2.0 * M_PI, 16, Vec2(0.31, -0.11), 0.0, rng);
    std::string warning;
    const TraceGrid same = propagate(kMed, t, 0.0, Direction::Up, &warning);
    CHECK(!warning.empty());
    for (int k = 0; k < 16 * 16; ++k) CHECK((same.values()[k] - t.values()[k]).norm() == 0.0);

    const TraceGrid ab = propagate(kMed, propagate(kMed, t, 0.4, Direction::Up), 0.9, Direction::Up);
    const TraceGrid once = propagate(kMed, t, 1.3, Direction::Up);
    double worst = 0.0, scale = 0.0;
    for (int k = 0; k < 16 * 16; ++k) {
        worst = std::max(worst, (ab.values()[k] - once.values()[k]).norm());
        scale = std::max(scale, once.values()[k].norm());
    }
    CHECK(worst <= 1e-12 * std::max(1.0, scale));
    CHECK(once.height() == doctest::Approx(1.3));
}

TEST_CASE("propagate matches the closed-form reflected plane wave") {
    const PlaneWaveSpec spec = PlaneWaveSpec::mixed(0.4, 1.1, Complex(0.7, 0.1), 0.0, 0.0);
    const PlaneModeField ure = reflected_plane_field(kMed, spec);
    const Vec2 alpha = kMed.kappa_p * std::sin(spec.theta) *
                       Vec2(std::cos(spec.phi), std::sin(spec.phi));
    const int n = 8;
    const TraceGrid t0 = TraceGrid::from_function(2.0 * M_PI, n, alpha, 0.0, [&](const Vec2& x) {
        return ure(Vec3(x[0], x[1], 0.0));
    });
    const double dz = 1.0;
    const TraceGrid t1 = propagate(kMed, t0, dz, Direction::Up);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Vec2 x = t1.point(i, j);
            worst = std::max(worst, (t1.at(i, j) - ure(Vec3(x[0], x[1], dz))).norm());
        }
    CHECK(worst <= 1e-11);
}

TEST_CASE("downward propagation matches the closed-form incident plane wave") {
    // the incident (downgoing) field is the reference for Direction::Down
    const PlaneWaveSpec spec = PlaneWaveSpec::shear(0.5, 0.7, Complex(0.6, -0.3), 0.2);
    const PlaneModeField uin = incident_plane_field(kMed, spec);
    const Vec2 alpha = kMed.kappa_s * std::sin(spec.theta) *
                       Vec2(std::cos(spec.phi), std::sin(spec.phi));
    const int n = 8;
    const double z0 = 2.0;
    const TraceGrid t0 = TraceGrid::from_function(2.0 * M_PI, n, alpha, z0, [&](const Vec2& x) {
        return uin(Vec3(x[0], x[1], z0));
    });
    const double dz = 1.3;
    const TraceGrid t1 = propagate(kMed, t0, dz, Direction::Down);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Vec2 x = t1.point(i, j);
            worst = std::max(worst, (t1.at(i, j) - uin(Vec3(x[0], x[1], z0 - dz))).norm());
        }
    CHECK(worst <= 1e-11);
    CHECK(t1.height() == doctest::Approx(z0 - dz));
}

TEST_CASE("apply_dtn matches the analytic traction of the radiating extension") {
    const Vec2 xi0(0.45, -0.15);
    const TraceGrid t = single_mode_trace(2.0 * M_PI, 8, xi0, xi0, CVec3(0, 0, 1));
    const TraceGrid dtn = apply_dtn(kMed, t, Direction::Up);

    // independent route: decompose, build the two analytic modes, apply the
    // exact traction operator from the waves module
    const SpectralSymbols s = spectral_symbols(kMed, xi0);
    const SpectralDecomposition dec = decompose_trace(kMed, t);
    const int k0 = dec.idx(0, 0);
    PlaneModeField ext;
    ext.add(dec.A_p[k0] * CVec3(xi0[0], xi0[1], s.beta), CVec3(xi0[0], xi0[1], s.beta));
    ext.add(dec.A_s[k0], CVec3(xi0[0], xi0[1], s.gamma));
    double worst = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const Vec2 x = t.point(i, j);
            worst = std::max(worst, (dtn.at(i, j) - traction_plane(kMed, ext, x)).norm());
        }
    CHECK(worst <= 1e-12);
}

TEST_CASE("apply_dtn of a zero trace is zero") {
    const TraceGrid t(2.0 * M_PI, 8, Vec2::Zero(), 0.0);
    const TraceGrid dtn = apply_dtn(kMed, t, Direction::Up);
    for (const auto& v : dtn.values()) CHECK(v.norm() == 0.0);
}

TEST_CASE("Rayleigh coefficients equal the D-matrix decomposition") {
    std::mt19937_64 rng(51);
    const TraceGrid t = random_trace(kMed, 2.0 * M_PI * 0.8, 16, Vec2(0.05, 0.4), 0.0, rng);
    const SpectralDecomposition a = decompose_trace(kMed, t);
    const SpectralDecomposition b = rayleigh_coefficients(kMed, t);
    for (int k = 0; k < 16 * 16; ++k) {
        CHECK(std::abs(a.A_p[k] - b.A_p[k]) <= 1e-12 * std::max(1.0, std::abs(a.A_p[k])));
        CHECK((a.A_s[k] - b.A_s[k]).norm() <= 1e-12 * std::max(1.0, a.A_s[k].norm()));
    }
}

TEST_CASE("Rayleigh evaluation reproduces the trace at its own height") {
    std::mt19937_64 rng(61);
    const TraceGrid t = random_trace(kMed, 2.0 * M_PI, 8, Vec2(0.2, -0.3), 0.5, rng);
    const SpectralDecomposition dec = rayleigh_coefficients(kMed, t);
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const Vec2 x = t.point(i, j);
            worst = std::max(worst,
                             (rayleigh_evaluate(kMed, dec, Vec3(x[0], x[1], 0.5)) - t.at(i, j)).norm());
            scale = std::max(scale, t.at(i, j).norm());
        }
    CHECK(worst <= 1e-12 * std::max(1.0, scale));
}

TEST_CASE("single propagating P mode evaluates as one Rayleigh term") {
    const Vec2 xi0(0.3, 0.1);
    const SpectralSymbols s = spectral_symbols(kMed, xi0);
    const Complex ap(1.3, -0.2);
    const CVec3 amp = ap * CVec3(xi0[0], xi0[1], s.beta);
    const TraceGrid t = single_mode_trace(2.0 * M_PI, 8, xi0, xi0, amp);
    const SpectralDecomposition dec = rayleigh_coefficients(kMed, t);
    const Vec3 x(0.7, -0.4, 1.9);
    const CVec3 expect = ap * CVec3(xi0[0], xi0[1], s.beta) *
                         std::exp(iu * (xi0[0] * x[0] + xi0[1] * x[1] + s.beta * x[2]));
    CHECK((rayleigh_evaluate(kMed, dec, x) - expect).norm() <= 1e-12 * expect.norm());
}

TEST_CASE("zero Rayleigh coefficients evaluate to zero") {
    SpectralDecomposition dec;
    dec.cell_length = 2.0 * M_PI;
    dec.n = 4;
    dec.alpha = Vec2(0.1, 0.2);
    dec.height = 0.0;
    dec.A_p.assign(16, Complex{});
    dec.A_s.assign(16, CVec3::Zero());
    CHECK(rayleigh_evaluate(kMed, dec, Vec3(0.3, 0.4, 1.0)).norm() == 0.0);
}

TEST_CASE("ASR and Rayleigh evaluation agree away from the trace plane") {
    std::mt19937_64 rng(71);
    const TraceGrid t = random_trace(kMed, 2.0 * M_PI, 16, Vec2(0.17, 0.29), 0.0, rng);
    const SpectralDecomposition dec = rayleigh_coefficients(kMed, t);
    double worst = 0.0;
    for (double dz : {0.1 / kMed.kappa_s, 1.0 / kMed.kappa_s, 5.0 / kMed.kappa_s}) {
        const TraceGrid up = propagate(kMed, t, dz, Direction::Up);
        for (int i = 0; i < 16; i += 2)
            for (int j = 0; j < 16; j += 2) {
                const Vec2 x = up.point(i, j);
                worst = std::max(worst, (rayleigh_evaluate(kMed, dec, Vec3(x[0], x[1], dz)) -
                                         up.at(i, j)).norm());
            }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("evanescent-only traces decay at the slowest modal rate") {
    // every mode beyond the shear circle; the S rate Im(gamma) governs
    std::mt19937_64 rng(81);
    const double L = 0.5 * 2.0 * M_PI / kMed.kappa_s;
    const TraceGrid t = random_trace(kMed, L, 16, Vec2(0.07, -0.13), 0.0, rng,
                                     /*evanescent_only=*/true);
    double qmin = std::numeric_limits<double>::max();
    const SpectrumGrid spec = forward_transform(t);
    for (int bi = 0; bi < 16; ++bi)
        for (int bj = 0; bj < 16; ++bj) {
            if (spec.coeff[spec.idx(bi, bj)].norm() < 1e-13) continue;
            const SpectralSymbols s = spectral_symbols(kMed, spec.mode_xi(bi, bj));
            qmin = std::min(qmin, s.gamma.imag());
        }
    REQUIRE(qmin > 0.0);
    auto l2 = [](const TraceGrid& g) {
        double acc = 0.0;
        for (const auto& v : g.values()) acc += v.squaredNorm();
        return std::sqrt(acc);
    };
    const double base = l2(t);
    for (double dz : {1.0 / kMed.kappa_s, 2.0 / kMed.kappa_s}) {
        const TraceGrid up = propagate(kMed, t, dz, Direction::Up);
        CHECK(l2(up) <= std::exp(-qmin * dz) * base * 1.5);
    }
}

TEST_CASE("Nyquist-only content is removed by propagation") {
    const int n = 8;
    const double L = 2.0 * M_PI;
    // build a trace whose only content sits on the m = -n/2 row
    SpectrumGrid spec;
    spec.cell_length = L;
    spec.n = n;
    spec.alpha = Vec2::Zero();
    spec.height = 0.0;
    spec.coeff.assign(n * n, CVec3::Zero());
    spec.coeff[spec.idx(n / 2, 1)] = CVec3(1.0, 0.5, -0.25);  // bin n/2 is mode -n/2
    const TraceGrid t = inverse_transform(spec);
    const TraceGrid up = propagate(kMed, t, 0.3, Direction::Up);
    for (const auto& v : up.values()) CHECK(v.norm() <= 1e-14);
}
