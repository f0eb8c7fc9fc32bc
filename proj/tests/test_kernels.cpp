#include <doctest.h>

#include <random>

#include "elhs/kernels.hpp"

using namespace elhs;

namespace {

Vec2 random_xi(std::mt19937_64& rng, double rmax) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double r = rmax * U(rng);
    const double th = 2.0 * M_PI * U(rng);
    return Vec2(r * std::cos(th), r * std::sin(th));
}

}  // namespace

TEST_CASE("DtN symbol at normal incidence is diagonal") {
    // kappa_p = 1, kappa_s = 2, mu = 1, omega = 2
    const ElasticMedium m = make_medium(2.0, 1.0, 2.0);
    const CMat3 M = dtn_symbol(m, Vec2(0.0, 0.0));
    CMat3 expected;
    expected << 2.0, 0.0, 0.0,
                0.0, 2.0, 0.0,
                0.0, 0.0, 4.0;  // diag(mu kappa_s, mu kappa_s, omega^2/kappa_p)
    CHECK((M - expected).norm() < 1e-14);
}

TEST_CASE("kernel matrix identities over random wavevectors") {
    for (const auto& m : {make_medium(2.0, 1.0, 2.0), make_medium(2.3, 1.1, 1.9)}) {
        std::mt19937_64 rng(7);
        CMat43 I30 = CMat43::Zero();
        I30.block<3, 3>(0, 0) = CMat3::Identity();
        for (int it = 0; it < 500; ++it) {
            const Vec2 xi = random_xi(rng, 3.0 * m.kappa_s);
            const KernelMatrices k = kernel_matrices(m, xi);

            // M_p + M_s = (beta gamma + |xi|^2) I
            CHECK((k.M_p + k.M_s - k.sym.denom * CMat3::Identity()).norm() <=
                  1e-14 * std::max(1.0, k.M_p.norm()));
            // G D = M
            CHECK((k.G * k.D - k.M).norm() <= 1e-13 * std::max(1.0, k.M.norm()));
            // Dtilde D = [I; 0]
            CHECK((k.Dtilde * k.D - I30).norm() <= 1e-13 * std::max(1.0, k.D.norm()));
            // Mtilde_p + Mtilde_s = denom V
            CHECK((k.Mtilde_p + k.Mtilde_s - k.sym.denom * k.V).norm() <=
                  1e-13 * std::max(1.0, (k.sym.denom * k.V).norm()));
        }
    }
}

TEST_CASE("downward DtN is the upward symbol with negated vertical wavenumbers") {
    const ElasticMedium m = make_medium(2.3, 1.1, 1.9);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        const Vec2 xi = random_xi(rng, 2.5 * m.kappa_s);
        const CMat3 Mm = dtn_symbol_down(m, xi);
        const CMat3 M = dtn_symbol(m, xi);
        // entries even in (beta,gamma) are shared, the rest flip sign
        CHECK(Mm(0, 2) == M(0, 2));
        CHECK(Mm(2, 0) == M(2, 0));
        CHECK(std::abs(Mm(2, 2) + M(2, 2)) <= 1e-14 * std::abs(M(2, 2)));
        // off-diagonal shear block flips
        CHECK(std::abs(Mm(0, 1) + M(0, 1)) <= 1e-14 * std::max(1.0, std::abs(M(0, 1))));
    }
}

TEST_CASE("propagation kernel is the identity at dz = 0 and contracts evanescent modes") {
    const ElasticMedium m = make_medium(2.0, 1.0, 2.0);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        const Vec2 xi = random_xi(rng, 2.5 * m.kappa_s);
        CHECK((asr_kernel(m, xi, 0.0, Direction::Up) - CMat3::Identity()).norm() < 1e-13);
        CHECK((asr_kernel(m, xi, 0.0, Direction::Down) - CMat3::Identity()).norm() < 1e-13);
    }
    // far evanescent mode: both exponentials decay like e^{-Im(gamma) dz} or faster
    const Vec2 far(3.0 * m.kappa_s, 0.0);
    const SpectralSymbols s = spectral_symbols(m, far);
    const double dz = 2.0;
    const double bound = std::exp(-s.gamma.imag() * dz);
    CHECK(asr_kernel(m, far, dz, Direction::Up).norm() <
          10.0 * bound * asr_kernel(m, far, 0.0, Direction::Up).norm());
}

TEST_CASE("traction symbol reproduces hand-computed single-mode tractions") {
    const ElasticMedium m = make_medium(2.0, 1.0, 2.0);
    // vertical P mode: c = e3, k3 = kappa_p -> (0,0, i (lambda + 2mu) kappa_p)
    {
        const CMat3 T = traction_symbol(m, Vec2(0.0, 0.0), Complex(m.kappa_p, 0.0));
        const CVec3 t = T * CVec3(0.0, 0.0, 1.0);
        CHECK(std::abs(t[0]) < 1e-15);
        CHECK(std::abs(t[1]) < 1e-15);
        CHECK(std::abs(t[2] - Complex(0.0, 4.0)) < 1e-14);
    }
    // horizontal S mode: c = e1, k3 = kappa_s -> (i mu kappa_s, 0, 0)
    {
        const CMat3 T = traction_symbol(m, Vec2(0.0, 0.0), Complex(m.kappa_s, 0.0));
        const CVec3 t = T * CVec3(1.0, 0.0, 0.0);
        CHECK(std::abs(t[0] - Complex(0.0, m.mu * m.kappa_s)) < 1e-14);
        CHECK(std::abs(t[1]) < 1e-15);
        CHECK(std::abs(t[2]) < 1e-15);
    }
}
