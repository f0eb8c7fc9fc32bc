#include <doctest.h>

#include <random>

#include "elhs/medium.hpp"

using namespace elhs;

TEST_CASE("make_medium derives the wavenumbers") {
    const ElasticMedium m = make_medium(2.0, 1.0, 2.0);
    CHECK(m.kappa_p == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.kappa_s == doctest::Approx(2.0).epsilon(1e-15));

    const ElasticMedium m2 = make_medium(0.0, 1.0, 1.0);
    CHECK(m2.kappa_p == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(m2.kappa_s == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m2.kappa_p < m2.kappa_s);
}

TEST_CASE("make_medium rejects invalid parameters") {
    CHECK_THROWS_AS(make_medium(-1.0, 1.0, 1.0), std::domain_error);  // lambda+2mu/3 = -1/3
    CHECK_THROWS_AS(make_medium(2.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_medium(2.0, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_medium(2.0, 1.0, 0.0), std::domain_error);
    CHECK_NOTHROW(make_medium(-0.5, 1.0, 1.0));  // -0.5 + 2/3 > 0 is legal
}

TEST_CASE("spectral symbols at reference wavevectors") {
    const ElasticMedium m = make_medium(2.0, 1.0, 2.0);  // kappa_p = 1, kappa_s = 2

    SpectralSymbols s = spectral_symbols(m, Vec2(0.0, 0.0));
    CHECK(s.beta == Complex(1.0, 0.0));
    CHECK(s.gamma == Complex(2.0, 0.0));
    CHECK(s.denom == Complex(2.0, 0.0));

    s = spectral_symbols(m, Vec2(1.0, 0.0));  // on the compressional circle
    CHECK(s.beta == Complex(0.0, 0.0));
    CHECK(std::abs(s.gamma - std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(s.denom - 1.0) < 1e-15);

    s = spectral_symbols(m, Vec2(3.0, 0.0));  // fully evanescent
    CHECK(s.beta.real() == 0.0);
    CHECK(s.beta.imag() == doctest::Approx(std::sqrt(8.0)).epsilon(1e-15));
    CHECK(s.gamma.real() == 0.0);
    CHECK(s.gamma.imag() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    // denom = 9 - sqrt(40), frozen from exact arithmetic
    CHECK(s.denom.imag() == 0.0);
    CHECK(s.denom.real() == doctest::Approx(2.675444679663241).epsilon(1e-15));
}

TEST_CASE("dispersion identities hold on random wavevectors") {
    const ElasticMedium m = make_medium(1.7, 0.9, 2.3);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(-3.0 * m.kappa_s, 3.0 * m.kappa_s);
    for (int i = 0; i < 500; ++i) {
        const Vec2 xi(U(rng), U(rng));
        const SpectralSymbols s = spectral_symbols(m, xi);
        const Complex bb = s.beta * s.beta + xi.squaredNorm();
        const Complex gg = s.gamma * s.gamma + xi.squaredNorm();
        // relative to the natural scale max(kappa^2, |xi|^2)
        const double scale_p = std::max(m.kappa_p * m.kappa_p, xi.squaredNorm());
        const double scale_s = std::max(m.kappa_s * m.kappa_s, xi.squaredNorm());
        CHECK(std::abs(bb - m.kappa_p * m.kappa_p) <= 1e-14 * scale_p);
        CHECK(std::abs(gg - m.kappa_s * m.kappa_s) <= 1e-14 * scale_s);
        // purely real or purely imaginary, never mixed
        CHECK(s.beta.real() * s.beta.imag() == 0.0);
        CHECK(s.gamma.real() * s.gamma.imag() == 0.0);
        CHECK(s.beta.real() >= 0.0);
        CHECK(s.beta.imag() >= 0.0);
    }
}

TEST_CASE("denominator stays real and positive beyond the shear circle") {
    const ElasticMedium m = make_medium(2.0, 1.0, 2.0);
    for (int i = 0; i <= 2000; ++i) {
        const double r = m.kappa_s * (1.0 + 9.0 * i / 2000.0);  // up to 10 kappa_s
        const SpectralSymbols s = spectral_symbols(m, Vec2(r, 0.0));
        CHECK(s.denom.imag() == 0.0);
        CHECK(s.denom.real() > 0.0);
    }
}

TEST_CASE("no Dirichlet surface-wave pole anywhere on the real axis") {
    const ElasticMedium m = make_medium(0.8, 1.3, 1.7);
    for (int i = 0; i <= 4000; ++i) {
        const double r = 10.0 * m.kappa_s * i / 4000.0;
        const SpectralSymbols s = spectral_symbols(m, Vec2(r / std::sqrt(2.0), r / std::sqrt(2.0)));
        CHECK(std::abs(s.denom) > 0.0);
    }
}

TEST_CASE("evanescent rates increase monotonically with |xi|") {
    const ElasticMedium m = make_medium(2.0, 1.0, 2.0);
    double prev_b = 0.0, prev_g = 0.0;
    for (int i = 1; i <= 200; ++i) {
        const double r = m.kappa_s * (1.0 + 4.0 * i / 200.0);
        const SpectralSymbols s = spectral_symbols(m, Vec2(0.0, r));
        CHECK(s.beta.imag() > prev_b);
        CHECK(s.gamma.imag() > prev_g);
        prev_b = s.beta.imag();
        prev_g = s.gamma.imag();
    }
}
