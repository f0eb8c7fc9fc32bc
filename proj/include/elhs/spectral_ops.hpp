#pragma once

#include <string>

#include "elhs/kernels.hpp"
#include "elhs/medium.hpp"
#include "elhs/trace_grid.hpp"

namespace elhs {

/// Per-mode P/S amplitudes of a trace, in Fourier-series scaling: for the
/// single mode u(x') = u_m e^{i xi_m . x'}, A = D(xi_m) u_m.  The S
/// amplitude satisfies (xi, gamma) . A_s = 0 (bilinear).  Nyquist
/// row/column modes are dropped.
struct SpectralDecomposition {
    double cell_length = 0.0;
    int n = 0;
    Vec2 alpha = Vec2::Zero();
    double height = 0.0;
    std::vector<Complex> A_p;  // FFT bin order
    std::vector<CVec3> A_s;

    int mode_of_bin(int k) const { return k < n / 2 ? k : k - n; }
    Vec2 mode_xi(int bi, int bj) const {
        return alpha + (2.0 * M_PI / cell_length) * Vec2(mode_of_bin(bi), mode_of_bin(bj));
    }
    int idx(int bi, int bj) const { return bi * n + bj; }
};

/// Amplitude recovery through the 4x3 matrix D (inverse of the 4x4
/// mode-matching system).
SpectralDecomposition decompose_trace(const ElasticMedium& med, const TraceGrid& trace);

/// Rayleigh-coefficient route: A_p = ((xi, gamma) . u_m) / (beta gamma + |xi|^2),
/// A_s = u_m - A_p (xi, beta).  Algebraically equal to decompose_trace.
SpectralDecomposition rayleigh_coefficients(const ElasticMedium& med, const TraceGrid& trace);

/// Angular-spectrum propagation of the trace by dz >= 0 (up raises the
/// height, down lowers it).  dz == 0 returns the input unchanged and, when
/// warning is non-null, records a note.  Nyquist modes are zeroed.
TraceGrid propagate(const ElasticMedium& med, const TraceGrid& trace, double dz, Direction dir,
                    std::string* warning = nullptr);

/// Traction trace of the radiating extension: mode-wise i M(xi) (up) or
/// i M^-(xi) (down).
TraceGrid apply_dtn(const ElasticMedium& med, const TraceGrid& trace, Direction dir);

/// Mode-wise application of an arbitrary 3x3 matrix symbol (Nyquist modes
/// zeroed); the building block behind propagate and apply_dtn.
TraceGrid apply_symbol(const TraceGrid& trace,
                       const std::function<CMat3(const Vec2&)>& symbol);

/// Symbol of d/dx3 on the trace of the upward radiating extension:
/// i (beta M_p + gamma M_s) / (beta gamma + |xi|^2).
CMat3 vertical_derivative_symbol(const ElasticMedium& med, const Vec2& xi);

/// Direct Rayleigh-sum evaluation at x with x3 >= height (up-modes).
CVec3 rayleigh_evaluate(const ElasticMedium& med, const SpectralDecomposition& dec, const Vec3& x);

}  // namespace elhs
