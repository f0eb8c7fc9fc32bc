#pragma once

#include "elhs/medium.hpp"
#include "elhs/types.hpp"

namespace elhs {

enum class Direction { Up, Down };

/// The per-xi spectral matrices of the half-space machinery.
///
/// Conventions (kP = (xi1, xi2, beta), kS = (xi1, xi2, gamma)):
///   Dtilde   4x4  mode-matching system [u_hat; 0] = Dtilde * [A_p; A_s]
///   D        4x3  amplitude recovery A = D * u_hat (first 3 cols of inv(Dtilde))
///   M_p      3x3  kP (x) kS outer product; M_s = (beta*gamma+|xi|^2) I - M_p
///   M_p_down, M_s_down   downward analogs with kP -> (xi,-beta), kS -> (xi,-gamma)
///   G        3x4  traction of the upward modes: F[T u] = i G A
///   M        3x3  upward DtN symbol: F[T u] = i M u_hat, M = G D
///   M_minus  3x3  downward DtN symbol: M with beta,gamma -> -beta,-gamma
///   V        3x3  e3-coupling matrix [[0,0,xi1],[0,0,xi2],[xi1,xi2,0]]
///   Mtilde_p = M_p V, Mtilde_s = M_s V  (half-space correction kernels)
///   T_p, T_s 3x3  traction of a single exponential mode e^{i(xi.x' + k3 x3)}
///                  with k3 = beta resp. gamma
struct KernelMatrices {
    SpectralSymbols sym;
    CMat4 Dtilde;
    CMat43 D;
    CMat3 M_p, M_s;
    CMat3 M_p_down, M_s_down;
    CMat34 G;
    CMat3 M, M_minus;
    CMat3 V;
    CMat3 Mtilde_p, Mtilde_s;
    CMat3 T_p, T_s;
};

KernelMatrices kernel_matrices(const ElasticMedium& med, const Vec2& xi);

/// Upward DtN symbol M(xi) alone (explicit entries, not assembled from G*D).
CMat3 dtn_symbol(const ElasticMedium& med, const Vec2& xi);

/// Downward DtN symbol M^-(xi) = M(xi) with beta,gamma replaced by -beta,-gamma.
CMat3 dtn_symbol_down(const ElasticMedium& med, const Vec2& xi);

/// Angular-spectrum propagation kernel over a height increment dz >= 0:
///   Up:   [M_p e^{i beta dz} + M_s e^{i gamma dz}] / (beta gamma + |xi|^2)
///   Down: the M_p_down / M_s_down analog (same exponentials; dz measures
///         distance travelled, evanescent modes always decay).
CMat3 asr_kernel(const ElasticMedium& med, const Vec2& xi, double dz, Direction dir);

/// Traction matrix of a single exponential mode with vertical wavenumber k3:
/// T[c e^{i(xi.x' + k3 x3)}] = (matrix) * c at x3 = 0.
CMat3 traction_symbol(const ElasticMedium& med, const Vec2& xi, Complex k3);

}  // namespace elhs
