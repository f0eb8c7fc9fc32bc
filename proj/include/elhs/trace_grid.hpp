#pragma once

#include <functional>
#include <vector>

#include "elhs/types.hpp"

namespace elhs {

/// Complex 3-vector samples of a field on the horizontal plane x3 = height
/// over the periodic cell [0, L)^2, sampled at x'_ij = (i, j) L / n.
///
/// The field is quasi-biperiodic with phase shift alpha: discrete modes are
/// xi_m = alpha + 2 pi m / L with m in [-n/2, n/2)^2.  n must be a power of
/// two.
class TraceGrid {
public:
    TraceGrid(double cell_length, int n, const Vec2& alpha, double height);

    static TraceGrid from_function(double cell_length, int n, const Vec2& alpha, double height,
                                   const std::function<CVec3(const Vec2&)>& f);

    double cell_length() const { return cell_length_; }
    int n() const { return n_; }
    const Vec2& alpha() const { return alpha_; }
    double height() const { return height_; }
    void set_height(double h) { height_ = h; }

    Vec2 point(int i, int j) const;

    CVec3& at(int i, int j) { return values_[idx(i, j)]; }
    const CVec3& at(int i, int j) const { return values_[idx(i, j)]; }

    std::vector<CVec3>& values() { return values_; }
    const std::vector<CVec3>& values() const { return values_; }

    int idx(int i, int j) const { return i * n_ + j; }

private:
    double cell_length_;
    int n_;
    Vec2 alpha_;
    double height_;
    std::vector<CVec3> values_;
};

/// Spectral coefficients of a TraceGrid in FFT bin order.
///
/// Normalization: coeff_m = (L^2 / (2 pi n^2)) sum_j values_j e^{-i xi_m . x_j},
/// the Riemann-sum approximation of the (1/2pi)-convention Fourier transform
/// over one cell.  Fourier-series coefficients are (2 pi / L^2) * coeff_m.
struct SpectrumGrid {
    double cell_length = 0.0;
    int n = 0;
    Vec2 alpha = Vec2::Zero();
    double height = 0.0;
    std::vector<CVec3> coeff;

    /// signed mode integer for FFT bin k
    int mode_of_bin(int k) const { return k < n / 2 ? k : k - n; }
    /// true when bin k sits on the unpaired Nyquist row/column m = -n/2
    bool is_nyquist(int k) const { return mode_of_bin(k) == -n / 2; }

    Vec2 mode_xi(int bi, int bj) const {
        return alpha + (2.0 * M_PI / cell_length) * Vec2(mode_of_bin(bi), mode_of_bin(bj));
    }
    int idx(int bi, int bj) const { return bi * n + bj; }
};

SpectrumGrid forward_transform(const TraceGrid& trace);
TraceGrid inverse_transform(const SpectrumGrid& spec);

}  // namespace elhs
