#include "elhs/trace_grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace elhs {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::mutex g_fftw_mutex;  // FFTW plan creation/destruction is not thread-safe

/// In-place 2D FFT of one interleaved component buffer (n x n row-major).
void fft2(std::vector<Complex>& buf, int n, int sign) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        plan = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(buf.data()),
                                reinterpret_cast<fftw_complex*>(buf.data()), sign,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(plan);
    }
}

}  // namespace

TraceGrid::TraceGrid(double cell_length, int n, const Vec2& alpha, double height)
    : cell_length_(cell_length), n_(n), alpha_(alpha), height_(height),
      values_(static_cast<size_t>(n) * n, CVec3::Zero()) {
    if (cell_length <= 0.0) throw std::invalid_argument("TraceGrid: cell_length must be > 0");
    if (!power_of_two(n) || n < 2)
        throw std::invalid_argument("TraceGrid: n must be a power of two >= 2");
}

TraceGrid TraceGrid::from_function(double cell_length, int n, const Vec2& alpha, double height,
                                   const std::function<CVec3(const Vec2&)>& f) {
    TraceGrid t(cell_length, n, alpha, height);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.at(i, j) = f(t.point(i, j));
    return t;
}

Vec2 TraceGrid::point(int i, int j) const {
    return Vec2(i * cell_length_ / n_, j * cell_length_ / n_);
}

SpectrumGrid forward_transform(const TraceGrid& trace) {
    const int n = trace.n();
    const double L = trace.cell_length();
    SpectrumGrid s;
    s.cell_length = L;
    s.n = n;
    s.alpha = trace.alpha();
    s.height = trace.height();
    s.coeff.assign(static_cast<size_t>(n) * n, CVec3::Zero());

    std::vector<Complex> buf(static_cast<size_t>(n) * n);
    const double scale = L * L / (2.0 * M_PI * n * n);
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                // strip the quasi-periodic phase so the DFT sees periodic data
                const Vec2 x = trace.point(i, j);
                const Complex ph = std::exp(-iu * (s.alpha[0] * x[0] + s.alpha[1] * x[1]));
                buf[trace.idx(i, j)] = trace.at(i, j)[c] * ph;
            }
        }
        fft2(buf, n, FFTW_FORWARD);
        for (int k = 0; k < n * n; ++k) s.coeff[k][c] = scale * buf[k];
    }
    return s;
}

TraceGrid inverse_transform(const SpectrumGrid& spec) {
    const int n = spec.n;
    const double L = spec.cell_length;
    TraceGrid t(L, n, spec.alpha, spec.height);

    std::vector<Complex> buf(static_cast<size_t>(n) * n);
    const double scale = 2.0 * M_PI / (L * L);
    for (int c = 0; c < 3; ++c) {
        for (int k = 0; k < n * n; ++k) buf[k] = spec.coeff[k][c];
        fft2(buf, n, FFTW_BACKWARD);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const Vec2 x = t.point(i, j);
                const Complex ph = std::exp(iu * (spec.alpha[0] * x[0] + spec.alpha[1] * x[1]));
                t.at(i, j)[c] = scale * buf[t.idx(i, j)] * ph;
            }
        }
    }
    return t;
}

}  // namespace elhs
