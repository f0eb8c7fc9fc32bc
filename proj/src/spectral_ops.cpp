#include "elhs/spectral_ops.hpp"

namespace elhs {

namespace {

SpectralDecomposition decompose_impl(const ElasticMedium& med, const TraceGrid& trace,
                                     bool closed_form) {
    const SpectrumGrid spec = forward_transform(trace);
    const int n = spec.n;
    SpectralDecomposition dec;
    dec.cell_length = spec.cell_length;
    dec.n = n;
    dec.alpha = spec.alpha;
    dec.height = spec.height;
    dec.A_p.assign(static_cast<size_t>(n) * n, Complex{});
    dec.A_s.assign(static_cast<size_t>(n) * n, CVec3::Zero());

    const double series_scale = 2.0 * M_PI / (spec.cell_length * spec.cell_length);
    for (int bi = 0; bi < n; ++bi) {
        for (int bj = 0; bj < n; ++bj) {
            if (spec.is_nyquist(bi) || spec.is_nyquist(bj)) continue;
            const int k = spec.idx(bi, bj);
            const CVec3 um = series_scale * spec.coeff[k];
            const Vec2 xi = spec.mode_xi(bi, bj);
            const SpectralSymbols s = spectral_symbols(med, xi);
            if (closed_form) {
                const CVec3 kS(xi[0], xi[1], s.gamma);
                const Complex ap = bdot(kS, um) / s.denom;
                dec.A_p[k] = ap;
                dec.A_s[k] = um - ap * CVec3(xi[0], xi[1], s.beta);
            } else {
                const KernelMatrices km = kernel_matrices(med, xi);
                const CVec4 A = km.D * um;
                dec.A_p[k] = A[0];
                dec.A_s[k] = A.tail<3>();
            }
        }
    }
    return dec;
}

TraceGrid apply_mode_kernel(const TraceGrid& trace,
                            const std::function<CMat3(const Vec2&)>& kernel,
                            double new_height) {
    SpectrumGrid spec = forward_transform(trace);
    const int n = spec.n;
    for (int bi = 0; bi < n; ++bi) {
        for (int bj = 0; bj < n; ++bj) {
            const int k = spec.idx(bi, bj);
            if (spec.is_nyquist(bi) || spec.is_nyquist(bj)) {
                spec.coeff[k] = CVec3::Zero();
                continue;
            }
            spec.coeff[k] = kernel(spec.mode_xi(bi, bj)) * spec.coeff[k];
        }
    }
    spec.height = new_height;
    return inverse_transform(spec);
}

}  // namespace

TraceGrid apply_symbol(const TraceGrid& trace,
                       const std::function<CMat3(const Vec2&)>& symbol) {
    return apply_mode_kernel(trace, symbol, trace.height());
}

CMat3 vertical_derivative_symbol(const ElasticMedium& med, const Vec2& xi) {
    const SpectralSymbols s = spectral_symbols(med, xi);
    const CVec3 kP(xi[0], xi[1], s.beta), kS(xi[0], xi[1], s.gamma);
    const CMat3 Mp = kP * kS.transpose();
    const CMat3 Ms = s.denom * CMat3::Identity() - Mp;
    return iu * (s.beta * Mp + s.gamma * Ms) / s.denom;
}

SpectralDecomposition decompose_trace(const ElasticMedium& med, const TraceGrid& trace) {
    return decompose_impl(med, trace, /*closed_form=*/false);
}

SpectralDecomposition rayleigh_coefficients(const ElasticMedium& med, const TraceGrid& trace) {
    return decompose_impl(med, trace, /*closed_form=*/true);
}

TraceGrid propagate(const ElasticMedium& med, const TraceGrid& trace, double dz, Direction dir,
                    std::string* warning) {
    if (dz < 0.0) throw std::invalid_argument("propagate: dz must be >= 0");
    if (dz == 0.0) {
        if (warning) *warning = "propagate: dz = 0 is the identity";
        return trace;
    }
    const double new_height =
        dir == Direction::Up ? trace.height() + dz : trace.height() - dz;
    return apply_mode_kernel(
        trace, [&](const Vec2& xi) { return asr_kernel(med, xi, dz, dir); }, new_height);
}

TraceGrid apply_dtn(const ElasticMedium& med, const TraceGrid& trace, Direction dir) {
    auto kernel = [&](const Vec2& xi) -> CMat3 {
        return iu * (dir == Direction::Up ? dtn_symbol(med, xi) : dtn_symbol_down(med, xi));
    };
    return apply_mode_kernel(trace, kernel, trace.height());
}

CVec3 rayleigh_evaluate(const ElasticMedium& med, const SpectralDecomposition& dec, const Vec3& x) {
    CVec3 u = CVec3::Zero();
    const double dz = x[2] - dec.height;
    for (int bi = 0; bi < dec.n; ++bi) {
        for (int bj = 0; bj < dec.n; ++bj) {
            const int k = dec.idx(bi, bj);
            const Complex ap = dec.A_p[k];
            const CVec3& as = dec.A_s[k];
            if (ap == 0.0 && as.isZero()) continue;
            const Vec2 xi = dec.mode_xi(bi, bj);
            const SpectralSymbols s = spectral_symbols(med, xi);
            const Complex horiz = xi[0] * x[0] + xi[1] * x[1];
            u += ap * CVec3(xi[0], xi[1], s.beta) * std::exp(iu * (horiz + s.beta * dz));
            u += as * std::exp(iu * (horiz + s.gamma * dz));
        }
    }
    return u;
}

}  // namespace elhs
