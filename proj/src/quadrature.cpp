#include "elhs/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace elhs {

namespace {

GaussLegendre compute_gauss_legendre(int n) {
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess, Newton on P_n
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        gl.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[n - 1 - i] = gl.weights[i];
    }
    return gl;
}

std::map<int, GaussLegendre> g_gl_cache;
std::mutex g_gl_mutex;

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
    std::lock_guard<std::mutex> lock(g_gl_mutex);
    auto it = g_gl_cache.find(n);
    if (it == g_gl_cache.end()) it = g_gl_cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

CMat3 gl_panel_mat3(const std::function<CMat3(double)>& f, double a, double b, int n) {
    const GaussLegendre& gl = gauss_legendre(n);
    CMat3 acc = CMat3::Zero();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) acc += gl.weights[i] * f(c + h * gl.nodes[i]);
    return h * acc;
}

CVec3 gl_panel_vec3(const std::function<CVec3(double)>& f, double a, double b, int n) {
    const GaussLegendre& gl = gauss_legendre(n);
    CVec3 acc = CVec3::Zero();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) acc += gl.weights[i] * f(c + h * gl.nodes[i]);
    return h * acc;
}

namespace {

void adapt_recurse(const std::function<CMat3(double)>& f, double a, double b, double tol,
                   int depth, int max_depth, int points, AdaptiveResult& out) {
    const CMat3 whole = gl_panel_mat3(f, a, b, points);
    const double mid = 0.5 * (a + b);
    const CMat3 halves = gl_panel_mat3(f, a, mid, points) + gl_panel_mat3(f, mid, b, points);
    out.evaluations += 3 * points;
    const double err = (whole - halves).norm();
    if (err <= tol || depth >= max_depth) {
        out.value += halves;
        out.error += err;
        if (err > tol) out.converged = false;
        return;
    }
    adapt_recurse(f, a, mid, 0.5 * tol, depth + 1, max_depth, points, out);
    adapt_recurse(f, mid, b, 0.5 * tol, depth + 1, max_depth, points, out);
}

}  // namespace

AdaptiveResult integrate_adaptive_mat3(const std::function<CMat3(double)>& f, double a, double b,
                                       double tol, int max_depth, int points) {
    AdaptiveResult out;
    if (a == b) return out;
    adapt_recurse(f, a, b, tol, 0, max_depth, points, out);
    return out;
}

CVec3 disk_integral_adaptive(const std::function<CVec3(const Vec2&)>& f, double radius,
                             double tol, int initial_radial, int initial_angular,
                             int max_doublings, double sqrt_break) {
    if (radius <= 0.0) return CVec3::Zero();

    struct Map {
        std::function<double(double)> rho, drho;
        double t0, t1;
    };
    std::vector<Map> segments;
    if (sqrt_break > 0.0 && radius <= sqrt_break) {
        const double k = sqrt_break;
        segments.push_back({[k](double t) { return k * std::sin(t); },
                            [k](double t) { return k * std::cos(t); }, 0.0,
                            std::asin(radius / k)});
    } else if (sqrt_break > 0.0) {
        const double k = sqrt_break;
        segments.push_back({[k](double t) { return k * std::sin(t); },
                            [k](double t) { return k * std::cos(t); }, 0.0, 0.5 * M_PI});
        segments.push_back({[k](double t) { return k * std::cosh(t); },
                            [k](double t) { return k * std::sinh(t); }, 0.0,
                            std::acosh(radius / k)});
    } else {
        segments.push_back({[](double t) { return t; }, [](double) { return 1.0; }, 0.0, radius});
    }

    auto evaluate = [&](int nr, int na) {
        auto ring = [&](double rho) {
            CVec3 acc = CVec3::Zero();
            for (int j = 0; j < na; ++j) {
                const double th = 2.0 * M_PI * j / na;
                acc += f(Vec2(rho * std::cos(th), rho * std::sin(th)));
            }
            return CVec3(acc * (2.0 * M_PI / na) * rho);
        };
        CVec3 total = CVec3::Zero();
        for (const auto& seg : segments)
            total += gl_panel_vec3(
                [&](double t) { return CVec3(ring(seg.rho(t)) * seg.drho(t)); }, seg.t0, seg.t1,
                nr);
        return total;
    };

    int nr = initial_radial, na = initial_angular;
    CVec3 prev = evaluate(nr, na);
    for (int k = 0; k < max_doublings; ++k) {
        nr *= 2;
        na *= 2;
        const CVec3 cur = evaluate(nr, na);
        const double gap = (cur - prev).norm();
        if (gap < tol * std::max(1.0, cur.norm())) return cur;
        prev = cur;
    }
    std::ostringstream msg;
    msg << "disk_integral_adaptive: tolerance " << tol << " not met after "
        << max_doublings << " doublings (achieved ~" << (prev.norm()) << " scale)";
    throw std::runtime_error(msg.str());
}

}  // namespace elhs
