// quadrature.hpp
// Composite Gauss-Legendre quadrature with interval doubling.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cliffmoll {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights by Newton iteration on the Legendre
/// polynomial; deterministic to machine precision.
inline GaussRule gauss_legendre(int pts) {
    GaussRule r;
    r.nodes.resize(static_cast<size_t>(pts));
    r.weights.resize(static_cast<size_t>(pts));
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < pts; ++i) {
        double x = std::cos(pi * (i + 0.75) / (pts + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= pts; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = pts * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[static_cast<size_t>(i)] = x;
        r.weights[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

/// Integrate f over [a, b] with composite Gauss-Legendre, doubling the
/// interval count until successive values agree to rel_tol.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12, int pts = 32, int max_intervals = 1 << 14) {
    static const GaussRule rule = gauss_legendre(32);
    const GaussRule local = (pts == 32) ? rule : gauss_legendre(pts);
    double prev = 0.0;
    bool have_prev = false;
    for (int iv = 1; iv <= max_intervals; iv *= 2) {
        double total = 0.0;
        const double step = (b - a) / iv;
        for (int i = 0; i < iv; ++i) {
            const double mid = a + (i + 0.5) * step;
            const double half = 0.5 * step;
            double s = 0.0;
            for (size_t k = 0; k < local.nodes.size(); ++k)
                s += local.weights[k] * f(mid + half * local.nodes[k]);
            total += half * s;
        }
        if (have_prev && std::abs(total - prev) <= rel_tol * std::abs(total)) return total;
        prev = total;
        have_prev = true;
    }
    return prev;
}

}  // namespace cliffmoll
