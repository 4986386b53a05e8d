// domain.hpp
// Bounded domains described by exact signed distance: balls and boxes.
// sdf < 0 inside, 0 on the boundary, 1-Lipschitz.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cliffmoll/grid.hpp"

namespace cliffmoll {

struct Domain {
    enum class Kind { Ball, Box };

    Kind kind = Kind::Ball;
    std::vector<double> center;  // ball center
    double radius = 0.0;         // ball radius
    std::vector<double> lo, hi;  // box corners

    static Domain ball(std::vector<double> c, double r) {
        if (!(r > 0.0)) throw std::invalid_argument("Domain::ball: radius must be positive");
        Domain d;
        d.kind = Kind::Ball;
        d.center = std::move(c);
        d.radius = r;
        return d;
    }

    static Domain box(std::vector<double> lo_, std::vector<double> hi_) {
        if (lo_.size() != hi_.size()) throw std::invalid_argument("Domain::box: corner size mismatch");
        for (size_t a = 0; a < lo_.size(); ++a)
            if (!(hi_[a] > lo_[a])) throw std::invalid_argument("Domain::box: degenerate box");
        Domain d;
        d.kind = Kind::Box;
        d.lo = std::move(lo_);
        d.hi = std::move(hi_);
        return d;
    }

    int dim() const {
        return kind == Kind::Ball ? static_cast<int>(center.size()) : static_cast<int>(lo.size());
    }

    double sdf(std::span<const double> x) const {
        if (kind == Kind::Ball) {
            double s = 0.0;
            for (size_t a = 0; a < center.size(); ++a) {
                const double d = x[a] - center[a];
                s += d * d;
            }
            return std::sqrt(s) - radius;
        }
        // exact box distance
        double out = 0.0;
        double in = -1e300;
        for (size_t a = 0; a < lo.size(); ++a) {
            const double c = 0.5 * (lo[a] + hi[a]);
            const double half = 0.5 * (hi[a] - lo[a]);
            const double q = std::abs(x[a] - c) - half;
            if (q > 0.0) out += q * q;
            in = std::max(in, q);
        }
        return out > 0.0 ? std::sqrt(out) : in;
    }

    bool inside(std::span<const double> x) const { return sdf(x) < 0.0; }

    /// Bounding box of the domain.
    void bounds(std::vector<double>& blo, std::vector<double>& bhi) const {
        const int n = dim();
        blo.resize(static_cast<size_t>(n));
        bhi.resize(static_cast<size_t>(n));
        for (int a = 0; a < n; ++a) {
            if (kind == Kind::Ball) {
                blo[a] = center[a] - radius;
                bhi[a] = center[a] + radius;
            } else {
                blo[a] = lo[a];
                bhi[a] = hi[a];
            }
        }
    }

    /// Analytic measure of the boundary (circumference, sphere area, box
    /// perimeter/face area); supported for n <= 3.
    double surface_measure() const;

    /// Analytic volume.
    double volume() const;

    /// Largest inscribed-ball radius (= max depth).
    double inradius() const {
        if (kind == Kind::Ball) return radius;
        double r = 1e300;
        for (size_t a = 0; a < lo.size(); ++a) r = std::min(r, 0.5 * (hi[a] - lo[a]));
        return r;
    }
};

/// Omega_eps = { x : dist(x, boundary) > eps }, realized as sdf < -eps.
/// Membership at exactly sdf = -eps resolves to outside.
struct ShrunkDomain {
    Domain parent;
    double eps = 0.0;

    bool inside(std::span<const double> x) const { return parent.sdf(x) < -eps; }
};

inline ShrunkDomain shrink_domain(const Domain& d, double eps) {
    if (!(eps >= 0.0)) throw std::invalid_argument("shrink_domain: eps must be nonnegative");
    return ShrunkDomain{d, eps};
}

/// Per-node inside flags for Omega_eps on a grid (1 = inside).
inline std::vector<uint8_t> inside_mask(const Grid& g, const Domain& d, double eps = 0.0) {
    std::vector<uint8_t> m(g.size(), 0);
    std::vector<double> x(static_cast<size_t>(g.n));
    for (size_t i = 0; i < g.size(); ++i) {
        g.node(i, x);
        m[i] = d.sdf(x) < -eps ? 1 : 0;
    }
    return m;
}

inline size_t count_mask(const std::vector<uint8_t>& m) {
    size_t c = 0;
    for (uint8_t v : m) c += v;
    return c;
}

inline double Domain::surface_measure() const {
    const int n = dim();
    const double pi = 3.14159265358979323846;
    if (kind == Kind::Ball) {
        if (n == 1) return 2.0;  // counting measure of two endpoints
        if (n == 2) return 2.0 * pi * radius;
        if (n == 3) return 4.0 * pi * radius * radius;
        throw std::invalid_argument("surface_measure: ball supported for n <= 3");
    }
    if (n == 1) return 2.0;
    if (n == 2) return 2.0 * ((hi[0] - lo[0]) + (hi[1] - lo[1]));
    if (n == 3) {
        const double a = hi[0] - lo[0], b = hi[1] - lo[1], c = hi[2] - lo[2];
        return 2.0 * (a * b + b * c + a * c);
    }
    throw std::invalid_argument("surface_measure: box supported for n <= 3");
}

inline double Domain::volume() const {
    const int n = dim();
    const double pi = 3.14159265358979323846;
    if (kind == Kind::Ball) {
        // pi^{n/2} / Gamma(n/2 + 1) * r^n
        double v = std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
        return v * std::pow(radius, n);
    }
    double v = 1.0;
    for (int a = 0; a < n; ++a) v *= hi[a] - lo[a];
    return v;
}

}  // namespace cliffmoll
