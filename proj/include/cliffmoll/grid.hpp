// grid.hpp
// Vertex-centered regular grids over axis-aligned boxes. Nodes are flattened
// row-major with the last axis fastest.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace cliffmoll {

struct Grid {
    int n = 0;
    std::vector<int> dims;        // points per axis, each >= 2
    std::vector<double> origin;   // position of node (0,...,0)
    std::vector<double> spacing;  // positive step per axis

    size_t size() const {
        size_t s = 1;
        for (int d : dims) s *= static_cast<size_t>(d);
        return s;
    }

    double cell_volume() const {
        double v = 1.0;
        for (double h : spacing) v *= h;
        return v;
    }

    double max_spacing() const {
        double h = 0.0;
        for (double s : spacing) h = s > h ? s : h;
        return h;
    }

    /// Stride of one step along `axis` in the flat ordering (last axis fastest).
    size_t stride(int axis) const {
        size_t s = 1;
        for (int a = n - 1; a > axis; --a) s *= static_cast<size_t>(dims[a]);
        return s;
    }

    void decode(size_t flat, std::span<int> idx) const {
        for (int a = n - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(flat % static_cast<size_t>(dims[a]));
            flat /= static_cast<size_t>(dims[a]);
        }
    }

    size_t encode(std::span<const int> idx) const {
        size_t flat = 0;
        for (int a = 0; a < n; ++a) flat = flat * static_cast<size_t>(dims[a]) + static_cast<size_t>(idx[a]);
        return flat;
    }

    void node(size_t flat, std::span<double> x) const {
        for (int a = n - 1; a >= 0; --a) {
            const int i = static_cast<int>(flat % static_cast<size_t>(dims[a]));
            flat /= static_cast<size_t>(dims[a]);
            x[a] = origin[a] + i * spacing[a];
        }
    }

    std::vector<double> node(size_t flat) const {
        std::vector<double> x(static_cast<size_t>(n));
        node(flat, x);
        return x;
    }

    /// True if the node is at least `margin` cells from the grid box edge on
    /// every axis.
    bool has_margin(std::span<const int> idx, int margin) const {
        for (int a = 0; a < n; ++a)
            if (idx[a] < margin || idx[a] >= dims[a] - margin) return false;
        return true;
    }
};

/// Uniform vertex-centered grid covering [lo, hi] with `resolution` points per
/// axis; endpoints are grid nodes, so h = (hi - lo) / (resolution - 1).
inline Grid build_grid(std::span<const double> lo, std::span<const double> hi,
                       std::span<const int> resolution) {
    const int n = static_cast<int>(lo.size());
    if (n < 1 || n > 8) throw std::invalid_argument("build_grid: dimension must be in [1, 8]");
    if (hi.size() != lo.size() || resolution.size() != lo.size())
        throw std::invalid_argument("build_grid: inconsistent argument sizes");
    Grid g;
    g.n = n;
    g.dims.resize(static_cast<size_t>(n));
    g.origin.assign(lo.begin(), lo.end());
    g.spacing.resize(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) {
        if (!(hi[a] > lo[a])) throw std::invalid_argument("build_grid: degenerate box");
        if (resolution[a] < 2) throw std::invalid_argument("build_grid: resolution must be >= 2 per axis");
        g.dims[a] = resolution[a];
        g.spacing[a] = (hi[a] - lo[a]) / (resolution[a] - 1);
    }
    return g;
}

inline Grid build_grid(const std::vector<double>& lo, const std::vector<double>& hi, int resolution) {
    std::vector<int> res(lo.size(), resolution);
    return build_grid(std::span<const double>(lo), std::span<const double>(hi), std::span<const int>(res));
}

}  // namespace cliffmoll
