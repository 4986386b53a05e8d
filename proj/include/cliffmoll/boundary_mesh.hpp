// boundary_mesh.hpp
// Quadrature meshes for domain boundaries: element centroids, outward unit
// normals and area weights. Sum of weights equals the analytic surface
// measure exactly for circles, spheres and boxes.

#pragma once

#include <vector>

#include "cliffmoll/domain.hpp"

namespace cliffmoll {

struct BoundaryMesh {
    int n = 0;
    Domain domain;                  // surface this mesh discretizes
    std::vector<double> centroids;  // m x n, row per element
    std::vector<double> normals;    // m x n, unit outward
    std::vector<double> weights;    // m

    size_t element_count() const { return weights.size(); }

    std::span<const double> centroid(size_t e) const {
        return {centroids.data() + e * static_cast<size_t>(n), static_cast<size_t>(n)};
    }
    std::span<const double> normal(size_t e) const {
        return {normals.data() + e * static_cast<size_t>(n), static_cast<size_t>(n)};
    }

    double total_weight() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }

    /// Largest element extent, used for interior evaluation margins.
    double element_diameter() const;
};

/// Build a boundary quadrature mesh with approximately m elements.
/// Circle: m uniform arcs. Sphere: equal-area latitude bands subdivided in
/// azimuth. Box: sides/faces subdivided proportionally to their measure.
BoundaryMesh boundary_mesh(const Domain& d, int m);

}  // namespace cliffmoll
