#include "cliffmoll/boundary_mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace cliffmoll {

namespace {

constexpr double kPi = 3.14159265358979323846;

void push_element(BoundaryMesh& mesh, std::span<const double> c, std::span<const double> nu, double w) {
    mesh.centroids.insert(mesh.centroids.end(), c.begin(), c.end());
    mesh.normals.insert(mesh.normals.end(), nu.begin(), nu.end());
    mesh.weights.push_back(w);
}

BoundaryMesh circle_mesh(const Domain& d, int m) {
    BoundaryMesh mesh;
    mesh.n = 2;
    mesh.domain = d;
    const double r = d.radius;
    const double w = 2.0 * kPi * r / m;
    for (int k = 0; k < m; ++k) {
        const double a = 2.0 * kPi * k / m;
        const double nu[2] = {std::cos(a), std::sin(a)};
        const double c[2] = {d.center[0] + r * nu[0], d.center[1] + r * nu[1]};
        push_element(mesh, c, nu, w);
    }
    return mesh;
}

// Equal-area latitude bands, each split in azimuth; cumulative rounding keeps
// the element total at m and the weight total at 4 pi r^2 exactly.
BoundaryMesh sphere_mesh(const Domain& d, int m) {
    BoundaryMesh mesh;
    mesh.n = 3;
    mesh.domain = d;
    const double r = d.radius;
    const int bands = std::max(1, static_cast<int>(std::lround(std::sqrt(kPi * m) / 2.0)));
    const double band_area = 4.0 * kPi * r * r / bands;
    int assigned = 0;
    for (int j = 0; j < bands; ++j) {
        const int upto = static_cast<int>(std::lround(static_cast<double>(m) * (j + 1) / bands));
        const int k_j = std::max(1, upto - assigned);
        assigned += k_j;
        const double z_mid = 1.0 - (2.0 * j + 1.0) / bands;  // in (-1, 1)
        const double rho = std::sqrt(std::max(0.0, 1.0 - z_mid * z_mid));
        const double w = band_area / k_j;
        for (int l = 0; l < k_j; ++l) {
            const double phi = 2.0 * kPi * (l + 0.5) / k_j;
            const double nu[3] = {rho * std::cos(phi), rho * std::sin(phi), z_mid};
            const double c[3] = {d.center[0] + r * nu[0], d.center[1] + r * nu[1], d.center[2] + r * nu[2]};
            push_element(mesh, c, nu, w);
        }
    }
    return mesh;
}

BoundaryMesh box2_mesh(const Domain& d, int m) {
    BoundaryMesh mesh;
    mesh.n = 2;
    mesh.domain = d;
    const double lx = d.hi[0] - d.lo[0], ly = d.hi[1] - d.lo[1];
    const double per = 2.0 * (lx + ly);
    const double len[4] = {lx, ly, lx, ly};
    double cum = 0.0;
    int assigned = 0;
    for (int s = 0; s < 4; ++s) {
        cum += len[s];
        const int upto = static_cast<int>(std::lround(m * cum / per));
        const int k_s = std::max(1, upto - assigned);
        assigned += k_s;
        const double w = len[s] / k_s;
        for (int i = 0; i < k_s; ++i) {
            const double t = (i + 0.5) / k_s;
            double c[2], nu[2] = {0.0, 0.0};
            switch (s) {
                case 0: c[0] = d.lo[0] + t * lx; c[1] = d.lo[1]; nu[1] = -1.0; break;
                case 1: c[0] = d.hi[0]; c[1] = d.lo[1] + t * ly; nu[0] = 1.0; break;
                case 2: c[0] = d.hi[0] - t * lx; c[1] = d.hi[1]; nu[1] = 1.0; break;
                default: c[0] = d.lo[0]; c[1] = d.hi[1] - t * ly; nu[0] = -1.0; break;
            }
            push_element(mesh, c, nu, w);
        }
    }
    return mesh;
}

BoundaryMesh box3_mesh(const Domain& d, int m) {
    BoundaryMesh mesh;
    mesh.n = 3;
    mesh.domain = d;
    const double len[3] = {d.hi[0] - d.lo[0], d.hi[1] - d.lo[1], d.hi[2] - d.lo[2]};
    double total = 0.0;
    double face_area[6];
    for (int axis = 0; axis < 3; ++axis) {
        const int u = (axis + 1) % 3, v = (axis + 2) % 3;
        face_area[2 * axis] = face_area[2 * axis + 1] = len[u] * len[v];
        total += 2.0 * len[u] * len[v];
    }
    double cum = 0.0;
    int assigned = 0;
    for (int f = 0; f < 6; ++f) {
        cum += face_area[f];
        const int upto = static_cast<int>(std::lround(m * cum / total));
        const int k_f = std::max(1, upto - assigned);
        assigned += k_f;
        const int axis = f / 2;
        const int side = f % 2;  // 0 = lo face, 1 = hi face
        const int u = (axis + 1) % 3, v = (axis + 2) % 3;
        // near-square subdivision of the face
        int a = std::max(1, static_cast<int>(std::lround(std::sqrt(k_f * len[u] / len[v]))));
        int b = std::max(1, (k_f + a - 1) / a);
        const double w = face_area[f] / (a * b);
        for (int i = 0; i < a; ++i) {
            for (int j = 0; j < b; ++j) {
                double c[3], nu[3] = {0.0, 0.0, 0.0};
                nu[axis] = side ? 1.0 : -1.0;
                c[axis] = side ? d.hi[axis] : d.lo[axis];
                c[u] = d.lo[u] + (i + 0.5) / a * len[u];
                c[v] = d.lo[v] + (j + 0.5) / b * len[v];
                push_element(mesh, c, nu, w);
            }
        }
    }
    return mesh;
}

}  // namespace

double BoundaryMesh::element_diameter() const {
    // Area weights scale like diameter^(n-1).
    double wmax = 0.0;
    for (double w : weights) wmax = std::max(wmax, w);
    if (n <= 1) return 0.0;
    return n == 2 ? wmax : std::sqrt(wmax);
}

BoundaryMesh boundary_mesh(const Domain& d, int m) {
    if (m < 1) throw std::invalid_argument("boundary_mesh: element count must be positive");
    const int n = d.dim();
    if (d.kind == Domain::Kind::Ball) {
        if (n == 2) return circle_mesh(d, m);
        if (n == 3) return sphere_mesh(d, m);
        throw std::invalid_argument("boundary_mesh: ball meshes support n in {2, 3}");
    }
    if (n == 2) return box2_mesh(d, m);
    if (n == 3) return box3_mesh(d, m);
    throw std::invalid_argument("boundary_mesh: box meshes support n in {2, 3}");
}

}  // namespace cliffmoll
