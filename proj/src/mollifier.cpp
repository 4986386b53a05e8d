#include "cliffmoll/mollifier.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "cliffmoll/quadrature.hpp"

namespace cliffmoll {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double kernel_constant(int n) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("kernel_constant: dimension must be in [1, 8]");
    static std::array<double, kMaxDim + 1> cache{};
    static std::once_flag flags[kMaxDim + 1];
    std::call_once(flags[n], [n] {
        const double sphere = 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
        const double radial =
            integrate([n](double r) { return std::pow(r, n - 1) * bump_profile(r); }, 0.0, 1.0, 1e-13);
        cache[static_cast<size_t>(n)] = 1.0 / (sphere * radial);
    });
    return cache[static_cast<size_t>(n)];
}

double bump_cdf(double t) {
    if (t <= -1.0) return 0.0;
    if (t >= 1.0) return 1.0;
    static constexpr int kN = 8192;  // Simpson intervals over [-1, 1]
    static std::vector<double> table;
    static std::once_flag flag;
    std::call_once(flag, [] {
        table.resize(kN + 1);
        const double k1 = kernel_constant(1);
        const double h = 2.0 / kN;
        table[0] = 0.0;
        for (int i = 1; i <= kN; ++i) {
            const double a = -1.0 + (i - 1) * h;
            table[i] = table[i - 1] + k1 * h / 6.0 *
                                          (bump_profile(a) + 4.0 * bump_profile(a + 0.5 * h) +
                                           bump_profile(a + h));
        }
        const double total = table[kN];
        for (auto& v : table) v /= total;  // exact unit endpoints
    });
    const double s = (t + 1.0) / 2.0 * kN;
    const int i = std::min(kN - 1, static_cast<int>(s));
    const double frac = s - i;
    return table[static_cast<size_t>(i)] * (1.0 - frac) + table[static_cast<size_t>(i) + 1] * frac;
}

MollifierStencil build_stencil(const Grid& g, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("build_stencil: eps must be positive");
    MollifierStencil st;
    st.n = g.n;
    st.eps = eps;
    const double k = kernel_constant(g.n);
    std::vector<int> radius(static_cast<size_t>(g.n));
    for (int a = 0; a < g.n; ++a) radius[a] = static_cast<int>(std::floor(eps / g.spacing[a]));

    std::vector<int> off(static_cast<size_t>(g.n));
    for (int a = 0; a < g.n; ++a) off[a] = -radius[a];
    double sum = 0.0;
    bool done = false;
    while (!done) {
        double r2 = 0.0;
        for (int a = 0; a < g.n; ++a) {
            const double d = off[a] * g.spacing[a];
            r2 += d * d;
        }
        const double w = bump_profile(std::sqrt(r2) / eps);
        if (w > 0.0) {
            st.offsets.push_back(off);
            st.weights.push_back(w);
            sum += w;
        }
        int a = g.n - 1;
        while (true) {
            if (a < 0) { done = true; break; }
            if (++off[a] <= radius[a]) break;
            off[a] = -radius[a];
            --a;
        }
    }

    if (st.weights.empty()) throw std::runtime_error("build_stencil: empty stencil");
    st.raw_mass = sum * std::pow(eps, -g.n) * g.cell_volume() * k;
    for (auto& w : st.weights) w /= sum;
    return st;
}

MollifierKernel make_kernel(const Grid& g, double eps) {
    MollifierKernel ker;
    ker.n = g.n;
    ker.eps = eps;
    ker.k = kernel_constant(g.n);
    ker.stencil = build_stencil(g, eps);
    return ker;
}

std::vector<double> convolve_plane(const Grid& g, const std::vector<double>& data,
                                   const MollifierStencil& st) {
    const size_t N = g.size();
    std::vector<double> out(N, 0.0);
    const size_t m = st.weights.size();
    std::vector<long long> delta(m);
    int max_radius = 0;
    for (size_t s = 0; s < m; ++s) {
        long long d = 0;
        for (int a = 0; a < g.n; ++a) {
            d += static_cast<long long>(st.offsets[s][a]) * static_cast<long long>(g.stride(a));
            max_radius = std::max(max_radius, std::abs(st.offsets[s][a]));
        }
        delta[s] = d;
    }
    std::vector<int> idx(static_cast<size_t>(g.n));
    for (size_t i = 0; i < N; ++i) {
        g.decode(i, idx);
        bool interior = true;
        for (int a = 0; a < g.n; ++a)
            if (idx[a] < max_radius || idx[a] >= g.dims[a] - max_radius) { interior = false; break; }
        double acc = 0.0;
        if (interior) {
            const double* base = data.data() + i;
            for (size_t s = 0; s < m; ++s) acc += st.weights[s] * base[delta[s]];
        } else {
            for (size_t s = 0; s < m; ++s) {
                bool ok = true;
                for (int a = 0; a < g.n; ++a) {
                    const int j = idx[a] + st.offsets[s][a];
                    if (j < 0 || j >= g.dims[a]) { ok = false; break; }
                }
                if (ok) acc += st.weights[s] * data[static_cast<size_t>(static_cast<long long>(i) + delta[s])];
            }
        }
        out[i] = acc;
    }
    return out;
}

ScalarField mollify_scalar(const ScalarField& f, const Domain& d, double eps) {
    const Grid& g = f.grid;
    const double hmax = g.max_spacing();
    if (eps < 4.0 * hmax)
        throw std::invalid_argument("mollify_scalar: eps = " + std::to_string(eps) +
                                    " under-resolved; minimum is 4h = " + std::to_string(4.0 * hmax));
    auto mask_eps = inside_mask(g, d, eps);
    if (count_mask(mask_eps) == 0)
        throw std::runtime_error("mollify_scalar: Omega_eps is empty on this grid (eps = " +
                                 std::to_string(eps) + ")");
    const MollifierStencil st = build_stencil(g, eps);

    ScalarField out;
    out.grid = g;
    out.data.assign(g.size(), 0.0);
    out.mask = std::move(mask_eps);

    const size_t m = st.weights.size();
    std::vector<long long> delta(m);
    for (size_t s = 0; s < m; ++s) {
        long long dd = 0;
        for (int a = 0; a < g.n; ++a)
            dd += static_cast<long long>(st.offsets[s][a]) * static_cast<long long>(g.stride(a));
        delta[s] = dd;
    }
    std::vector<int> idx(static_cast<size_t>(g.n));
    for (size_t i = 0; i < g.size(); ++i) {
        if (!out.mask[i]) continue;
        g.decode(i, idx);
        double acc = 0.0;
        for (size_t s = 0; s < m; ++s) {
            bool ok = true;
            for (int a = 0; a < g.n; ++a) {
                const int j = idx[a] + st.offsets[s][a];
                if (j < 0 || j >= g.dims[a]) { ok = false; break; }
            }
            if (!ok)
                throw std::runtime_error(
                    "mollify_scalar: stencil leaves the grid at an Omega_eps node; grid does not "
                    "cover the domain");
            const size_t src = static_cast<size_t>(static_cast<long long>(i) + delta[s]);
            if (!f.mask[src])
                throw std::runtime_error("mollify_scalar: source value missing at node " +
                                         std::to_string(src));
            acc += st.weights[s] * f.data[src];
        }
        out.data[i] = acc;
    }
    return out;
}

CliffordField mollify_clifford(const CliffordField& f, const Domain& d, double eps) {
    CliffordField out(f.grid(), f.algebra_dim());
    out.inside() = inside_mask(f.grid(), d, eps);
    if (count_mask(out.inside()) == 0)
        throw std::runtime_error("mollify_clifford: Omega_eps is empty on this grid");
    ScalarField plane;
    plane.grid = f.grid();
    plane.mask.assign(f.grid().size(), 1);
    for (size_t mask : f.active_components()) {
        plane.data = f.component(mask);
        ScalarField sm = mollify_scalar(plane, d, eps);
        out.component(mask) = std::move(sm.data);
    }
    return out;
}

namespace {

// One central difference along `axis`; mask shrinks by one cell on that axis.
ScalarField diff_axis(const ScalarField& f, int axis) {
    const Grid& g = f.grid;
    ScalarField out;
    out.grid = g;
    out.data.assign(g.size(), 0.0);
    out.mask.assign(g.size(), 0);
    const size_t s = g.stride(axis);
    const double inv2h = 1.0 / (2.0 * g.spacing[axis]);
    std::vector<int> idx(static_cast<size_t>(g.n));
    for (size_t i = 0; i < g.size(); ++i) {
        if (!f.mask[i]) continue;
        g.decode(i, idx);
        if (idx[axis] < 1 || idx[axis] >= g.dims[axis] - 1) continue;
        if (!f.mask[i - s] || !f.mask[i + s]) continue;
        out.data[i] = (f.data[i + s] - f.data[i - s]) * inv2h;
        out.mask[i] = 1;
    }
    return out;
}

double masked_max_abs(const ScalarField& f, size_t& count) {
    double m = 0.0;
    count = 0;
    for (size_t i = 0; i < f.data.size(); ++i)
        if (f.mask[i]) {
            m = std::max(m, std::abs(f.data[i]));
            ++count;
        }
    return m;
}

void enumerate_multi_indices(int n, int order, std::vector<std::vector<int>>& out,
                             std::vector<int>& cur, int axis, int remaining) {
    if (axis == n) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    for (int j = 0; j <= remaining; ++j) {
        cur[static_cast<size_t>(axis)] = j;
        enumerate_multi_indices(n, order, out, cur, axis + 1, remaining - j);
    }
}

}  // namespace

SmoothnessReport smoothness_report(const ScalarField& f) {
    const Grid& g = f.grid;
    SmoothnessReport rep;
    size_t count = 0;
    rep.max_abs = masked_max_abs(f, count);
    if (count == 0) throw std::runtime_error("smoothness_report: empty region");

    for (int order = 1; order <= 3; ++order) {
        std::vector<std::vector<int>> mis;
        std::vector<int> cur(static_cast<size_t>(g.n));
        enumerate_multi_indices(g.n, order, mis, cur, 0, order);
        double maxo = 0.0;
        size_t valid = 0;
        for (const auto& mi : mis) {
            ScalarField d = f;
            for (int a = 0; a < g.n; ++a)
                for (int rep_a = 0; rep_a < mi[static_cast<size_t>(a)]; ++rep_a) d = diff_axis(d, a);
            size_t c = 0;
            maxo = std::max(maxo, masked_max_abs(d, c));
            valid += c;
        }
        if (valid == 0)
            throw std::runtime_error("smoothness_report: region too small for order-" +
                                     std::to_string(order) + " stencils");
        if (order == 1) rep.max_d1 = maxo;
        else if (order == 2) rep.max_d2 = maxo;
        else rep.max_d3 = maxo;
    }

    std::vector<int> idx(static_cast<size_t>(g.n));
    for (size_t i = 0; i < g.size(); ++i) {
        if (!f.mask[i]) continue;
        g.decode(i, idx);
        for (int a = 0; a < g.n; ++a) {
            if (idx[a] + 1 >= g.dims[a]) continue;
            const size_t j = i + g.stride(a);
            if (!f.mask[j]) continue;
            rep.lipschitz = std::max(rep.lipschitz, std::abs(f.data[j] - f.data[i]) / g.spacing[a]);
        }
    }
    return rep;
}

}  // namespace cliffmoll
