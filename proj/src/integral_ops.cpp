#include "cliffmoll/integral_ops.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cliffmoll {

namespace {

double exp_gamma(const DiracConfig& cfg, std::span<const double> x, int sign) {
    if (cfg.potential.is_zero()) return 1.0;
    return std::exp(sign * cfg.potential.value(x));
}

// Flattened quadrature plan for sum_e E(y_e - x) * B_e with packed
// multivectors B_e; evaluation is allocation-free per target.
struct CauchyPlan {
    int n = 0;
    size_t m = 0;
    std::vector<double> pos;     // m x n element centroids
    std::vector<double> packed;  // m x 2^n coefficients of nu g e^{-Gamma} w
    // wiring[j][b] = (sign, out) for e_j e_b
    std::vector<std::vector<std::pair<int, unsigned>>> wiring;
};

CauchyPlan make_cauchy_plan(const BoundaryData& bd, const DiracConfig& cfg) {
    const BoundaryMesh& mesh = bd.mesh;
    const int n = mesh.n;
    const size_t dim = size_t{1} << n;
    CauchyPlan plan;
    plan.n = n;
    plan.m = mesh.element_count();
    plan.pos = mesh.centroids;
    plan.packed.resize(plan.m * dim);
    for (size_t e = 0; e < plan.m; ++e) {
        Multivector nug(n);
        const auto nu = mesh.normal(e);
        const Multivector& g = bd.values[e];
        for (int j = 0; j < n; ++j) {
            const double nj = nu[static_cast<size_t>(j)];
            if (nj == 0.0) continue;
            for (size_t b = 0; b < dim; ++b) {
                const double vb = g[b];
                if (vb == 0.0) continue;
                const auto bp = blade_product(1u << j, static_cast<unsigned>(b));
                nug[bp.mask] += bp.sign * nj * vb;
            }
        }
        const double fac = mesh.weights[e] * exp_gamma(cfg, mesh.centroid(e), -1);
        for (size_t b = 0; b < dim; ++b) plan.packed[e * dim + b] = nug[b] * fac;
    }
    plan.wiring.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        plan.wiring[static_cast<size_t>(j)].resize(dim);
        for (size_t b = 0; b < dim; ++b) {
            const auto bp = blade_product(1u << j, static_cast<unsigned>(b));
            plan.wiring[static_cast<size_t>(j)][b] = {bp.sign, bp.mask};
        }
    }
    return plan;
}

// acc[] += sum_e E(y_e - x) B_e; caller applies the e^{Gamma(x)} factor.
void cauchy_eval(const CauchyPlan& plan, const DiracConfig& cfg, std::span<const double> x,
                 double* acc) {
    const int n = plan.n;
    const size_t dim = size_t{1} << n;
    std::array<double, kMaxDim> k{};
    for (size_t e = 0; e < plan.m; ++e) {
        const double* y = plan.pos.data() + e * static_cast<size_t>(n);
        double r2 = 0.0;
        for (int a = 0; a < n; ++a) {
            k[static_cast<size_t>(a)] = y[a] - x[a];
            r2 += k[static_cast<size_t>(a)] * k[static_cast<size_t>(a)];
        }
        if (r2 == 0.0) throw std::invalid_argument("cauchy_integral: evaluation on the boundary");
        const double rn = (n == 2) ? r2 : (n == 3 ? r2 * std::sqrt(r2) : std::pow(std::sqrt(r2), n));
        const double s = -1.0 / (cfg.omega * rn);  // conj(z)/|z|^n has coefficients -z_a/|z|^n
        const double* B = plan.packed.data() + e * dim;
        for (int j = 0; j < n; ++j) {
            const double kj = k[static_cast<size_t>(j)] * s;
            if (kj == 0.0) continue;
            const auto& wire = plan.wiring[static_cast<size_t>(j)];
            for (size_t b = 0; b < dim; ++b) {
                const double vb = B[b];
                if (vb == 0.0) continue;
                acc[wire[b].second] += wire[b].first * kj * vb;
            }
        }
    }
}

// Kernel integral over the node-centered cell, subcell quadrature with a
// h/4 exclusion ball; odd symmetry makes this vanish for centered cells, so
// the singular node effectively contributes nothing.
std::vector<double> singular_cell_integral(const Grid& g, double omega) {
    const int n = g.n;
    const int sub = 4;
    double hmin = g.spacing[0];
    for (double h : g.spacing) hmin = std::min(hmin, h);
    const double excl2 = (hmin / 4.0) * (hmin / 4.0);
    std::vector<double> acc(static_cast<size_t>(n), 0.0);
    std::vector<int> it(static_cast<size_t>(n), 0);
    double subvol = g.cell_volume();
    for (int a = 0; a < n; ++a) subvol /= sub;
    bool done = false;
    while (!done) {
        double r2 = 0.0;
        std::array<double, kMaxDim> z{};
        for (int a = 0; a < n; ++a) {
            z[static_cast<size_t>(a)] = ((it[static_cast<size_t>(a)] + 0.5) / sub - 0.5) * g.spacing[a];
            r2 += z[static_cast<size_t>(a)] * z[static_cast<size_t>(a)];
        }
        if (r2 > excl2) {
            // integrand E(x - y) at y = x + z equals -E(z); E(z)_a = -z_a/(omega r^n)
            const double rn = (n == 2) ? r2 : (n == 3 ? r2 * std::sqrt(r2) : std::pow(std::sqrt(r2), n));
            const double s = 1.0 / (omega * rn);
            for (int a = 0; a < n; ++a) acc[static_cast<size_t>(a)] += z[static_cast<size_t>(a)] * s * subvol;
        }
        int a = n - 1;
        while (true) {
            if (a < 0) { done = true; break; }
            if (++it[static_cast<size_t>(a)] < sub) break;
            it[static_cast<size_t>(a)] = 0;
            --a;
        }
    }
    return acc;
}

struct TeoPlan {
    int n = 0;
    size_t nsrc = 0;
    std::vector<double> src_pos;                    // nsrc x n
    std::vector<std::vector<double>> q;             // per active comp, value e^{-Gamma} vol
    std::vector<size_t> active;
    std::vector<std::vector<std::pair<int, unsigned>>> wiring;  // [axis][active index]
    std::vector<double> singular_cell;
    double sing2 = 0.0;  // squared radius treated as the singular cell
    double vol = 0.0;
};

TeoPlan make_teo_plan(const CliffordField& h, const DiracConfig& cfg) {
    const Grid& g = h.grid();
    TeoPlan plan;
    plan.n = g.n;
    plan.active = h.active_components();
    plan.vol = g.cell_volume();
    double hmin = g.spacing[0];
    for (double s : g.spacing) hmin = std::min(hmin, s);
    plan.sing2 = 0.25 * hmin * hmin;
    plan.wiring.resize(static_cast<size_t>(g.n));
    for (int j = 0; j < g.n; ++j)
        for (size_t b : plan.active) {
            const auto bp = blade_product(1u << j, static_cast<unsigned>(b));
            plan.wiring[static_cast<size_t>(j)].push_back({bp.sign, bp.mask});
        }
    std::vector<double> y(static_cast<size_t>(g.n));
    std::vector<size_t> nodes;
    for (size_t i = 0; i < g.size(); ++i) {
        if (!h.inside()[i]) continue;
        nodes.push_back(i);
        g.node(i, y);
        plan.src_pos.insert(plan.src_pos.end(), y.begin(), y.end());
    }
    plan.nsrc = nodes.size();
    plan.q.resize(plan.active.size());
    for (size_t ci = 0; ci < plan.active.size(); ++ci) {
        const auto& plane = h.component(plan.active[ci]);
        auto& qv = plan.q[ci];
        qv.resize(plan.nsrc);
        for (size_t s = 0; s < plan.nsrc; ++s) {
            const double* pos = plan.src_pos.data() + s * static_cast<size_t>(g.n);
            qv[s] = plane[nodes[s]] *
                    exp_gamma(cfg, {pos, static_cast<size_t>(g.n)}, -1) * plan.vol;
        }
    }
    plan.singular_cell = singular_cell_integral(g, cfg.omega);
    return plan;
}

// acc[] += sum_y E(x - y) q(y); caller applies e^{Gamma(x)}.
void teo_eval(const TeoPlan& plan, const DiracConfig& cfg, std::span<const double> x, double* acc) {
    const int n = plan.n;
    std::array<double, kMaxDim> kacc{};
    for (size_t ci = 0; ci < plan.active.size(); ++ci) {
        const double* q = plan.q[ci].data();
        kacc.fill(0.0);
        double sing_q = 0.0;
        if (n == 2) {
            const double x0 = x[0], x1 = x[1];
            double k0 = 0.0, k1 = 0.0;
            for (size_t s = 0; s < plan.nsrc; ++s) {
                const double dz0 = x0 - plan.src_pos[2 * s];
                const double dz1 = x1 - plan.src_pos[2 * s + 1];
                const double r2 = dz0 * dz0 + dz1 * dz1;
                if (r2 <= plan.sing2) { sing_q += q[s]; continue; }
                const double w = q[s] / r2;
                k0 -= dz0 * w;
                k1 -= dz1 * w;
            }
            kacc[0] = k0 / cfg.omega;
            kacc[1] = k1 / cfg.omega;
        } else {
            for (size_t s = 0; s < plan.nsrc; ++s) {
                const double* pos = plan.src_pos.data() + s * static_cast<size_t>(n);
                std::array<double, kMaxDim> dz{};
                double r2 = 0.0;
                for (int a = 0; a < n; ++a) {
                    dz[static_cast<size_t>(a)] = x[a] - pos[a];
                    r2 += dz[static_cast<size_t>(a)] * dz[static_cast<size_t>(a)];
                }
                if (r2 <= plan.sing2) { sing_q += q[s]; continue; }
                const double rn = (n == 3) ? r2 * std::sqrt(r2) : std::pow(std::sqrt(r2), n);
                const double w = -1.0 / (cfg.omega * rn) * q[s];
                for (int a = 0; a < n; ++a) kacc[static_cast<size_t>(a)] += dz[static_cast<size_t>(a)] * w;
            }
        }
        if (sing_q != 0.0) {
            const double density = sing_q / plan.vol;
            for (int a = 0; a < n; ++a)
                kacc[static_cast<size_t>(a)] += plan.singular_cell[static_cast<size_t>(a)] * density;
        }
        for (int j = 0; j < n; ++j) {
            const auto [sg, outc] = plan.wiring[static_cast<size_t>(j)][ci];
            acc[outc] += sg * kacc[static_cast<size_t>(j)];
        }
    }
}

Multivector from_acc(int n, const double* acc, double scale) {
    Multivector out(n);
    for (size_t m = 0; m < (size_t{1} << n); ++m) out[m] = acc[m] * scale;
    return out;
}

}  // namespace

BoundaryData boundary_data_from(const BoundaryMesh& mesh,
                                const std::function<Multivector(std::span<const double>)>& fn) {
    BoundaryData bd;
    bd.mesh = mesh;
    bd.values.reserve(mesh.element_count());
    for (size_t e = 0; e < mesh.element_count(); ++e) bd.values.push_back(fn(mesh.centroid(e)));
    return bd;
}

BoundaryData trace_from_field(const CliffordField& f, const BoundaryMesh& mesh) {
    const Grid& g = f.grid();
    BoundaryData bd;
    bd.mesh = mesh;
    bd.values.reserve(mesh.element_count());
    std::vector<int> idx(static_cast<size_t>(g.n));
    const auto active = f.active_components();
    for (size_t e = 0; e < mesh.element_count(); ++e) {
        const auto y = mesh.centroid(e);
        for (int a = 0; a < g.n; ++a) {
            int i = static_cast<int>(std::lround((y[static_cast<size_t>(a)] - g.origin[a]) / g.spacing[a]));
            i = std::max(1, std::min(g.dims[a] - 2, i));
            idx[static_cast<size_t>(a)] = i;
        }
        const size_t node = g.encode(idx);
        std::vector<double> x0 = g.node(node);
        Multivector v(f.algebra_dim());
        for (size_t m : active) {
            const auto& plane = f.component(m);
            double val = plane[node];
            for (int a = 0; a < g.n; ++a) {
                const size_t s = g.stride(a);
                const double grad = (plane[node + s] - plane[node - s]) / (2.0 * g.spacing[a]);
                val += grad * (y[static_cast<size_t>(a)] - x0[static_cast<size_t>(a)]);
            }
            v[m] = val;
        }
        bd.values.push_back(v);
    }
    return bd;
}

Multivector cauchy_integral(const BoundaryData& bd, const DiracConfig& cfg,
                            std::span<const double> x) {
    if (bd.mesh.domain.sdf(x) >= 0.0)
        throw std::invalid_argument("cauchy_integral: evaluation point on or outside the boundary");
    CauchyPlan plan = make_cauchy_plan(bd, cfg);
    std::vector<double> acc(size_t{1} << plan.n, 0.0);
    cauchy_eval(plan, cfg, x, acc.data());
    return from_acc(plan.n, acc.data(), exp_gamma(cfg, x, +1));
}

Multivector teodorescu(const CliffordField& h, const DiracConfig& cfg, std::span<const double> x) {
    const Grid& g = h.grid();
    std::vector<int> idx(static_cast<size_t>(g.n));
    for (int a = 0; a < g.n; ++a) {
        const int i = static_cast<int>(std::lround((x[a] - g.origin[a]) / g.spacing[a]));
        if (i < 0 || i >= g.dims[a]) throw std::invalid_argument("teodorescu: point outside the grid");
        idx[static_cast<size_t>(a)] = i;
    }
    if (!h.inside()[g.encode(idx)])
        throw std::invalid_argument("teodorescu: point outside the integration region");
    TeoPlan plan = make_teo_plan(h, cfg);
    std::vector<double> acc(size_t{1} << g.n, 0.0);
    teo_eval(plan, cfg, x, acc.data());
    return from_acc(g.n, acc.data(), exp_gamma(cfg, x, +1));
}

CliffordField teodorescu_field(const CliffordField& h, const DiracConfig& cfg,
                               const std::vector<uint8_t>* targets) {
    const Grid& g = h.grid();
    TeoPlan plan = make_teo_plan(h, cfg);
    CliffordField out(g, h.algebra_dim());
    out.inside() = targets ? *targets : h.inside();
    std::vector<double> x(static_cast<size_t>(g.n));
    std::vector<double> acc(size_t{1} << g.n);
    for (size_t i = 0; i < g.size(); ++i) {
        if (!out.inside()[i]) continue;
        g.node(i, x);
        std::fill(acc.begin(), acc.end(), 0.0);
        teo_eval(plan, cfg, x, acc.data());
        out.set_value(i, from_acc(g.n, acc.data(), exp_gamma(cfg, x, +1)));
    }
    out.drop_zero_components();
    return out;
}

ScalarField borel_pompeiu_residual(const CliffordField& f, const DiracConfig& cfg,
                                   const BoundaryMesh& mesh, double margin_factor) {
    const Grid& g = f.grid();
    BoundaryData g_tr = trace_from_field(f, mesh);
    CliffordField df = apply_dirac(f, cfg);

    CliffordField vol_data(g, f.algebra_dim());
    auto vol_mask = inside_mask(g, mesh.domain);
    for (size_t i = 0; i < g.size(); ++i) {
        if (vol_mask[i] && !df.inside()[i])
            throw std::runtime_error(
                "borel_pompeiu_residual: margin violation, D_gamma f missing on the volume region");
    }
    vol_data.inside() = vol_mask;
    for (size_t m : df.active_components()) vol_data.component(m) = df.component(m);
    vol_data.drop_zero_components();

    const double margin = margin_factor * mesh.element_diameter();
    ScalarField res;
    res.grid = g;
    res.data.assign(g.size(), 0.0);
    res.mask.assign(g.size(), 0);

    CauchyPlan cplan = make_cauchy_plan(g_tr, cfg);
    TeoPlan tplan = make_teo_plan(vol_data, cfg);
    std::vector<double> x(static_cast<size_t>(g.n));
    std::vector<double> acc(size_t{1} << g.n);
    for (size_t i = 0; i < g.size(); ++i) {
        g.node(i, x);
        if (mesh.domain.sdf(x) > -margin) continue;
        std::fill(acc.begin(), acc.end(), 0.0);
        cauchy_eval(cplan, cfg, x, acc.data());
        teo_eval(tplan, cfg, x, acc.data());
        Multivector recon = from_acc(g.n, acc.data(), exp_gamma(cfg, x, +1));
        res.data[i] = (f.value(i) - recon).norm();
        res.mask[i] = 1;
    }
    return res;
}

namespace {

SolveReport finish_report(const CliffordField& sol, const CliffordField* rhs, const BoundaryData& bd,
                          const DiracConfig& cfg, double margin) {
    SolveReport rep;
    rep.mesh_elements = bd.mesh.element_count();
    rep.grid_h = sol.grid().max_spacing();
    rep.margin = margin;
    rep.nodes_evaluated = sol.inside_count();

    CliffordField ds = apply_dirac(sol, cfg);
    rep.interior_margin = std::max(0.15 * bd.mesh.domain.inradius(), margin);
    double mx = 0.0, l2 = 0.0, mx_core = 0.0;
    size_t cnt = 0;
    const double vol = sol.grid().cell_volume();
    std::vector<double> xn(static_cast<size_t>(sol.grid().n));
    for (size_t i = 0; i < sol.grid().size(); ++i) {
        if (!ds.inside()[i]) continue;
        Multivector r = ds.value(i);
        if (rhs) r = r - rhs->value(i);
        const double v = r.norm();
        mx = std::max(mx, v);
        l2 += v * v * vol;
        ++cnt;
        sol.grid().node(i, xn);
        if (bd.mesh.domain.sdf(xn) <= -rep.interior_margin) mx_core = std::max(mx_core, v);
    }
    rep.max_dirac_residual = cnt ? mx : std::numeric_limits<double>::quiet_NaN();
    rep.l2_dirac_residual = cnt ? std::sqrt(l2) : std::numeric_limits<double>::quiet_NaN();
    rep.interior_max_residual = cnt ? mx_core : std::numeric_limits<double>::quiet_NaN();

    const int n = sol.grid().n;
    std::vector<double> xin(static_cast<size_t>(n));
    double disc = 0.0;
    for (size_t e = 0; e < bd.mesh.element_count(); ++e) {
        const auto y = bd.mesh.centroid(e);
        const auto nu = bd.mesh.normal(e);
        for (int a = 0; a < n; ++a)
            xin[static_cast<size_t>(a)] = y[static_cast<size_t>(a)] - margin * nu[static_cast<size_t>(a)];
        disc = std::max(disc, (cauchy_integral(bd, cfg, xin) - bd.values[e]).norm());
    }
    rep.trace_discrepancy = disc;
    return rep;
}

}  // namespace

std::pair<CliffordField, SolveReport> solve_bvp(const BoundaryData& bd, const DiracConfig& cfg,
                                                const Grid& grid, double margin_factor) {
    const double margin = margin_factor * bd.mesh.element_diameter();
    CliffordField out(grid, bd.mesh.n);
    auto mask = inside_mask(grid, bd.mesh.domain, margin);
    if (count_mask(mask) == 0)
        throw std::runtime_error(
            "solve_bvp: no interior nodes at the requested margin; grid and mesh do not resolve "
            "each other");
    out.inside() = mask;
    CauchyPlan plan = make_cauchy_plan(bd, cfg);
    std::vector<double> x(static_cast<size_t>(grid.n));
    std::vector<double> acc(size_t{1} << grid.n);
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!mask[i]) continue;
        grid.node(i, x);
        std::fill(acc.begin(), acc.end(), 0.0);
        cauchy_eval(plan, cfg, x, acc.data());
        out.set_value(i, from_acc(grid.n, acc.data(), exp_gamma(cfg, x, +1)));
    }
    out.drop_zero_components();
    SolveReport rep = finish_report(out, nullptr, bd, cfg, margin);
    return {std::move(out), rep};
}

std::pair<CliffordField, SolveReport> solve_nhbvp(const CliffordField& rhs, const BoundaryData& bd,
                                                  const DiracConfig& cfg, const Grid& grid,
                                                  double margin_factor) {
    if (rhs.active_components().empty()) return solve_bvp(bd, cfg, grid, margin_factor);
    const double margin = margin_factor * bd.mesh.element_diameter();
    CliffordField out(grid, bd.mesh.n);
    auto mask = inside_mask(grid, bd.mesh.domain, margin);
    if (count_mask(mask) == 0)
        throw std::runtime_error("solve_nhbvp: no interior nodes at the requested margin");
    out.inside() = mask;
    CauchyPlan cplan = make_cauchy_plan(bd, cfg);
    TeoPlan tplan = make_teo_plan(rhs, cfg);
    std::vector<double> x(static_cast<size_t>(grid.n));
    std::vector<double> acc(size_t{1} << grid.n);
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!mask[i]) continue;
        grid.node(i, x);
        std::fill(acc.begin(), acc.end(), 0.0);
        cauchy_eval(cplan, cfg, x, acc.data());
        teo_eval(tplan, cfg, x, acc.data());
        out.set_value(i, from_acc(grid.n, acc.data(), exp_gamma(cfg, x, +1)));
    }
    out.drop_zero_components();
    SolveReport rep = finish_report(out, &rhs, bd, cfg, margin);
    return {std::move(out), rep};
}

}  // namespace cliffmoll
