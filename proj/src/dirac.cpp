#include "cliffmoll/dirac.hpp"

#include <cmath>
#include <sstream>

#include "cliffmoll/boundary_mesh.hpp"
#include "cliffmoll/integral_ops.hpp"

namespace cliffmoll {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double unit_sphere_area(int n) { return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n); }
double unit_ball_volume(int n) { return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0); }

DiracConfig make_config(int n, GradientPotential potential, int kernel_sign, double omega) {
    if (!potential.c.empty() && potential.dim() != n)
        throw std::invalid_argument("make_config: potential dimension mismatch");
    if (potential.c.empty()) potential.c.assign(static_cast<size_t>(n), 0.0);
    if (kernel_sign != 1 && kernel_sign != -1)
        throw std::invalid_argument("make_config: kernel_sign must be +1 or -1");
    if (!(omega > 0.0)) throw std::invalid_argument("make_config: omega must be positive");
    DiracConfig cfg;
    cfg.n = n;
    cfg.potential = std::move(potential);
    cfg.kernel_sign = kernel_sign;
    cfg.omega = omega;
    return cfg;
}

CliffordField apply_dirac(const CliffordField& f, const DiracConfig& cfg, OperatorSide side) {
    const Grid& g = f.grid();
    if (cfg.n != f.algebra_dim()) throw std::invalid_argument("apply_dirac: dimension mismatch");
    CliffordField out(g, f.algebra_dim());

    // valid region: node and all axis neighbors carry data
    auto& valid = out.inside();
    std::vector<int> idx(static_cast<size_t>(g.n));
    for (size_t i = 0; i < g.size(); ++i) {
        valid[i] = 0;
        if (!f.inside()[i]) continue;
        g.decode(i, idx);
        bool ok = true;
        for (int a = 0; a < g.n && ok; ++a) {
            if (idx[a] < 1 || idx[a] >= g.dims[a] - 1) ok = false;
            else if (!f.inside()[i - g.stride(a)] || !f.inside()[i + g.stride(a)]) ok = false;
        }
        valid[i] = ok ? 1 : 0;
    }
    if (out.inside_count() == 0)
        throw std::runtime_error("apply_dirac: no nodes admit a central stencil (margin violation)");

    for (int j = 0; j < g.n; ++j) {
        const size_t s = g.stride(j);
        const double inv2h = 1.0 / (2.0 * g.spacing[j]);
        const double gj = cfg.gamma(j);
        const unsigned ej = 1u << j;
        for (size_t b : f.active_components()) {
            const auto bp = side == OperatorSide::Left
                                ? blade_product(ej, static_cast<unsigned>(b))
                                : blade_product(static_cast<unsigned>(b), ej);
            const auto& p = f.component(b);
            auto& o = out.component(bp.mask);
            for (size_t i = 0; i < g.size(); ++i) {
                if (!valid[i]) continue;
                const double d = (p[i + s] - p[i - s]) * inv2h - gj * p[i];
                o[i] += bp.sign * d;
            }
        }
    }
    out.drop_zero_components();
    return out;
}

Multivector cauchy_kernel(std::span<const double> x, const DiracConfig& cfg) {
    const int n = cfg.n;
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) r2 += x[a] * x[a];
    if (r2 == 0.0) throw std::invalid_argument("cauchy_kernel: evaluation at the singularity");
    const double rn = std::pow(std::sqrt(r2), n);
    double fac = 1.0 / (cfg.omega * rn);
    if (!cfg.potential.is_zero()) fac *= std::exp(cfg.kernel_sign * cfg.potential.value(x));
    Multivector out(n);
    for (int a = 0; a < n; ++a) out[size_t{1} << a] = -x[a] * fac;  // conj negates vectors
    return out;
}

RegularityReport check_regular(const CliffordField& f, const DiracConfig& cfg,
                               const std::vector<uint8_t>& region, OperatorSide side) {
    CliffordField df = apply_dirac(f, cfg, side);
    RegularityReport rep;
    const double vol = f.grid().cell_volume();
    double l2 = 0.0;
    for (size_t i = 0; i < f.grid().size(); ++i) {
        if (!region[i] || !df.inside()[i]) continue;
        const double v = df.value_norm(i);
        rep.max_residual = std::max(rep.max_residual, v);
        l2 += v * v * vol;
        ++rep.nodes;
    }
    if (rep.nodes == 0) throw std::invalid_argument("check_regular: empty region");
    rep.l2_residual = std::sqrt(l2);
    return rep;
}

namespace {

// relative grid residual of D_gamma Psi over the annulus 0.5 <= |x| <= 1
double kernel_dirac_residual(const DiracConfig& cfg, int res) {
    const int n = cfg.n;
    std::vector<double> lo(static_cast<size_t>(n), -1.2), hi(static_cast<size_t>(n), 1.2);
    Grid g = build_grid(lo, hi, res);  // even res: no node at the singularity
    Domain box = Domain::box(lo, hi);
    CliffordField psi = sample_field(
        [&](std::span<const double> x) { return cauchy_kernel(x, cfg); }, g, box);
    // mark everything inside so stencils exist; restrict the residual region
    std::fill(psi.inside().begin(), psi.inside().end(), 1);
    CliffordField d_left = apply_dirac(psi, cfg, OperatorSide::Left);
    CliffordField d_right = apply_dirac(psi, cfg, OperatorSide::Right);
    double max_res = 0.0, max_psi = 0.0;
    std::vector<double> x(static_cast<size_t>(n));
    for (size_t i = 0; i < g.size(); ++i) {
        g.node(i, x);
        double r2 = 0.0;
        for (int a = 0; a < n; ++a) r2 += x[static_cast<size_t>(a)] * x[static_cast<size_t>(a)];
        const double r = std::sqrt(r2);
        if (r < 0.5 || r > 1.0) continue;
        if (!d_left.inside()[i]) continue;
        max_res = std::max({max_res, d_left.value_norm(i), d_right.value_norm(i)});
        max_psi = std::max(max_psi, psi.value_norm(i));
    }
    return max_res / max_psi;
}

// constant-field reconstruction error of F(e_0) + T(D_gamma e_0)
double constant_bp_residual(const DiracConfig& cfg, int grid_res, int mesh_elements) {
    const int n = cfg.n;
    Domain ball = Domain::ball(std::vector<double>(static_cast<size_t>(n), 0.0), 1.0);
    BoundaryMesh mesh = boundary_mesh(ball, mesh_elements);
    BoundaryData bd = boundary_data_from(
        mesh, [&](std::span<const double>) { return Multivector::scalar(n, 1.0); });
    std::vector<double> lo(static_cast<size_t>(n), -1.0), hi(static_cast<size_t>(n), 1.0);
    Grid g = build_grid(lo, hi, grid_res);
    // D_gamma (e_0) = -gamma as a constant field
    CliffordField rhs(g, n);
    rhs.inside() = inside_mask(g, ball);
    if (!cfg.potential.is_zero()) {
        Multivector mg = -cfg.potential.gamma_vector();
        for (int j = 0; j < n; ++j) {
            if (mg[size_t{1} << j] == 0.0) continue;
            auto& plane = rhs.component(size_t{1} << j);
            for (size_t i = 0; i < g.size(); ++i) plane[i] = mg[size_t{1} << j];
        }
    }
    rhs.drop_zero_components();

    // probe points, fixed and away from nodes
    std::vector<std::vector<double>> probes;
    const double base[6] = {0.017, -0.193, 0.351, -0.402, 0.111, 0.233};
    for (int p = 0; p < 3; ++p) {
        std::vector<double> x(static_cast<size_t>(n));
        for (int a = 0; a < n; ++a) x[static_cast<size_t>(a)] = base[(p * n + a) % 6];
        probes.push_back(std::move(x));
    }
    const Multivector one = Multivector::scalar(n, 1.0);
    double err = 0.0;
    for (const auto& x : probes) {
        Multivector recon = cauchy_integral(bd, cfg, x);
        if (!cfg.potential.is_zero()) recon += teodorescu(rhs, cfg, x);
        err = std::max(err, (recon - one).norm());
    }
    return err;
}

}  // namespace

DiracConfig calibrate_kernel(int n, const GradientPotential& potential, int grid_res,
                             int mesh_elements, double tolerance) {
    if (n < 2 || n > 3) throw std::invalid_argument("calibrate_kernel: n must be 2 or 3");
    if (grid_res <= 0) grid_res = n == 2 ? 48 : 96;  // the 3-D kernel needs finer probes
    GradientPotential pot = potential;
    if (pot.c.empty()) pot.c.assign(static_cast<size_t>(n), 0.0);

    const double omegas[2] = {unit_sphere_area(n), unit_ball_volume(n)};
    const int signs[2] = {-1, +1};  // -1 first so ties keep the printed convention

    std::vector<CalibrationRow> table;
    int best = -1;
    double best_score = 0.0;
    for (int si = 0; si < 2; ++si) {
        for (int oi = 0; oi < 2; ++oi) {
            DiracConfig cand = make_config(n, pot, signs[si], omegas[oi]);
            CalibrationRow row;
            row.kernel_sign = signs[si];
            row.omega = omegas[oi];
            row.dirac_residual = kernel_dirac_residual(cand, grid_res);
            row.bp_residual = constant_bp_residual(cand, grid_res, mesh_elements);
            table.push_back(row);
            const double score = row.dirac_residual + row.bp_residual;
            if (best < 0 || score < best_score * (1.0 - 1e-9)) {
                best = static_cast<int>(table.size()) - 1;
                best_score = score;
            }
        }
    }

    const CalibrationRow& win = table[static_cast<size_t>(best)];
    if (win.dirac_residual > tolerance || win.bp_residual > tolerance) {
        std::ostringstream os;
        os << "calibrate_kernel: no combination reaches tolerance " << tolerance << "\n";
        for (const auto& r : table)
            os << "  sign=" << (r.kernel_sign > 0 ? "+1" : "-1") << " omega=" << r.omega
               << " dirac_residual=" << r.dirac_residual << " bp_residual=" << r.bp_residual << "\n";
        throw CalibrationError(os.str());
    }

    DiracConfig cfg = make_config(n, pot, win.kernel_sign, win.omega);
    cfg.calib_dirac_residual = win.dirac_residual;
    cfg.calib_bp_residual = win.bp_residual;
    cfg.calibration_table = std::move(table);
    return cfg;
}

}  // namespace cliffmoll
