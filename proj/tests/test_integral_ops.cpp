#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cliffmoll/integral_ops.hpp"

using namespace cliffmoll;

namespace {

constexpr double kPi = 3.14159265358979323846;

Grid box_grid(int n, double half, int res) {
    std::vector<double> lo(static_cast<size_t>(n), -half), hi(static_cast<size_t>(n), half);
    return build_grid(lo, hi, res);
}

DiracConfig plain_cfg(int n) { return make_config(n, GradientPotential{}, -1, unit_sphere_area(n)); }

CliffordField sample_everywhere(const Grid& g,
                                const std::function<Multivector(std::span<const double>)>& fn) {
    std::vector<double> lo(static_cast<size_t>(g.n)), hi(static_cast<size_t>(g.n));
    for (int a = 0; a < g.n; ++a) {
        lo[static_cast<size_t>(a)] = g.origin[a] - 1.0;
        hi[static_cast<size_t>(a)] = g.origin[a] + g.spacing[a] * (g.dims[a] - 1) + 1.0;
    }
    CliffordField f = sample_field(fn, g, Domain::box(lo, hi));
    std::fill(f.inside().begin(), f.inside().end(), 1);
    return f;
}

}  // namespace

TEST_CASE("constant boundary data reproduces the constant at the center") {
    Domain disk = Domain::ball({0.0, 0.0}, 1.0);
    DiracConfig cfg = plain_cfg(2);
    BoundaryMesh mesh = boundary_mesh(disk, 512);
    BoundaryData bd = boundary_data_from(mesh, [](std::span<const double>) {
        return Multivector::scalar(2, 1.0);
    });
    std::vector<double> center{0.0, 0.0};
    Multivector got = cauchy_integral(bd, cfg, center);
    CHECK(std::abs(got[0] - 1.0) <= 1e-3);
    for (size_t m = 1; m < got.size(); ++m) CHECK(std::abs(got[m]) <= 1e-12);

    // zero data gives exactly zero
    BoundaryData zero = boundary_data_from(mesh, [](std::span<const double>) {
        return Multivector(2);
    });
    CHECK(cauchy_integral(zero, cfg, center).norm() == 0.0);

    // outside evaluation is rejected
    std::vector<double> outside{1.5, 0.0};
    CHECK_THROWS_AS(cauchy_integral(bd, cfg, outside), std::invalid_argument);
}

TEST_CASE("cauchy integral converges under mesh doubling") {
    Domain disk = Domain::ball({0.0, 0.0}, 1.0);
    DiracConfig cfg = plain_cfg(2);
    // gamma-regular reference centered outside the disk
    std::vector<double> x0{1.6, 0.4};
    auto ref = [&](std::span<const double> x) {
        std::vector<double> z{x[0] - x0[0], x[1] - x0[1]};
        return cauchy_kernel(z, cfg);
    };
    std::vector<double> probe{0.3, -0.2};
    const Multivector want = ref(probe);
    double prev = -1.0;
    for (int m : {64, 128, 256, 512}) {
        BoundaryData bd = boundary_data_from(boundary_mesh(disk, m), ref);
        const double err = (cauchy_integral(bd, cfg, probe) - want).norm();
        // ratio check only above the round-off floor (smooth periodic
        // integrands converge spectrally and bottom out early)
        if (prev > 1e-13) CHECK(err <= prev / 1.8);
        prev = err;
    }
    CHECK(prev <= 1e-6);
}

TEST_CASE("teodorescu of the unit disk constant matches -x/2") {
    // T(e_0)(x) = -x/2 on the unit disk at gamma = 0 (closed form)
    Domain disk = Domain::ball({0.0, 0.0}, 1.0);
    DiracConfig cfg = plain_cfg(2);
    Grid g = box_grid(2, 1.0, 65);
    CliffordField one(g, 2);
    one.inside() = inside_mask(g, disk);
    auto& plane = one.component(0);
    for (size_t i = 0; i < g.size(); ++i) plane[i] = 1.0;

    for (auto probe : {std::vector<double>{0.31, 0.17}, std::vector<double>{-0.52, 0.11}}) {
        Multivector got = teodorescu(one, cfg, probe);
        CHECK(got[0b01] == doctest::Approx(-probe[0] / 2.0).epsilon(0.03));
        CHECK(got[0b10] == doctest::Approx(-probe[1] / 2.0).epsilon(0.03));
        CHECK(std::abs(got[0]) <= 2e-2);
    }

    // zero data gives exactly zero
    CliffordField zero(g, 2);
    zero.inside() = inside_mask(g, disk);
    std::vector<double> probe{0.2, 0.1};
    CHECK(teodorescu(zero, cfg, probe).norm() == 0.0);

    std::vector<double> outside{1.4, 0.0};
    CHECK_THROWS_AS(teodorescu(one, cfg, outside), std::invalid_argument);
}

TEST_CASE("teodorescu scales linearly with the ball radius") {
    DiracConfig cfg = plain_cfg(2);
    double prev_sup = 0.0;
    for (double lambda : {0.5, 1.0, 2.0}) {
        Domain ball = Domain::ball({0.0, 0.0}, lambda);
        Grid g = box_grid(2, lambda, 49);
        CliffordField one(g, 2);
        one.inside() = inside_mask(g, ball);
        auto& plane = one.component(0);
        for (size_t i = 0; i < g.size(); ++i) plane[i] = 1.0;
        auto targets = inside_mask(g, ball, 2.0 * g.max_spacing());
        CliffordField t = teodorescu_field(one, cfg, &targets);
        double sup = 0.0;
        for (size_t i = 0; i < g.size(); ++i)
            if (targets[i]) sup = std::max(sup, t.value_norm(i));
        if (prev_sup > 0.0) CHECK(sup == doctest::Approx(2.0 * prev_sup).epsilon(0.05));
        prev_sup = sup;
    }
}

TEST_CASE("teodorescu is a discrete right inverse of D_gamma") {
    DiracConfig cfg = plain_cfg(2);
    Domain disk = Domain::ball({0.0, 0.0}, 1.0);
    double prev = -1.0;
    for (int res : {49, 97}) {
        Grid g = box_grid(2, 1.0, res);
        CliffordField one(g, 2);
        one.inside() = inside_mask(g, disk);
        auto& plane = one.component(0);
        for (size_t i = 0; i < g.size(); ++i) plane[i] = 1.0;
        CliffordField t = teodorescu_field(one, cfg);
        // D T(e_0) should equal e_0 on a fixed interior core
        CliffordField dt = apply_dirac(t, cfg);
        auto core = inside_mask(g, disk, 0.15);
        double sup = 0.0;
        for (size_t i = 0; i < g.size(); ++i) {
            if (!core[i] || !dt.inside()[i]) continue;
            Multivector r = dt.value(i) - Multivector::scalar(2, 1.0);
            sup = std::max(sup, r.norm());
        }
        if (prev > 0.0) CHECK(sup <= prev / 1.7);
        prev = sup;
    }
    CHECK(prev <= 0.05);
}

TEST_CASE("borel-pompeiu residual: constant and gamma-regular reference") {
    DiracConfig cfg = plain_cfg(2);
    Grid g = box_grid(2, 1.0, 65);
    const double h = g.max_spacing();
    Domain inner_disk = Domain::ball({0.0, 0.0}, 1.0 - 2.0 * h);
    BoundaryMesh mesh = boundary_mesh(inner_disk, 256);

    SUBCASE("constant field") {
        CliffordField f = sample_everywhere(g, [](std::span<const double>) {
            return Multivector::scalar(2, 1.0);
        });
        ScalarField r = borel_pompeiu_residual(f, cfg, mesh);
        double sup = 0.0;
        size_t cnt = 0;
        for (size_t i = 0; i < g.size(); ++i)
            if (r.mask[i]) {
                sup = std::max(sup, r.data[i]);
                ++cnt;
            }
        CHECK(cnt > 100);
        CHECK(sup <= 1e-2);
    }

    SUBCASE("gamma-regular reference with vanishing volume term") {
        std::vector<double> x0{1.7, -0.3};
        CliffordField f = sample_everywhere(g, [&](std::span<const double> x) {
            std::vector<double> z{x[0] - x0[0], x[1] - x0[1]};
            return cauchy_kernel(z, cfg);
        });
        ScalarField r = borel_pompeiu_residual(f, cfg, mesh);
        double sup = 0.0;
        for (size_t i = 0; i < g.size(); ++i)
            if (r.mask[i]) sup = std::max(sup, r.data[i]);
        CHECK(sup <= 2e-2);
    }
}

TEST_CASE("borel-pompeiu residual halves under joint refinement") {
    DiracConfig cfg = plain_cfg(2);
    auto run = [&](int res, int m) {
        Grid g = box_grid(2, 1.0, res);
        const double h = g.max_spacing();
        Domain inner = Domain::ball({0.0, 0.0}, 1.0 - 2.0 * h);
        BoundaryMesh mesh = boundary_mesh(inner, m);
        CliffordField f = sample_everywhere(g, [](std::span<const double> x) {
            Multivector v(2);
            v[0] = x[0];
            v[0b11] = std::cos(x[1]);
            return v;
        });
        ScalarField r = borel_pompeiu_residual(f, cfg, mesh);
        double sup = 0.0;
        for (size_t i = 0; i < g.size(); ++i)
            if (r.mask[i]) sup = std::max(sup, r.data[i]);
        return sup;
    };
    const double coarse = run(49, 192);
    const double fine = run(97, 384);
    CHECK(fine <= coarse / 1.6);
}

TEST_CASE("solve_bvp reproduces constants and gamma-regular references") {
    DiracConfig cfg = plain_cfg(2);
    Domain disk = Domain::ball({0.0, 0.0}, 1.0);
    Grid g = box_grid(2, 1.0, 65);
    BoundaryMesh mesh = boundary_mesh(disk, 256);

    SUBCASE("constants") {
        BoundaryData bd = boundary_data_from(mesh, [](std::span<const double>) {
            return Multivector::scalar(2, 1.0);
        });
        auto [sol, rep] = solve_bvp(bd, cfg, g);
        double sup = 0.0;
        for (size_t i = 0; i < g.size(); ++i) {
            if (!sol.inside()[i]) continue;
            sup = std::max(sup, (sol.value(i) - Multivector::scalar(2, 1.0)).norm());
        }
        CHECK(sup <= 1e-2);
        CHECK(rep.nodes_evaluated > 0);
        CHECK(rep.max_dirac_residual <= 0.2);
    }

    SUBCASE("gamma-regular reference recovered in the interior") {
        std::vector<double> x0{1.6, 0.4};
        auto ref = [&](std::span<const double> x) {
            std::vector<double> z{x[0] - x0[0], x[1] - x0[1]};
            return cauchy_kernel(z, cfg);
        };
        BoundaryData bd = boundary_data_from(mesh, ref);
        auto [sol, rep] = solve_bvp(bd, cfg, g);
        double sup = 0.0;
        std::vector<double> x(2);
        for (size_t i = 0; i < g.size(); ++i) {
            if (!sol.inside()[i]) continue;
            g.node(i, x);
            sup = std::max(sup, (sol.value(i) - ref(x)).norm());
        }
        CHECK(sup <= 1e-3);
    }
}

TEST_CASE("solver dirac residual drops under refinement") {
    DiracConfig cfg = plain_cfg(2);
    Domain disk = Domain::ball({0.0, 0.0}, 1.0);
    double prev = -1.0;
    for (int res : {33, 65}) {
        Grid g = box_grid(2, 1.0, res);
        BoundaryMesh mesh = boundary_mesh(disk, 4 * (res - 1));
        BoundaryData bd = boundary_data_from(mesh, [](std::span<const double> y) {
            Multivector v(2);
            v[0] = y[0];
            v[0b01] = 0.3;
            return v;
        });
        auto [sol, rep] = solve_bvp(bd, cfg, g);
        if (prev > 0.0) CHECK(rep.interior_max_residual <= prev / 1.8);
        prev = rep.interior_max_residual;
    }
}

TEST_CASE("solve_nhbvp with zero volume term is bit-identical to solve_bvp") {
    DiracConfig cfg = plain_cfg(2);
    Domain disk = Domain::ball({0.0, 0.0}, 1.0);
    Grid g = box_grid(2, 1.0, 49);
    BoundaryMesh mesh = boundary_mesh(disk, 128);
    BoundaryData bd = boundary_data_from(mesh, [](std::span<const double> y) {
        Multivector v(2);
        v[0] = std::cos(y[0]);
        return v;
    });
    CliffordField zero_rhs(g, 2);
    zero_rhs.inside() = inside_mask(g, disk);
    auto [a, ra] = solve_bvp(bd, cfg, g);
    auto [b, rb] = solve_nhbvp(zero_rhs, bd, cfg, g);
    for (size_t m = 0; m < a.component_count(); ++m) {
        CHECK(a.component_active(m) == b.component_active(m));
        if (!a.component_active(m)) continue;
        for (size_t i = 0; i < g.size(); ++i) CHECK(a.component(m)[i] == b.component(m)[i]);
    }
}

TEST_CASE("solve_nhbvp: volume term drives D f to the right-hand side") {
    DiracConfig cfg = plain_cfg(2);
    Domain disk = Domain::ball({0.0, 0.0}, 1.0);
    double prev = -1.0;
    for (int res : {49, 97}) {
        Grid g = box_grid(2, 1.0, res);
        BoundaryMesh mesh = boundary_mesh(disk, 4 * (res - 1));
        BoundaryData zero_tr = boundary_data_from(mesh, [](std::span<const double>) {
            return Multivector(2);
        });
        CliffordField rhs(g, 2);
        rhs.inside() = inside_mask(g, disk);
        auto& plane = rhs.component(0);
        for (size_t i = 0; i < g.size(); ++i) plane[i] = 1.0;
        auto [sol, rep] = solve_nhbvp(rhs, zero_tr, cfg, g);
        if (prev > 0.0) CHECK(rep.interior_max_residual <= prev / 1.7);
        prev = rep.interior_max_residual;
    }
    CHECK(prev <= 0.05);
}

TEST_CASE("manufactured solution: exp(Gamma) e_0 via its trace") {
    GradientPotential pot({0.3, -0.2});
    DiracConfig cfg = make_config(2, pot, +1, 2.0 * kPi);
    Domain disk = Domain::ball({0.0, 0.0}, 1.0);
    Grid g = box_grid(2, 1.0, 65);
    BoundaryMesh mesh = boundary_mesh(disk, 512);
    auto exact = [&](std::span<const double> x) {
        return Multivector::scalar(2, std::exp(pot.value(x)));
    };
    BoundaryData bd = boundary_data_from(mesh, exact);
    CliffordField zero_rhs(g, 2);  // D_gamma exp(Gamma) e_0 = 0
    zero_rhs.inside() = inside_mask(g, disk);
    auto [sol, rep] = solve_nhbvp(zero_rhs, bd, cfg, g);
    double worst_rel = 0.0;
    std::vector<double> x(2);
    for (size_t i = 0; i < g.size(); ++i) {
        if (!sol.inside()[i]) continue;
        g.node(i, x);
        const Multivector want = exact(x);
        worst_rel = std::max(worst_rel, (sol.value(i) - want).norm() / want.norm());
    }
    CHECK(worst_rel <= 0.02);
}

TEST_CASE("integral operators are linear in their data") {
    DiracConfig cfg = plain_cfg(2);
    Domain disk = Domain::ball({0.0, 0.0}, 1.0);
    BoundaryMesh mesh = boundary_mesh(disk, 64);
    auto f1 = [](std::span<const double> y) {
        Multivector v(2);
        v[0] = y[0];
        v[0b10] = 1.0;
        return v;
    };
    auto f2 = [](std::span<const double> y) {
        Multivector v(2);
        v[0b01] = std::sin(y[1]);
        return v;
    };
    BoundaryData b1 = boundary_data_from(mesh, f1);
    BoundaryData b2 = boundary_data_from(mesh, f2);
    BoundaryData combo = boundary_data_from(mesh, [&](std::span<const double> y) {
        return f1(y) * 2.0 + f2(y) * (-3.0);
    });
    std::vector<double> probe{0.25, -0.4};
    Multivector lhs = cauchy_integral(combo, cfg, probe);
    Multivector rhs = cauchy_integral(b1, cfg, probe) * 2.0 + cauchy_integral(b2, cfg, probe) * (-3.0);
    CHECK((lhs - rhs).norm() <= 1e-12);
}

TEST_CASE("n=3: calibration, constant reproduction and right inverse") {
    DiracConfig cfg = calibrate_kernel(3, GradientPotential({0.0, 0.0, 0.0}), 0, 512);
    CHECK(cfg.omega == doctest::Approx(4.0 * kPi).epsilon(1e-12));

    Domain ball = Domain::ball({0.0, 0.0, 0.0}, 1.0);
    BoundaryMesh mesh = boundary_mesh(ball, 1024);
    BoundaryData bd = boundary_data_from(mesh, [](std::span<const double>) {
        return Multivector::scalar(3, 1.0);
    });
    std::vector<double> probe{0.21, -0.13, 0.08};
    Multivector rec = cauchy_integral(bd, cfg, probe);
    CHECK((rec - Multivector::scalar(3, 1.0)).norm() <= 2e-2);

    Grid g = box_grid(3, 1.0, 25);
    CliffordField one(g, 3);
    one.inside() = inside_mask(g, ball);
    auto& plane = one.component(0);
    for (size_t i = 0; i < g.size(); ++i) plane[i] = 1.0;
    CliffordField t = teodorescu_field(one, cfg);
    CliffordField dt = apply_dirac(t, cfg);
    auto core = inside_mask(g, ball, 0.3);
    double sup = 0.0;
    for (size_t i = 0; i < g.size(); ++i) {
        if (!core[i] || !dt.inside()[i]) continue;
        sup = std::max(sup, (dt.value(i) - Multivector::scalar(3, 1.0)).norm());
    }
    CHECK(sup <= 0.15);
}
