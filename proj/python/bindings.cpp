// Python bindings for the main operations: algebra, fields, regularization,
// the layered smooth approximation, the integral-operator solvers and norms.

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cliffmoll/alexander.hpp"
#include "cliffmoll/field_io.hpp"
#include "cliffmoll/integral_ops.hpp"
#include "cliffmoll/layers.hpp"
#include "cliffmoll/mollifier.hpp"
#include "cliffmoll/norms.hpp"

namespace py = pybind11;
using namespace cliffmoll;

namespace {

std::vector<double> to_vec(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    std::vector<double> v(static_cast<size_t>(a.size()));
    std::memcpy(v.data(), a.data(), v.size() * sizeof(double));
    return v;
}

py::array_t<double> plane_array(const CliffordField& f, size_t mask) {
    const auto& p = f.component(mask);
    py::array_t<double> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(f.grid().size())});
    double* dst = out.mutable_data();
    if (p.empty())
        std::fill(dst, dst + f.grid().size(), 0.0);
    else
        std::memcpy(dst, p.data(), p.size() * sizeof(double));
    return out;
}

Multivector mv_from_coeffs(int n, const std::vector<double>& coeffs) {
    return Multivector(n, coeffs);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Clifford-algebra mollifier toolkit";

    py::class_<Multivector>(m, "Multivector")
        .def(py::init(&mv_from_coeffs), py::arg("n"), py::arg("coeffs"))
        .def_static("scalar", &Multivector::scalar, py::arg("n"), py::arg("value"))
        .def_static("basis", &Multivector::basis, py::arg("n"), py::arg("mask"),
                    py::arg("value") = 1.0)
        .def_property_readonly("n", &Multivector::dim)
        .def_property_readonly("coeffs", [](const Multivector& v) { return v.coeffs(); })
        .def("norm", &Multivector::norm)
        .def("scalar_part", &Multivector::scalar_part)
        .def("conj", [](const Multivector& v) { return mv_conj(v); })
        .def("__getitem__", [](const Multivector& v, size_t i) {
            if (i >= v.size()) throw py::index_error();
            return v[i];
        })
        .def("__add__", [](const Multivector& a, const Multivector& b) { return a + b; })
        .def("__sub__", [](const Multivector& a, const Multivector& b) { return a - b; })
        .def("__neg__", [](const Multivector& a) { return -a; })
        .def("__mul__", [](const Multivector& a, const Multivector& b) { return mv_mul(a, b); })
        .def("__mul__", [](const Multivector& a, double s) { return a * s; })
        .def("__rmul__", [](const Multivector& a, double s) { return a * s; })
        .def("__repr__", [](const Multivector& v) {
            std::string s = "Multivector(n=" + std::to_string(v.dim()) + ", [";
            for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
            return s + "])";
        });

    m.def("blade_product", [](unsigned a, unsigned b) {
        const auto r = blade_product(a, b);
        return py::make_tuple(r.sign, r.mask);
    });
    m.def("vector_embed",
          [](const std::vector<double>& x) { return vector_embed(std::span<const double>(x)); });
    m.def("kernel_constant", &kernel_constant, py::arg("n"));
    m.def("bump_cdf", &bump_cdf, py::arg("t"));
    m.def("unit_sphere_area", &unit_sphere_area, py::arg("n"));
    m.def("unit_ball_volume", &unit_ball_volume, py::arg("n"));

    py::class_<Grid>(m, "Grid")
        .def_readonly("n", &Grid::n)
        .def_readonly("dims", &Grid::dims)
        .def_readonly("origin", &Grid::origin)
        .def_readonly("spacing", &Grid::spacing)
        .def("size", &Grid::size)
        .def("node", [](const Grid& g, size_t i) { return g.node(i); });
    m.def(
        "build_grid",
        [](const std::vector<double>& lo, const std::vector<double>& hi, int res) {
            return build_grid(lo, hi, res);
        },
        py::arg("lo"), py::arg("hi"), py::arg("resolution"));

    py::class_<Domain>(m, "Domain")
        .def_static("ball", &Domain::ball, py::arg("center"), py::arg("radius"))
        .def_static("box", &Domain::box, py::arg("lo"), py::arg("hi"))
        .def("sdf", [](const Domain& d, const std::vector<double>& x) {
            return d.sdf(std::span<const double>(x));
        })
        .def("volume", &Domain::volume)
        .def("surface_measure", &Domain::surface_measure)
        .def("inradius", &Domain::inradius);

    py::class_<BoundaryMesh>(m, "BoundaryMesh")
        .def_property_readonly("element_count", &BoundaryMesh::element_count)
        .def("total_weight", &BoundaryMesh::total_weight)
        .def("element_diameter", &BoundaryMesh::element_diameter)
        .def("centroid", [](const BoundaryMesh& me, size_t e) {
            auto c = me.centroid(e);
            return std::vector<double>(c.begin(), c.end());
        })
        .def("normal", [](const BoundaryMesh& me, size_t e) {
            auto c = me.normal(e);
            return std::vector<double>(c.begin(), c.end());
        })
        .def("weight", [](const BoundaryMesh& me, size_t e) { return me.weights[e]; });
    m.def("boundary_mesh", &boundary_mesh, py::arg("domain"), py::arg("elements"));

    py::class_<CliffordField>(m, "CliffordField")
        .def(py::init<const Grid&, int>(), py::arg("grid"), py::arg("n"))
        .def_property_readonly("grid", &CliffordField::grid)
        .def_property_readonly("n", &CliffordField::algebra_dim)
        .def("component", &plane_array, py::arg("mask"))
        .def("set_component",
             [](CliffordField& f, size_t mask,
                py::array_t<double, py::array::c_style | py::array::forcecast> a) {
                 if (static_cast<size_t>(a.size()) != f.grid().size())
                     throw std::invalid_argument("component length must equal grid size");
                 f.component(mask) = to_vec(a);
             })
        .def("value", &CliffordField::value, py::arg("node"))
        .def("inside_count", &CliffordField::inside_count)
        .def("set_inside",
             [](CliffordField& f, py::array_t<uint8_t, py::array::c_style | py::array::forcecast> a) {
                 if (static_cast<size_t>(a.size()) != f.grid().size())
                     throw std::invalid_argument("mask length must equal grid size");
                 std::memcpy(f.inside().data(), a.data(), f.grid().size());
             })
        .def("inside", [](const CliffordField& f) {
            py::array_t<uint8_t> out(
                std::vector<py::ssize_t>{static_cast<py::ssize_t>(f.grid().size())});
            std::memcpy(out.mutable_data(), f.inside().data(), f.grid().size());
            return out;
        });

    m.def(
        "sample_field",
        [](const std::function<Multivector(std::vector<double>)>& fn, const Grid& g,
           const Domain& d) {
            return sample_field(
                [&](std::span<const double> x) {
                    return fn(std::vector<double>(x.begin(), x.end()));
                },
                g, d);
        },
        py::arg("fn"), py::arg("grid"), py::arg("domain"));
    m.def("write_field", &write_field, py::arg("field"), py::arg("path"));
    m.def("read_field", &read_field, py::arg("path"));

    m.def("mollify_clifford", &mollify_clifford, py::arg("field"), py::arg("domain"),
          py::arg("eps"));

    py::class_<LayerLedgerRow>(m, "LayerLedgerRow")
        .def_readonly("layer", &LayerLedgerRow::layer)
        .def_readonly("eps", &LayerLedgerRow::eps)
        .def_readonly("budget", &LayerLedgerRow::budget)
        .def_readonly("attained", &LayerLedgerRow::attained)
        .def_readonly("met", &LayerLedgerRow::met)
        .def_readonly("contained", &LayerLedgerRow::contained);
    py::class_<SmoothApproxResult>(m, "SmoothApproxResult")
        .def_readonly("success", &SmoothApproxResult::success)
        .def_readonly("achieved", &SmoothApproxResult::achieved)
        .def_readonly("beta", &SmoothApproxResult::beta)
        .def_readonly("m", &SmoothApproxResult::m)
        .def_readonly("per_layer", &SmoothApproxResult::per_layer)
        .def_readonly("covered_count", &SmoothApproxResult::covered_count)
        .def_readonly("uncovered_count", &SmoothApproxResult::uncovered_count)
        .def_readonly("psi", &SmoothApproxResult::psi);
    m.def(
        "global_smooth_approx",
        [](const CliffordField& f, const Domain& d, double beta, double p, int k, int m) {
            SmoothApproxOptions opts;
            opts.m = m;
            return global_smooth_approx(f, d, beta, NormSpec(p, k), opts);
        },
        py::arg("field"), py::arg("domain"), py::arg("beta"), py::arg("p") = 2.0, py::arg("k") = 1,
        py::arg("m") = 0);

    py::class_<GradientPotential>(m, "GradientPotential")
        .def(py::init<std::vector<double>>(), py::arg("coefficients"))
        .def_readonly("c", &GradientPotential::c);
    py::class_<CalibrationRow>(m, "CalibrationRow")
        .def_readonly("kernel_sign", &CalibrationRow::kernel_sign)
        .def_readonly("omega", &CalibrationRow::omega)
        .def_readonly("dirac_residual", &CalibrationRow::dirac_residual)
        .def_readonly("bp_residual", &CalibrationRow::bp_residual);
    py::class_<DiracConfig>(m, "DiracConfig")
        .def_readonly("n", &DiracConfig::n)
        .def_readonly("kernel_sign", &DiracConfig::kernel_sign)
        .def_readonly("omega", &DiracConfig::omega)
        .def_readonly("calibration_table", &DiracConfig::calibration_table);
    m.def("make_config", &make_config, py::arg("n"), py::arg("potential"), py::arg("kernel_sign"),
          py::arg("omega"));
    m.def("calibrate_kernel", &calibrate_kernel, py::arg("n"), py::arg("potential"),
          py::arg("grid_res") = 48, py::arg("mesh_elements") = 256, py::arg("tolerance") = 5e-2);
    m.def(
        "cauchy_kernel",
        [](const std::vector<double>& x, const DiracConfig& cfg) {
            return cauchy_kernel(std::span<const double>(x), cfg);
        },
        py::arg("x"), py::arg("config"));
    m.def(
        "apply_dirac",
        [](const CliffordField& f, const DiracConfig& cfg, bool right) {
            return apply_dirac(f, cfg, right ? OperatorSide::Right : OperatorSide::Left);
        },
        py::arg("field"), py::arg("config"), py::arg("right") = false);

    py::class_<BoundaryData>(m, "BoundaryData");
    m.def(
        "boundary_data",
        [](const BoundaryMesh& mesh, const std::function<Multivector(std::vector<double>)>& fn) {
            return boundary_data_from(mesh, [&](std::span<const double> y) {
                return fn(std::vector<double>(y.begin(), y.end()));
            });
        },
        py::arg("mesh"), py::arg("fn"));
    m.def("trace_from_field", &trace_from_field, py::arg("field"), py::arg("mesh"));
    m.def(
        "cauchy_integral",
        [](const BoundaryData& bd, const DiracConfig& cfg, const std::vector<double>& x) {
            return cauchy_integral(bd, cfg, std::span<const double>(x));
        },
        py::arg("data"), py::arg("config"), py::arg("x"));
    m.def(
        "teodorescu",
        [](const CliffordField& h, const DiracConfig& cfg, const std::vector<double>& x) {
            return teodorescu(h, cfg, std::span<const double>(x));
        },
        py::arg("field"), py::arg("config"), py::arg("x"));

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("max_dirac_residual", &SolveReport::max_dirac_residual)
        .def_readonly("l2_dirac_residual", &SolveReport::l2_dirac_residual)
        .def_readonly("interior_max_residual", &SolveReport::interior_max_residual)
        .def_readonly("trace_discrepancy", &SolveReport::trace_discrepancy)
        .def_readonly("mesh_elements", &SolveReport::mesh_elements)
        .def_readonly("nodes_evaluated", &SolveReport::nodes_evaluated)
        .def_readonly("grid_h", &SolveReport::grid_h)
        .def_readonly("margin", &SolveReport::margin);
    m.def("solve_bvp", &solve_bvp, py::arg("data"), py::arg("config"), py::arg("grid"),
          py::arg("margin_factor") = 2.0);
    m.def("solve_nhbvp", &solve_nhbvp, py::arg("rhs"), py::arg("data"), py::arg("config"),
          py::arg("grid"), py::arg("margin_factor") = 2.0);

    m.def(
        "lp_norm",
        [](const CliffordField& f, double p) {
            return lp_norm(f, p, std::vector<uint8_t>(f.grid().size(), 1));
        },
        py::arg("field"), py::arg("p"));
    m.def(
        "sobolev_norm",
        [](const CliffordField& f, double p, int k,
           py::array_t<uint8_t, py::array::c_style | py::array::forcecast> region) {
            std::vector<uint8_t> r(static_cast<size_t>(region.size()));
            std::memcpy(r.data(), region.data(), r.size());
            return sobolev_norm(f, NormSpec(p, k), r);
        },
        py::arg("field"), py::arg("p"), py::arg("k"), py::arg("region"));
    m.def(
        "holder_seminorm",
        [](const CliffordField& f, double alpha, uint64_t seed) {
            return holder_seminorm(f, alpha, std::vector<uint8_t>(f.grid().size(), 1), seed);
        },
        py::arg("field"), py::arg("alpha"), py::arg("seed") = 0x5eed);
    m.def(
        "clifford_inner_product",
        [](const CliffordField& f, const CliffordField& g) {
            return clifford_inner_product(f, g, std::vector<uint8_t>(f.grid().size(), 1));
        },
        py::arg("f"), py::arg("g"));

    py::class_<AlexanderRow>(m, "AlexanderRow")
        .def_readonly("lam", &AlexanderRow::lambda)
        .def_readonly("mu", &AlexanderRow::mu)
        .def_readonly("U", &AlexanderRow::U)
        .def_readonly("ratio", &AlexanderRow::ratio);
    py::class_<AlexanderReport>(m, "AlexanderReport")
        .def_readonly("rows", &AlexanderReport::rows)
        .def_readonly("slope", &AlexanderReport::slope)
        .def_readonly("rhs_sup", &AlexanderReport::rhs_sup);
    m.def(
        "alexander_check",
        [](const std::function<Multivector(std::vector<double>)>& rhs,
           const std::vector<double>& radii, const DiracConfig& cfg, int res) {
            return alexander_check(
                [&](std::span<const double> x) {
                    return rhs(std::vector<double>(x.begin(), x.end()));
                },
                radii, cfg, res);
        },
        py::arg("rhs"), py::arg("radii"), py::arg("config"), py::arg("resolution") = 64);
}
