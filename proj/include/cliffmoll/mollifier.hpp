// mollifier.hpp
// The compactly supported bump phi(x) = k exp(1/(|x|^2 - 1)) on the open unit
// ball, its scaled family phi_eps, discrete convolution against grid fields,
// and finite-difference smoothness diagnostics.

#pragma once

#include <vector>

#include "cliffmoll/domain.hpp"
#include "cliffmoll/field.hpp"
#include "cliffmoll/grid.hpp"

namespace cliffmoll {

/// Unnormalized radial profile exp(1/(rho^2 - 1)) for rho < 1, zero otherwise.
inline double bump_profile(double rho) {
    const double r2 = rho * rho;
    if (r2 >= 1.0) return 0.0;
    return std::exp(1.0 / (r2 - 1.0));
}

/// Normalization constant k with integral of k exp(1/(|x|^2-1)) over R^n equal
/// to one; computed once per dimension by radial Gauss-Legendre quadrature to
/// relative accuracy better than 1e-10.
double kernel_constant(int n);

/// CDF of the normalized 1-D bump, Phi(t) = int_{-1}^{t} k_1 exp(1/(s^2-1)) ds.
/// Used for analytic mollified indicators; table-backed, error < 1e-10.
double bump_cdf(double t);

/// Sampled stencil of phi_eps on a grid: integer offsets with nonzero weight
/// and their renormalized weights (weights divided by their sum, so constants
/// are reproduced exactly). raw_mass records the plain quadrature mass
/// sum phi_eps(x_o) h^n before renormalization.
struct MollifierStencil {
    int n = 0;
    double eps = 0.0;
    double raw_mass = 0.0;
    std::vector<std::vector<int>> offsets;  // per entry: n integer steps
    std::vector<double> weights;            // renormalized, strictly positive
};

MollifierStencil build_stencil(const Grid& g, double eps);

struct MollifierKernel {
    int n = 0;
    double eps = 0.0;
    double k = 0.0;  // analytic normalization constant for this dimension
    MollifierStencil stencil;
};

MollifierKernel make_kernel(const Grid& g, double eps);

/// Plain discrete convolution of a zero-extended scalar plane with the
/// stencil, evaluated at every node. Nodes where the stencil would leave the
/// grid use the zero extension, which is exact for compactly supported data.
std::vector<double> convolve_plane(const Grid& g, const std::vector<double>& data,
                                   const MollifierStencil& st);

/// Regularization f^eps on Omega_eps. Requires eps >= 4 h (under-resolved
/// stencils are refused) and a nonempty Omega_eps on the grid; source values
/// are read only at nodes of Omega, which the shrunk membership guarantees.
ScalarField mollify_scalar(const ScalarField& f, const Domain& d, double eps);

/// Component-wise regularization of a Clifford field; output mask is Omega_eps.
CliffordField mollify_clifford(const CliffordField& f, const Domain& d, double eps);

/// Max magnitudes of central finite differences up to order 3 over a region,
/// plus the first-order difference-quotient bound. Orders whose stencils do
/// not fit inside the region's data are an error.
struct SmoothnessReport {
    double max_abs = 0.0;
    double max_d1 = 0.0;
    double max_d2 = 0.0;
    double max_d3 = 0.0;
    double lipschitz = 0.0;  // max |f(x+h e_j) - f(x)| / h over region edges
};

SmoothnessReport smoothness_report(const ScalarField& f);

}  // namespace cliffmoll
