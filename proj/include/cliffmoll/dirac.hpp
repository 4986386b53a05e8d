// dirac.hpp
// The first-order operator D_gamma = sum_j e_j (d/dx_j - gamma_j) with a
// constant gradient potential, its fundamental solution
// Psi(x) = conj(x) / (omega_n |x|^n) * exp(sign * Gamma(x)), and the
// empirical calibration that fixes omega_n and the exponent sign.

#pragma once

#include <string>
#include <vector>

#include "cliffmoll/field.hpp"
#include "cliffmoll/multivector.hpp"

namespace cliffmoll {

/// Surface area of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);
/// Volume of the unit ball in R^n: pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n);

struct CalibrationRow {
    int kernel_sign = 0;
    double omega = 0.0;
    double dirac_residual = 0.0;  // relative grid residual of D_gamma Psi
    double bp_residual = 0.0;     // constant-field reconstruction error
};

struct DiracConfig {
    int n = 0;
    GradientPotential potential;
    int kernel_sign = -1;   // exponent sign in exp(sign * Gamma)
    double omega = 0.0;     // kernel normalization constant
    double calib_dirac_residual = 0.0;
    double calib_bp_residual = 0.0;
    std::vector<CalibrationRow> calibration_table;

    double gamma(int j) const { return potential.c.empty() ? 0.0 : potential.c[static_cast<size_t>(j)]; }
};

/// Uncalibrated config with the given convention, for tests and plain use.
DiracConfig make_config(int n, GradientPotential potential, int kernel_sign, double omega);

enum class OperatorSide { Left, Right };

/// Central-difference D_gamma f (left: e_j multiplies from the left; right:
/// the mirrored operator f D_gamma). Valid where both axis neighbors carry
/// data; the output inside-mask records that region.
CliffordField apply_dirac(const CliffordField& f, const DiracConfig& cfg,
                          OperatorSide side = OperatorSide::Left);

/// Fundamental solution evaluated at x != 0.
Multivector cauchy_kernel(std::span<const double> x, const DiracConfig& cfg);

struct RegularityReport {
    double max_residual = 0.0;
    double l2_residual = 0.0;
    size_t nodes = 0;
};

/// Norms of D_gamma f over the region (restricted to where stencils fit).
RegularityReport check_regular(const CliffordField& f, const DiracConfig& cfg,
                               const std::vector<uint8_t>& region,
                               OperatorSide side = OperatorSide::Left);

struct CalibrationError : std::runtime_error {
    explicit CalibrationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Select kernel_sign in {+1,-1} and omega_n in {sphere area, ball volume} by
/// minimizing (a) the relative grid residual of D_gamma Psi away from the
/// singularity and (b) the constant-field reconstruction error of the
/// boundary integral. Ties on the sign (gamma = 0) report -1. All four
/// residual pairs are recorded; throws CalibrationError with the full table
/// if no combination reaches tolerance. grid_res = 0 picks a per-dimension
/// default fine enough for the kernel's curvature.
DiracConfig calibrate_kernel(int n, const GradientPotential& potential, int grid_res = 0,
                             int mesh_elements = 256, double tolerance = 5e-2);

}  // namespace cliffmoll
