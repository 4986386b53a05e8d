// alexander.hpp
// Distance-to-monogenic diagnostics over a ball sweep: U(lambda) =
// sup ||T(rhs)|| on ball(0, lambda) bounds the sup-distance from the solution
// to the D_gamma-null class, and scales like mu(ball)^{1/d} ||rhs||_inf.

#pragma once

#include <functional>
#include <vector>

#include "cliffmoll/dirac.hpp"
#include "cliffmoll/field.hpp"

namespace cliffmoll {

struct AlexanderRow {
    double lambda = 0.0;
    double mu = 0.0;      // ball volume
    double U = 0.0;       // sup ||T(rhs)|| over interior margin nodes
    double ratio = 0.0;   // U / (mu^{1/d} ||rhs||_inf)
};

struct AlexanderReport {
    std::vector<AlexanderRow> rows;
    double slope = 0.0;    // least-squares slope of log U vs log mu^{1/d}
    double rhs_sup = 0.0;
};

/// rhs evaluated on each ball's own grid (fixed resolution per radius, so the
/// relative margin is scale-invariant).
AlexanderReport alexander_check(const std::function<Multivector(std::span<const double>)>& rhs,
                                const std::vector<double>& radii, const DiracConfig& cfg,
                                int resolution = 64, int margin_cells = 2);

}  // namespace cliffmoll
