// layers.hpp
// Depth-band decomposition of a domain, the subordinate partition of unity
// built from mollified band indicators, and the layered global smooth
// approximation: per layer i, mollify theta_i f with a width eps_i found by
// halving search so the W^{p,k} defect stays under beta / 2^{i+1}; the sum of
// the pieces then approximates f within beta where the kept layers carry the
// full weight.
//
// Bands by depth d = dist(x, boundary): seed (1/3, inf) and (1/(i+3), 1/(i+1))
// for i >= 1. The weights theta_i are normalized against the whole infinite
// stack (at most three bands cover any depth), so every theta_i is smooth;
// truncation at m only chooses which layers are mollified and summed. The
// partial sum equals f exactly on depth > 1/(m+2).

#pragma once

#include <limits>
#include <vector>

#include "cliffmoll/domain.hpp"
#include "cliffmoll/field.hpp"
#include "cliffmoll/norms.hpp"

namespace cliffmoll {

struct DepthBand {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
};

/// Band of layer i (0 = seed).
DepthBand layer_band(int i);

struct LayerDecomposition {
    Grid grid;
    Domain domain;
    int m = 0;                     // kept layers are 0..m
    std::vector<DepthBand> bands;  // the kept bands
    std::vector<double> depth;     // per node, -sdf
    std::vector<uint8_t> inside;   // depth > 0
    std::vector<uint8_t> covered;  // depth > 1/(m+3): touched by a kept layer
    std::vector<uint8_t> complete; // depth > 1/(m+2): kept layers sum to one
    size_t covered_count = 0;
    size_t uncovered_count = 0;    // inside nodes below the deepest kept band
    int max_overlap = 0;

    bool in_band(int layer, double d) const {
        const DepthBand& b = bands[static_cast<size_t>(layer)];
        return d > b.lo && d < b.hi;
    }
};

/// Largest truncation index whose band widths the grid resolves
/// (1/(i+1) - 1/(i+3) >= 2h for all i <= m), at least 1.
int auto_truncation(const Grid& g);

/// Verifies node-by-node that every inside node above the truncation depth
/// lies in at least one and at most three kept bands; refuses under-resolved
/// widths.
LayerDecomposition layer_decomposition(const Domain& d, const Grid& g, int m);

/// Smooth weights subordinate to the bands: each band is shrunk by delta_i
/// and its indicator mollified with the 1-D bump of width delta_i (evaluated
/// analytically through the kernel CDF), then normalized by the pointwise sum
/// over the full stack. supp theta_i is exactly the open band i.
struct PartitionOfUnity {
    double delta(int layer) const;
    double unnormalized(int layer, double depth) const;
    double sum_unnormalized(double depth) const;  // over all covering bands
    double theta(int layer, double depth) const;
};

/// theta_i sampled over the grid (zero outside band i).
ScalarField materialize_theta(const LayerDecomposition& ld, const PartitionOfUnity& pou, int layer);

struct LayerLedgerRow {
    int layer = 0;
    double eps = 0.0;
    double budget = 0.0;
    double attained = 0.0;
    bool met = false;
    bool contained = true;  // mollified support stayed inside V_i
};

struct SmoothApproxResult {
    CliffordField psi;      // defined on the covered region
    bool success = false;
    double achieved = 0.0;  // W^{p,k} distance to f where kept layers sum to 1
    double beta = 0.0;
    int m = 0;
    std::vector<LayerLedgerRow> per_layer;
    size_t covered_count = 0;
    size_t uncovered_count = 0;
    int truncation_layer = -1;        // auto mode: first layer whose budget the
    double truncation_attained = 0.0; // grid could not meet (dropped, not summed)
};

struct SmoothApproxOptions {
    int m = 0;                      // 0 = auto: deepen while budgets hold
    double eps_start_cells = 16.0;  // search upper bound in grid cells
};

/// The layered construction. Per layer the search halves eps from the upper
/// bound towards the 4h resolution floor. With an explicit m, a layer whose
/// floor still misses its budget makes the result report success = false with
/// that layer's attained error (remaining layers are still processed so the
/// ledger is complete). In auto mode the stack instead deepens until the
/// first layer beyond 1 whose budget the grid cannot meet, and truncates
/// there; layers 0 and 1 are always required.
SmoothApproxResult global_smooth_approx(const CliffordField& f, const Domain& domain, double beta,
                                        const NormSpec& spec, const SmoothApproxOptions& opts = {});

}  // namespace cliffmoll
