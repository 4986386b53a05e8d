#include "cliffmoll/layers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cliffmoll/mollifier.hpp"

namespace cliffmoll {

namespace {

double band_width(int i) { return 1.0 / (i + 1) - 1.0 / (i + 3); }

}  // namespace

DepthBand layer_band(int i) {
    if (i == 0) return DepthBand{1.0 / 3.0, std::numeric_limits<double>::infinity()};
    return DepthBand{1.0 / (i + 3), 1.0 / (i + 1)};
}

int auto_truncation(const Grid& g) {
    // deepest layer whose band width and partition transitions the grid can
    // resolve: 0.25 * width(m) >= 2h (stricter than the bare width >= 2h rule)
    const double h = g.max_spacing();
    int m = 1;
    while (0.25 * band_width(m + 1) >= 2.0 * h && m < 1000) ++m;
    return m;
}

LayerDecomposition layer_decomposition(const Domain& d, const Grid& g, int m) {
    if (m < 1) throw std::invalid_argument("layer_decomposition: m must be >= 1");
    const double h = g.max_spacing();
    for (int i = 1; i <= m; ++i) {
        if (band_width(i) < 2.0 * h)
            throw std::runtime_error("layer_decomposition: under-resolved layer " + std::to_string(i) +
                                     " (width " + std::to_string(band_width(i)) + " < 2h)");
    }

    LayerDecomposition ld;
    ld.grid = g;
    ld.domain = d;
    ld.m = m;
    ld.bands.resize(static_cast<size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) ld.bands[static_cast<size_t>(i)] = layer_band(i);

    ld.depth.resize(g.size());
    ld.inside.resize(g.size());
    ld.covered.resize(g.size());
    ld.complete.resize(g.size());
    const double cover_depth = 1.0 / (m + 3);
    const double complete_depth = 1.0 / (m + 2);
    std::vector<double> x(static_cast<size_t>(g.n));
    for (size_t idx = 0; idx < g.size(); ++idx) {
        g.node(idx, x);
        const double depth = -d.sdf(x);
        ld.depth[idx] = depth;
        ld.inside[idx] = depth > 0.0 ? 1 : 0;
        ld.covered[idx] = 0;
        ld.complete[idx] = 0;
        if (!ld.inside[idx]) continue;
        int hits = 0;
        for (int i = 0; i <= m; ++i)
            if (ld.in_band(i, depth)) ++hits;
        if (depth > cover_depth) {
            if (hits < 1)
                throw std::runtime_error("layer_decomposition: coverage gap at node " +
                                         std::to_string(idx));
            ld.covered[idx] = 1;
            ++ld.covered_count;
        } else {
            ++ld.uncovered_count;
        }
        if (depth > complete_depth) ld.complete[idx] = 1;
        if (hits > 3)
            throw std::runtime_error("layer_decomposition: node in more than three layers");
        ld.max_overlap = std::max(ld.max_overlap, hits);
    }
    if (ld.covered_count == 0) throw std::runtime_error("layer_decomposition: empty covered region");
    return ld;
}

double PartitionOfUnity::delta(int layer) const {
    // as wide as the band allows: the shrunk indicator (lo+delta, hi-delta)
    // must stay nonempty, so delta < width/2; the seed is only edge-limited
    // by its overlap with band 1
    if (layer == 0) return 0.8 * (layer_band(1).hi - layer_band(0).lo);  // 0.8 / 6
    const DepthBand b = layer_band(layer);
    return 0.25 * (b.hi - b.lo);
}

double PartitionOfUnity::unnormalized(int layer, double depth) const {
    const DepthBand b = layer_band(layer);
    const double dl = delta(layer);
    const double lo_term = bump_cdf((depth - (b.lo + dl)) / dl);
    if (std::isinf(b.hi)) return lo_term;
    return lo_term - bump_cdf((depth - (b.hi - dl)) / dl);
}

double PartitionOfUnity::sum_unnormalized(double depth) const {
    if (!(depth > 0.0)) return 0.0;
    double s = 0.0;
    if (depth > layer_band(0).lo) s += unnormalized(0, depth);
    // band i covers depth iff 1/depth - 3 < i < 1/depth - 1
    const double inv = 1.0 / depth;
    const int lo = std::max(1, static_cast<int>(std::floor(inv - 3.0)) );
    const int hi = static_cast<int>(std::ceil(inv - 1.0));
    for (int i = lo; i <= hi; ++i) {
        const DepthBand b = layer_band(i);
        if (depth > b.lo && depth < b.hi) s += unnormalized(i, depth);
    }
    return s;
}

double PartitionOfUnity::theta(int layer, double depth) const {
    const DepthBand b = layer_band(layer);
    if (!(depth > b.lo && depth < b.hi)) return 0.0;
    const double p = unnormalized(layer, depth);
    if (p <= 0.0) return 0.0;
    return p / sum_unnormalized(depth);
}

ScalarField materialize_theta(const LayerDecomposition& ld, const PartitionOfUnity& pou, int layer) {
    ScalarField out;
    out.grid = ld.grid;
    out.data.assign(ld.grid.size(), 0.0);
    out.mask.assign(ld.grid.size(), 1);
    for (size_t i = 0; i < ld.grid.size(); ++i)
        if (ld.inside[i]) out.data[i] = pou.theta(layer, ld.depth[i]);
    return out;
}

namespace {

struct SubBox {
    std::vector<int> lo, hi;  // inclusive index bounds per axis

    bool empty() const { return lo.empty(); }
    Grid subgrid(const Grid& g) const {
        Grid s;
        s.n = g.n;
        s.dims.resize(static_cast<size_t>(g.n));
        s.origin.resize(static_cast<size_t>(g.n));
        s.spacing = g.spacing;
        for (int a = 0; a < g.n; ++a) {
            s.dims[a] = hi[a] - lo[a] + 1;
            s.origin[a] = g.origin[a] + lo[a] * g.spacing[a];
        }
        return s;
    }
};

SubBox band_box(const LayerDecomposition& ld, int layer, int pad_cells) {
    const Grid& g = ld.grid;
    SubBox box;
    box.lo.assign(static_cast<size_t>(g.n), std::numeric_limits<int>::max());
    box.hi.assign(static_cast<size_t>(g.n), std::numeric_limits<int>::min());
    std::vector<int> idx(static_cast<size_t>(g.n));
    bool any = false;
    for (size_t i = 0; i < g.size(); ++i) {
        if (!ld.inside[i] || !ld.in_band(layer, ld.depth[i])) continue;
        any = true;
        g.decode(i, idx);
        for (int a = 0; a < g.n; ++a) {
            box.lo[a] = std::min(box.lo[a], idx[a]);
            box.hi[a] = std::max(box.hi[a], idx[a]);
        }
    }
    if (!any) return SubBox{};
    for (int a = 0; a < g.n; ++a) {
        box.lo[a] = std::max(0, box.lo[a] - pad_cells);
        box.hi[a] = std::min(g.dims[a] - 1, box.hi[a] + pad_cells);
    }
    return box;
}

std::vector<uint8_t> margin_mask(const Grid& g, int margin) {
    std::vector<uint8_t> m(g.size(), 0);
    std::vector<int> idx(static_cast<size_t>(g.n));
    for (size_t i = 0; i < g.size(); ++i) {
        g.decode(i, idx);
        m[i] = g.has_margin(idx, margin) ? 1 : 0;
    }
    return m;
}

void add_into(const Grid& g, const SubBox& box, const std::vector<double>& sub,
              std::vector<double>& plane) {
    const Grid s = box.subgrid(g);
    std::vector<int> sidx(static_cast<size_t>(g.n)), gidx(static_cast<size_t>(g.n));
    for (size_t i = 0; i < s.size(); ++i) {
        if (sub[i] == 0.0) continue;
        s.decode(i, sidx);
        for (int a = 0; a < g.n; ++a) gidx[a] = sidx[a] + box.lo[a];
        plane[g.encode(gidx)] += sub[i];
    }
}

// all nodes within Chebyshev distance k carry f data
bool data_margin_ok(const Grid& g, const std::vector<uint8_t>& data_mask,
                    std::span<const int> idx, int k) {
    std::vector<int> off(static_cast<size_t>(g.n), -k);
    std::vector<int> jdx(static_cast<size_t>(g.n));
    while (true) {
        for (int a = 0; a < g.n; ++a) jdx[a] = idx[a] + off[a];
        if (!data_mask[g.encode(jdx)]) return false;
        int a = g.n - 1;
        while (true) {
            if (a < 0) return true;
            if (++off[a] <= k) break;
            off[a] = -k;
            --a;
        }
    }
}

}  // namespace

namespace {

struct LayerOutcome {
    LayerLedgerRow row;
    SubBox box;
    std::vector<std::vector<double>> pieces;  // chosen mollified planes, per component
};

LayerOutcome process_layer(const CliffordField& f, const LayerDecomposition& ld,
                           const PartitionOfUnity& pou, const std::vector<size_t>& active,
                           int layer, double budget, const NormSpec& spec, double eps_start_cells) {
    const Grid& g = f.grid();
    const double h = g.max_spacing();
    const double eps_floor = 4.0 * h;
    // mollification may fatten the band into V_i = (1/(i+4), 1/i) but no further
    const double gap =
        layer == 0 ? layer_band(0).lo : 1.0 / ((layer + 3.0) * (layer + 4.0));

    double eps_start = std::min(eps_start_cells * h, 0.9 * gap);
    if (eps_start < eps_floor) eps_start = eps_floor;
    std::vector<double> trials;
    for (double e = eps_start; e > eps_floor * (1.0 + 1e-12); e /= 2.0) trials.push_back(e);
    trials.push_back(eps_floor);

    LayerOutcome out;
    out.row.layer = layer;
    out.row.budget = budget;

    const int pad = static_cast<int>(std::ceil(eps_start / g.spacing[0])) + spec.k + 2;
    out.box = band_box(ld, layer, pad);
    if (out.box.empty()) {
        out.row.met = true;  // band holds no grid nodes
        return out;
    }
    const Grid sub = out.box.subgrid(g);
    const auto sub_region = margin_mask(sub, spec.k);

    // theta_layer * f_A on the subgrid
    std::vector<std::vector<double>> w(active.size());
    {
        std::vector<int> sidx(static_cast<size_t>(g.n)), gidx(static_cast<size_t>(g.n));
        for (size_t ci = 0; ci < active.size(); ++ci) w[ci].assign(sub.size(), 0.0);
        for (size_t i = 0; i < sub.size(); ++i) {
            sub.decode(i, sidx);
            for (int a = 0; a < g.n; ++a) gidx[a] = sidx[a] + out.box.lo[a];
            const size_t gi = g.encode(gidx);
            if (!ld.inside[gi] || !ld.in_band(layer, ld.depth[gi])) continue;
            if (!f.inside()[gi])
                throw std::runtime_error(
                    "global_smooth_approx: field value missing inside the domain");
            const double th = pou.theta(layer, ld.depth[gi]);
            if (th == 0.0) continue;
            for (size_t ci = 0; ci < active.size(); ++ci)
                w[ci][i] = th * f.component(active[ci])[gi];
        }
    }

    // evaluate the ladder from the cheap (small) end; keep the largest epsilon
    // meeting the budget
    double chosen_eps = -1.0, chosen_attained = 0.0, floor_attained = -1.0;
    std::vector<std::vector<double>> floor_pieces;
    for (size_t t = trials.size(); t-- > 0;) {
        const double eps = trials[t];
        const MollifierStencil st = build_stencil(sub, eps);
        std::vector<std::vector<double>> gi(active.size());
        double acc = 0.0, sup_acc = 0.0;
        for (size_t ci = 0; ci < active.size(); ++ci) {
            gi[ci] = convolve_plane(sub, w[ci], st);
            std::vector<double> diff(sub.size());
            for (size_t i = 0; i < sub.size(); ++i) diff[i] = gi[ci][i] - w[ci][i];
            const double err = sobolev_norm_plane(sub, diff, spec, sub_region);
            if (spec.is_sup())
                sup_acc = std::max(sup_acc, err);
            else
                acc += std::pow(err, spec.p);
        }
        const double attained = spec.is_sup() ? sup_acc : std::pow(acc, 1.0 / spec.p);
        if (floor_attained < 0.0) {
            floor_attained = attained;
            floor_pieces = gi;
        }
        if (attained <= budget) {
            chosen_eps = eps;
            chosen_attained = attained;
            out.pieces = std::move(gi);
        } else {
            break;  // larger eps only gets worse
        }
    }

    if (chosen_eps < 0.0) {
        // budget missed even at the resolution floor; report it and hand back
        // the floor pieces so the caller can still assemble a best effort
        out.row.eps = trials.back();
        out.row.attained = floor_attained;
        out.row.met = false;
        out.row.contained = trials.back() <= gap;
        out.pieces = std::move(floor_pieces);
        return out;
    }
    out.row.eps = chosen_eps;
    out.row.attained = chosen_attained;
    out.row.met = true;
    out.row.contained = chosen_eps <= gap;
    return out;
}

}  // namespace

SmoothApproxResult global_smooth_approx(const CliffordField& f, const Domain& domain, double beta,
                                        const NormSpec& spec, const SmoothApproxOptions& opts) {
    if (!(beta > 0.0)) throw std::invalid_argument("global_smooth_approx: beta must be positive");
    const Grid& g = f.grid();
    const bool auto_m = opts.m <= 0;
    const int m_request = auto_m ? auto_truncation(g) : opts.m;

    LayerDecomposition ld = layer_decomposition(domain, g, m_request);
    PartitionOfUnity pou;
    const auto active = f.active_components();

    SmoothApproxResult res;
    res.psi = CliffordField(g, f.algebra_dim());
    res.beta = beta;
    res.success = true;

    int m_final = m_request;
    for (int layer = 0; layer <= m_request; ++layer) {
        const double budget = beta / std::pow(2.0, layer + 1);
        LayerOutcome lo =
            process_layer(f, ld, pou, active, layer, budget, spec, opts.eps_start_cells);
        if (!lo.row.met && auto_m && layer >= 2) {
            // the grid cannot meet this depth's budget: truncate the stack
            res.truncation_layer = layer;
            res.truncation_attained = lo.row.attained;
            m_final = layer - 1;
            break;
        }
        if (!lo.row.met) res.success = false;  // mandatory layer missed: report, keep best effort
        res.per_layer.push_back(lo.row);
        for (size_t ci = 0; ci < active.size(); ++ci)
            if (!lo.pieces.empty())
                add_into(g, lo.box, lo.pieces[ci], res.psi.component(active[ci]));
    }
    res.m = m_final;
    res.psi.drop_zero_components();

    // region masks for the final truncation index
    const double cover_depth = 1.0 / (m_final + 3);
    const double complete_depth = 1.0 / (m_final + 2);
    auto& inside = res.psi.inside();
    size_t covered = 0, uncovered = 0;
    for (size_t i = 0; i < g.size(); ++i) {
        inside[i] = 0;
        if (!ld.inside[i]) continue;
        if (ld.depth[i] > cover_depth) {
            inside[i] = 1;
            ++covered;
        } else {
            ++uncovered;
        }
    }
    res.covered_count = covered;
    res.uncovered_count = uncovered;

    // achieved distance where the kept layers reconstruct f exactly and the
    // derivative stencils stay on defined data
    CliffordField diff(g, f.algebra_dim());
    for (size_t mc : active) {
        auto& dp = diff.component(mc);
        const auto& fp = f.component(mc);
        if (res.psi.component_active(mc)) {
            const auto& pp = res.psi.component(mc);
            for (size_t i = 0; i < g.size(); ++i) dp[i] = pp[i] - fp[i];
        } else {
            for (size_t i = 0; i < g.size(); ++i) dp[i] = -fp[i];
        }
    }
    for (size_t mc : res.psi.active_components())
        if (std::find(active.begin(), active.end(), mc) == active.end())
            diff.component(mc) = res.psi.component(mc);
    diff.drop_zero_components();

    std::vector<uint8_t> region(g.size(), 0);
    size_t region_count = 0;
    {
        std::vector<int> idx(static_cast<size_t>(g.n));
        for (size_t i = 0; i < g.size(); ++i) {
            if (!ld.inside[i] || !(ld.depth[i] > complete_depth)) continue;
            g.decode(i, idx);
            if (!g.has_margin(idx, spec.k)) continue;
            if (!data_margin_ok(g, f.inside(), idx, spec.k)) continue;
            region[i] = 1;
            ++region_count;
        }
    }
    if (region_count == 0)
        throw std::runtime_error("global_smooth_approx: no nodes left to measure the result on");
    res.achieved = sobolev_norm(diff, spec, region, &f.inside());
    return res;
}

}  // namespace cliffmoll
