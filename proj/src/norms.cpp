#include "cliffmoll/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cliffmoll/rng.hpp"

namespace cliffmoll {

namespace {

void enumerate(int n, int remaining, int axis, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
    if (axis == n) {
        out.push_back(cur);
        return;
    }
    for (int j = 0; j <= remaining; ++j) {
        cur[static_cast<size_t>(axis)] = j;
        enumerate(n, remaining - j, axis + 1, cur, out);
    }
}

}  // namespace

std::vector<std::vector<int>> multi_indices_up_to(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<size_t>(n));
    for (int order = 0; order <= k; ++order) {
        std::vector<std::vector<int>> level;
        enumerate(n, order, 0, cur, level);
        for (auto& mi : level) {
            int s = 0;
            for (int v : mi) s += v;
            if (s == order) out.push_back(mi);
        }
    }
    return out;
}

ScalarField derivative_plane(const Grid& g, const std::vector<double>& data,
                             const std::vector<uint8_t>& data_mask, const std::vector<int>& j) {
    ScalarField cur;
    cur.grid = g;
    cur.data = data;
    cur.mask = data_mask;
    for (int a = 0; a < g.n; ++a) {
        for (int rep = 0; rep < j[static_cast<size_t>(a)]; ++rep) {
            ScalarField next;
            next.grid = g;
            next.data.assign(g.size(), 0.0);
            next.mask.assign(g.size(), 0);
            const size_t s = g.stride(a);
            const double inv2h = 1.0 / (2.0 * g.spacing[a]);
            std::vector<int> idx(static_cast<size_t>(g.n));
            for (size_t i = 0; i < g.size(); ++i) {
                if (!cur.mask[i]) continue;
                g.decode(i, idx);
                if (idx[a] < 1 || idx[a] >= g.dims[a] - 1) continue;
                if (!cur.mask[i - s] || !cur.mask[i + s]) continue;
                next.data[i] = (cur.data[i + s] - cur.data[i - s]) * inv2h;
                next.mask[i] = 1;
            }
            cur = std::move(next);
        }
    }
    return cur;
}

double lp_norm_plane(const Grid& g, const std::vector<double>& data, double p,
                     const std::vector<uint8_t>& region) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
    double acc = 0.0;
    size_t count = 0;
    const double vol = g.cell_volume();
    const bool sup = std::isinf(p);
    for (size_t i = 0; i < data.size(); ++i) {
        if (!region[i]) continue;
        ++count;
        const double a = std::abs(data[i]);
        if (sup)
            acc = std::max(acc, a);
        else
            acc += std::pow(a, p) * vol;
    }
    if (count == 0) throw std::invalid_argument("lp_norm: empty region");
    return sup ? acc : std::pow(acc, 1.0 / p);
}

double lp_norm(const CliffordField& f, double p, const std::vector<uint8_t>& region) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
    double acc = 0.0;
    size_t count = 0;
    const double vol = f.grid().cell_volume();
    const bool sup = std::isinf(p);
    const auto active = f.active_components();
    for (size_t i = 0; i < f.grid().size(); ++i) {
        if (!region[i]) continue;
        ++count;
        double s = 0.0;
        for (size_t m : active) {
            const double v = f.component(m)[i];
            s += v * v;
        }
        const double a = std::sqrt(s);
        if (sup)
            acc = std::max(acc, a);
        else
            acc += std::pow(a, p) * vol;
    }
    if (count == 0) throw std::invalid_argument("lp_norm: empty region");
    return sup ? acc : std::pow(acc, 1.0 / p);
}

namespace {

// Sobolev aggregation shared by the plane and field variants. Collect, per
// multi-index, the pointwise squared coefficient sums, then reduce.
double sobolev_reduce(const Grid& g, const std::vector<std::vector<const ScalarField*>>& per_index,
                      const NormSpec& spec, const std::vector<uint8_t>& region) {
    const double vol = g.cell_volume();
    double acc = 0.0;
    size_t count = 0;
    for (const auto& planes : per_index) {
        double term = 0.0;  // ||D^j f||_p^p or sup
        size_t used = 0;
        for (size_t i = 0; i < g.size(); ++i) {
            if (!region[i]) continue;
            double s = 0.0;
            for (const ScalarField* pl : planes) {
                if (!pl->mask[i])
                    throw std::runtime_error("sobolev_norm: stencil margin violation inside region");
                s += pl->data[i] * pl->data[i];
            }
            ++used;
            const double a = std::sqrt(s);
            if (spec.is_sup())
                term = std::max(term, a);
            else
                term += std::pow(a, spec.p) * vol;
        }
        if (used == 0) throw std::invalid_argument("sobolev_norm: empty region");
        count = used;
        if (spec.is_sup())
            acc = std::max(acc, term);
        else
            acc += term;
    }
    (void)count;
    return spec.is_sup() ? acc : std::pow(acc, 1.0 / spec.p);
}

}  // namespace

double sobolev_norm_plane(const Grid& g, const std::vector<double>& data, const NormSpec& spec,
                          const std::vector<uint8_t>& region,
                          const std::vector<uint8_t>* data_mask) {
    std::vector<uint8_t> full;
    if (!data_mask) {
        full.assign(g.size(), 1);
        data_mask = &full;
    }
    const auto mis = multi_indices_up_to(g.n, spec.k);
    std::vector<ScalarField> planes;
    planes.reserve(mis.size());
    for (const auto& j : mis) planes.push_back(derivative_plane(g, data, *data_mask, j));
    std::vector<std::vector<const ScalarField*>> per_index;
    for (const auto& pl : planes) per_index.push_back({&pl});
    return sobolev_reduce(g, per_index, spec, region);
}

double sobolev_norm(const CliffordField& f, const NormSpec& spec, const std::vector<uint8_t>& region,
                    const std::vector<uint8_t>* data_mask) {
    const Grid& g = f.grid();
    std::vector<uint8_t> full;
    if (!data_mask) {
        full.assign(g.size(), 1);
        data_mask = &full;
    }
    const auto mis = multi_indices_up_to(g.n, spec.k);
    const auto active = f.active_components();
    if (active.empty()) {
        // zero field: norm is zero on any nonempty region
        size_t cnt = 0;
        for (auto v : region) cnt += v;
        if (cnt == 0) throw std::invalid_argument("sobolev_norm: empty region");
        return 0.0;
    }
    std::vector<std::vector<ScalarField>> storage(mis.size());
    std::vector<std::vector<const ScalarField*>> per_index(mis.size());
    for (size_t ji = 0; ji < mis.size(); ++ji) {
        for (size_t m : active) {
            storage[ji].push_back(derivative_plane(g, f.component(m), *data_mask, mis[ji]));
        }
        for (const auto& pl : storage[ji]) per_index[ji].push_back(&pl);
    }
    return sobolev_reduce(g, per_index, spec, region);
}

double holder_seminorm(const CliffordField& f, double alpha, const std::vector<uint8_t>& region,
                       uint64_t seed) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument(
            "holder_seminorm: alpha must lie in (0, 1]; exponents above one only fit constants");
    const Grid& g = f.grid();
    std::vector<size_t> nodes;
    for (size_t i = 0; i < g.size(); ++i)
        if (region[i]) nodes.push_back(i);
    if (nodes.size() < 2) throw std::invalid_argument("holder_seminorm: region needs >= 2 nodes");

    const auto active = f.active_components();
    std::vector<double> xi(static_cast<size_t>(g.n)), xj(static_cast<size_t>(g.n));
    auto quotient = [&](size_t a, size_t b) {
        g.node(a, xi);
        g.node(b, xj);
        double d2 = 0.0;
        for (int c = 0; c < g.n; ++c) {
            const double d = xi[static_cast<size_t>(c)] - xj[static_cast<size_t>(c)];
            d2 += d * d;
        }
        if (d2 == 0.0) return 0.0;
        double v2 = 0.0;
        for (size_t m : active) {
            const double d = f.component(m)[a] - f.component(m)[b];
            v2 += d * d;
        }
        return std::sqrt(v2) / std::pow(std::sqrt(d2), alpha);
    };

    double best = 0.0;
    if (nodes.size() <= 4096) {
        for (size_t i = 0; i < nodes.size(); ++i)
            for (size_t j = i + 1; j < nodes.size(); ++j)
                best = std::max(best, quotient(nodes[i], nodes[j]));
    } else {
        SplitMix64 rng(seed);
        for (int s = 0; s < 1'000'000; ++s) {
            const size_t i = static_cast<size_t>(rng.below(nodes.size()));
            size_t j = static_cast<size_t>(rng.below(nodes.size()));
            if (i == j) continue;
            best = std::max(best, quotient(nodes[i], nodes[j]));
        }
    }
    return best;
}

Multivector clifford_inner_product(const CliffordField& f, const CliffordField& g,
                                   const std::vector<uint8_t>& region) {
    if (f.algebra_dim() != g.algebra_dim() || f.grid().size() != g.grid().size())
        throw std::invalid_argument("clifford_inner_product: field mismatch");
    const int n = f.algebra_dim();
    const size_t dim = size_t{1} << n;
    const double vol = f.grid().cell_volume();
    // accumulate sum over nodes of conj(f) g componentwise:
    // conj(e_A) e_B = conj_sign(|A|) sign(A,B) e_{A xor B}
    Multivector acc(n);
    size_t count = 0;
    std::vector<double> pair_acc(dim * dim, 0.0);
    const auto fa = f.active_components();
    const auto ga = g.active_components();
    for (size_t i = 0; i < f.grid().size(); ++i) {
        if (!region[i]) continue;
        ++count;
        for (size_t a : fa) {
            const double va = f.component(a)[i];
            if (va == 0.0) continue;
            for (size_t b : ga) pair_acc[a * dim + b] += va * g.component(b)[i];
        }
    }
    if (count == 0) throw std::invalid_argument("clifford_inner_product: empty region");
    for (size_t a = 0; a < dim; ++a) {
        const int cs = conjugation_sign(grade(static_cast<unsigned>(a)));
        for (size_t b = 0; b < dim; ++b) {
            const double v = pair_acc[a * dim + b];
            if (v == 0.0) continue;
            const auto bp = blade_product(static_cast<unsigned>(a), static_cast<unsigned>(b));
            acc[bp.mask] += cs * bp.sign * v * vol;
        }
    }
    return acc;
}

}  // namespace cliffmoll
