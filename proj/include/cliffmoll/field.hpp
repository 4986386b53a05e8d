// field.hpp
// Clifford-valued grid fields f = sum_A e_A f_A, stored as one scalar plane
// per blade component. An empty plane stands for an identically zero
// component, so sparse fields stay cheap at high resolution.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffmoll/domain.hpp"
#include "cliffmoll/grid.hpp"
#include "cliffmoll/multivector.hpp"

namespace cliffmoll {

struct ScalarField {
    Grid grid;
    std::vector<double> data;    // one value per node
    std::vector<uint8_t> mask;   // 1 = value is defined / in region

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0)
        : grid(g), data(g.size(), fill), mask(g.size(), 1) {}
};

class CliffordField {
  public:
    CliffordField() = default;

    CliffordField(const Grid& g, int algebra_dim)
        : grid_(g), n_(algebra_dim), comps_(size_t{1} << algebra_dim), inside_(g.size(), 1) {
        if (algebra_dim < 1 || algebra_dim > kMaxDim)
            throw std::invalid_argument("CliffordField: algebra dimension must be in [1, 8]");
    }

    const Grid& grid() const { return grid_; }
    int algebra_dim() const { return n_; }
    size_t component_count() const { return comps_.size(); }

    bool component_active(size_t mask) const { return !comps_[mask].empty(); }

    /// Mutable plane for one blade component; materializes zeros on first use.
    std::vector<double>& component(size_t mask) {
        auto& c = comps_[mask];
        if (c.empty()) c.assign(grid_.size(), 0.0);
        return c;
    }

    const std::vector<double>& component(size_t mask) const {
        static const std::vector<double> empty;
        return comps_[mask].empty() ? empty : comps_[mask];
    }

    double coeff(size_t node, size_t mask) const {
        const auto& c = comps_[mask];
        return c.empty() ? 0.0 : c[node];
    }

    Multivector value(size_t node) const {
        Multivector v(n_);
        for (size_t m = 0; m < comps_.size(); ++m)
            if (!comps_[m].empty()) v[m] = comps_[m][node];
        return v;
    }

    void set_value(size_t node, const Multivector& v) {
        if (v.dim() != n_) throw std::invalid_argument("CliffordField: value dimension mismatch");
        for (size_t m = 0; m < comps_.size(); ++m)
            if (v[m] != 0.0 || !comps_[m].empty()) component(m)[node] = v[m];
    }

    std::vector<uint8_t>& inside() { return inside_; }
    const std::vector<uint8_t>& inside() const { return inside_; }

    size_t inside_count() const { return count_mask(inside_); }

    /// Pointwise coefficient 2-norm at a node.
    double value_norm(size_t node) const {
        double s = 0.0;
        for (const auto& c : comps_)
            if (!c.empty()) s += c[node] * c[node];
        return std::sqrt(s);
    }

    std::vector<size_t> active_components() const {
        std::vector<size_t> a;
        for (size_t m = 0; m < comps_.size(); ++m)
            if (!comps_[m].empty()) a.push_back(m);
        return a;
    }

    void drop_zero_components() {
        for (auto& c : comps_) {
            bool all0 = true;
            for (double v : c)
                if (v != 0.0) { all0 = false; break; }
            if (all0) c.clear();
        }
    }

  private:
    Grid grid_;
    int n_ = 0;
    std::vector<std::vector<double>> comps_;
    std::vector<uint8_t> inside_;
};

/// Evaluate a multivector-valued expression at every grid node; nodes outside
/// the domain are flagged. Non-finite values are reported with the node index.
inline CliffordField sample_field(const std::function<Multivector(std::span<const double>)>& expr,
                                  const Grid& g, const Domain& d) {
    CliffordField f(g, g.n);
    f.inside() = inside_mask(g, d);
    std::vector<double> x(static_cast<size_t>(g.n));
    for (size_t i = 0; i < g.size(); ++i) {
        g.node(i, x);
        Multivector v = expr(x);
        if (v.dim() != g.n) throw std::invalid_argument("sample_field: expression dimension mismatch");
        for (size_t m = 0; m < v.size(); ++m) {
            if (!std::isfinite(v[m]))
                throw std::runtime_error("sample_field: non-finite value at node " + std::to_string(i));
        }
        f.set_value(i, v);
    }
    f.drop_zero_components();
    return f;
}

}  // namespace cliffmoll
