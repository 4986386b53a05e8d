#include "cliffmoll/alexander.hpp"

#include <cmath>
#include <stdexcept>

#include "cliffmoll/integral_ops.hpp"

namespace cliffmoll {

AlexanderReport alexander_check(const std::function<Multivector(std::span<const double>)>& rhs,
                                const std::vector<double>& radii, const DiracConfig& cfg,
                                int resolution, int margin_cells) {
    if (radii.empty()) throw std::invalid_argument("alexander_check: empty radius sweep");
    const int n = cfg.n;
    AlexanderReport rep;
    for (double lambda : radii) {
        if (!(lambda > 0.0)) throw std::invalid_argument("alexander_check: radii must be positive");
        Domain ball = Domain::ball(std::vector<double>(static_cast<size_t>(n), 0.0), lambda);
        std::vector<double> lo(static_cast<size_t>(n), -lambda), hi(static_cast<size_t>(n), lambda);
        Grid g = build_grid(lo, hi, resolution);
        CliffordField h = sample_field(rhs, g, ball);

        double sup_rhs = 0.0;
        for (size_t i = 0; i < g.size(); ++i)
            if (h.inside()[i]) sup_rhs = std::max(sup_rhs, h.value_norm(i));
        rep.rhs_sup = std::max(rep.rhs_sup, sup_rhs);

        auto targets = inside_mask(g, ball, margin_cells * g.max_spacing());
        AlexanderRow row;
        row.lambda = lambda;
        row.mu = ball.volume();
        if (count_mask(targets) == 0 || h.active_components().empty()) {
            row.U = 0.0;
        } else {
            CliffordField t = teodorescu_field(h, cfg, &targets);
            for (size_t i = 0; i < g.size(); ++i)
                if (targets[i]) row.U = std::max(row.U, t.value_norm(i));
        }
        const double scale = std::pow(row.mu, 1.0 / n) * (sup_rhs > 0.0 ? sup_rhs : 1.0);
        row.ratio = row.U / scale;
        rep.rows.push_back(row);
    }

    // least-squares slope of log U against log mu^{1/d}
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int cnt = 0;
    for (const auto& r : rep.rows) {
        if (r.U <= 0.0) continue;
        const double x = std::log(std::pow(r.mu, 1.0 / n));
        const double y = std::log(r.U);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    rep.slope = cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
    return rep;
}

}  // namespace cliffmoll
