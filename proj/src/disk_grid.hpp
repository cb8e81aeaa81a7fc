#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "balanced/geom.hpp"

namespace balanced::detail {

/// Uniform grid over the disk's bounding square for repeated hyperbolic
/// ball queries against a fixed point set.
class DiskGrid {
public:
    explicit DiskGrid(const std::vector<DiskPoint>& points) : points_(points) {
        side_ = std::clamp(static_cast<int>(std::sqrt(static_cast<double>(points.size()) / 4.0)), 1, 1024);
        cells_.resize(static_cast<std::size_t>(side_) * side_);
        for (std::size_t i = 0; i < points.size(); ++i) cells_[cell(points[i])].push_back(i);
    }

    /// Indices j with lo < hyp_dist(base, points[j]) <= hi.
    std::vector<std::size_t> within(const DiskPoint& base, double lo, double hi) const {
        // A hyperbolic ball is a Euclidean disk whose diameter through the
        // origin runs between hyperbolic norms a - hi and a + hi.
        const double s = base.norm();
        const double a = 2.0 * std::atanh(s);
        const double outer = std::tanh((a + hi) / 2.0);
        const double inner = std::tanh((a - hi) / 2.0);
        const DiskPoint dir = s > 0.0 ? DiskPoint(base / s) : DiskPoint(1.0, 0.0);
        const DiskPoint centre = 0.5 * (outer + inner) * dir;
        const double r = 0.5 * (outer - inner) + 1e-12;

        const int x0 = index(centre.x() - r), x1 = index(centre.x() + r);
        const int y0 = index(centre.y() - r), y1 = index(centre.y() + r);
        std::vector<std::size_t> out;
        for (int x = x0; x <= x1; ++x)
            for (int y = y0; y <= y1; ++y)
                for (std::size_t j : cells_[static_cast<std::size_t>(x) * side_ + y]) {
                    if ((points_[j] - centre).squaredNorm() > r * r) continue;
                    const double d = hyp_dist(base, points_[j]);
                    if (d > lo && d <= hi) out.push_back(j);
                }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    int index(double v) const { return std::clamp(static_cast<int>((v + 1.0) * 0.5 * side_), 0, side_ - 1); }
    std::size_t cell(const DiskPoint& p) const { return static_cast<std::size_t>(index(p.x())) * side_ + index(p.y()); }

    const std::vector<DiskPoint>& points_;
    int side_ = 1;
    std::vector<std::vector<std::size_t>> cells_;
};

}  // namespace balanced::detail
