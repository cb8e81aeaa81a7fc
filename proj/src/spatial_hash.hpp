#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace balanced::detail {

/// Grid hash for deduplicating points; two points within `tol` of each other
/// always fall in the same or adjacent cells of side `tol`.
template <int Dim>
class SpatialHash {
public:
    using Point = Eigen::Matrix<double, Dim, 1>;

    explicit SpatialHash(double tol) : tol_(tol) {}

    /// Index of a stored point within tol of p, if any.
    std::optional<std::size_t> find(const Point& p) const {
        const Key base = key_of(p);
        std::optional<std::size_t> found;
        visit_neighbours(base, 0, base, [&](const Key& k) {
            if (found) return;
            auto it = cells_.find(k);
            if (it == cells_.end()) return;
            for (std::size_t idx : it->second) {
                if ((points_[idx] - p).norm() <= tol_) {
                    found = idx;
                    return;
                }
            }
        });
        return found;
    }

    /// Inserts p unless a point within tol is already stored. Returns the index
    /// of the stored point and whether p was new.
    std::pair<std::size_t, bool> insert(const Point& p) {
        if (auto hit = find(p)) return {*hit, false};
        const std::size_t idx = points_.size();
        points_.push_back(p);
        cells_[key_of(p)].push_back(idx);
        return {idx, true};
    }

    const std::vector<Point>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

private:
    using Key = std::array<std::int64_t, Dim>;

    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            std::uint64_t h = 1469598103934665603ull;
            for (auto v : k) {
                h ^= static_cast<std::uint64_t>(v);
                h *= 1099511628211ull;
            }
            return static_cast<std::size_t>(h);
        }
    };

    Key key_of(const Point& p) const {
        Key k{};
        for (int i = 0; i < Dim; ++i) k[i] = static_cast<std::int64_t>(std::floor(p[i] / tol_));
        return k;
    }

    template <typename F>
    void visit_neighbours(const Key& base, int axis, Key current, F&& f) const {
        if (axis == Dim) {
            f(current);
            return;
        }
        for (std::int64_t d = -1; d <= 1; ++d) {
            current[axis] = base[axis] + d;
            visit_neighbours(base, axis + 1, current, f);
        }
    }

    double tol_;
    std::vector<Point> points_;
    std::unordered_map<Key, std::vector<std::size_t>, KeyHash> cells_;
};

}  // namespace balanced::detail
