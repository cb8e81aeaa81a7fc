#include "balanced/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include <Eigen/Geometry>

#include "disk_grid.hpp"

namespace balanced {

void VerifyParams::validate() const {
    tol.validate();
    if (!std::isfinite(max_radius) || max_radius < 1.0)
        throw Error(ErrorKind::ParameterDomain, "max_radius must be at least 1 (in units of the minimal distance)");
}

bool BalanceReport::pass() const {
    return std::all_of(classes.begin(), classes.end(), [](const ClassResidual& c) { return c.pass; });
}

bool BalanceReport::any_ambiguous() const {
    return std::any_of(classes.begin(), classes.end(), [](const ClassResidual& c) { return c.ambiguous; });
}

std::vector<std::size_t> BalanceReport::failing() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (!classes[i].pass) out.push_back(i);
    return out;
}

namespace {

// Groups the neighbours of one base point into distance classes and appends
// one residual per class. `contribution(k)` is neighbour k's term of the sum.
template <typename Contribution>
void add_classes(BalanceReport& report, std::size_t point, const std::vector<double>& dists,
                 const Tolerance& tol, Contribution&& contribution) {
    const DistanceGroups groups = group_distances(dists, tol);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        ClassResidual r;
        r.point = point;
        r.distance = groups.distance[g];
        r.members = groups.members[g].size();
        for (std::size_t k : groups.members[g]) r.residual += contribution(k);
        r.norm = r.residual.norm();
        r.ambiguous = groups.ambiguous[g];
        r.pass = r.norm <= report.residual_tol && !r.ambiguous;
        report.worst_residual = std::max(report.worst_residual, r.norm);
        report.classes.push_back(r);
    }
}

Eigen::Vector3d lift(const Eigen::Vector2d& v) { return {v.x(), v.y(), 0.0}; }

BalanceReport start_report(double min_d, const VerifyParams& params) {
    params.validate();
    BalanceReport report;
    report.cutoff = params.max_radius * min_d;
    report.residual_tol = params.tol.residual_tol;
    return report;
}

}  // namespace

BalanceReport verify_plane(const PeriodicConfig& c, const VerifyParams& params) {
    BalanceReport report = start_report(min_distance(c, params.tol), params);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const PlanePoint& base = c.motif_point(i);
        const auto hits = points_within(c, base, report.cutoff, params.tol);
        std::vector<double> dists;
        dists.reserve(hits.size());
        for (const auto& h : hits) dists.push_back((h.point - base).norm());
        report.verified_points.push_back(i);
        add_classes(report, i, dists, params.tol, [&](std::size_t k) { return lift(hits[k].point - base); });
    }
    return report;
}

BalanceReport verify_plane(const PlaneSet& c, const VerifyParams& params) {
    BalanceReport report = start_report(min_distance(c), params);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.known_radius(i) < report.cutoff) continue;
        const auto idx = points_within(c, c[i], report.cutoff, params.tol);
        std::vector<double> dists;
        dists.reserve(idx.size());
        for (std::size_t j : idx) dists.push_back((c[j] - c[i]).norm());
        report.verified_points.push_back(i);
        add_classes(report, i, dists, params.tol, [&](std::size_t k) { return lift(c[idx[k]] - c[i]); });
    }
    if (report.verified_points.empty())
        throw Error(ErrorKind::InsufficientPatch, "no point lies at least the cutoff away from the window ends");
    return report;
}

BalanceReport verify_sphere(const SphereSet& c, const VerifyParams& params, SphereMode mode) {
    BalanceReport report = start_report(min_distance(c), params);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const SpherePoint& p = c[i];
        const auto idx = points_within(c, p, report.cutoff, params.tol);
        std::vector<double> dists;
        dists.reserve(idx.size());
        for (std::size_t j : idx) dists.push_back((c[j] - p).norm());
        report.verified_points.push_back(i);
        if (mode == SphereMode::ScalarMultiple) {
            // Sum first, then the cross product with P measures the part of
            // the sum not parallel to P.
            const DistanceGroups groups = group_distances(dists, params.tol);
            for (std::size_t g = 0; g < groups.size(); ++g) {
                ClassResidual r;
                r.point = i;
                r.distance = groups.distance[g];
                r.members = groups.members[g].size();
                Eigen::Vector3d sum = Eigen::Vector3d::Zero();
                for (std::size_t k : groups.members[g]) sum += c[idx[k]];
                r.residual = sum.cross(p);
                r.norm = r.residual.norm();
                r.ambiguous = groups.ambiguous[g];
                r.pass = r.norm <= report.residual_tol && !r.ambiguous;
                report.worst_residual = std::max(report.worst_residual, r.norm);
                report.classes.push_back(r);
            }
        } else {
            add_classes(report, i, dists, params.tol,
                        [&](std::size_t k) { return sphere_tangent_projection(p, c[idx[k]]); });
        }
    }
    return report;
}

BalanceReport verify_hyperbolic(const PatchConfig& c, const VerifyParams& params) {
    if (c.size() < 2) throw Error(ErrorKind::InsufficientPatch, "patch has fewer than two points");
    BalanceReport report = start_report(min_distance(c), params);
    const detail::DiskGrid grid(c.points());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.verifiable_radius(i) < report.cutoff) continue;
        const auto idx = grid.within(c[i], params.tol.dedup_tol, report.cutoff + params.tol.class_tol);
        std::vector<double> dists;
        dists.reserve(idx.size());
        for (std::size_t j : idx) dists.push_back(hyp_dist(c[i], c[j]));
        report.verified_points.push_back(i);
        add_classes(report, i, dists, params.tol, [&](std::size_t k) { return lift(hyp_log_dir(c[i], c[idx[k]])); });
    }
    if (report.verified_points.empty())
        throw Error(ErrorKind::InsufficientPatch, "no point has a verifiable radius of at least the cutoff");
    return report;
}

double shell_radius(const PatchConfig& c, int shells, const Tolerance& tol) {
    if (shells < 1) throw Error(ErrorKind::ParameterDomain, "shell count must be positive");
    const double min_d = min_distance(c);
    std::map<std::string, std::size_t> innermost;
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto [it, fresh] = innermost.emplace(c.label(i), i);
        if (!fresh && hyp_norm(c[i]) < hyp_norm(c[it->second])) it->second = i;
    }
    double reach = min_d;
    for (const auto& [label, i] : innermost) {
        const double limit = c.verifiable_radius(i);
        double search = 2.0 * min_d;
        for (;;) {
            const auto classes = distance_classes(c, c[i], std::min(search, limit), tol);
            if (static_cast<int>(classes.size()) >= shells) {
                reach = std::max(reach, classes[shells - 1].distance);
                break;
            }
            if (search >= limit)
                throw Error(ErrorKind::InsufficientPatch, "patch too small to reach the requested distance shells");
            search *= 2.0;
        }
    }
    return reach / min_d;
}

// ------------------------------------------------------------------ neighbours

namespace {

template <typename Dists>
int count_at(const Dists& dists, double min_d, const Tolerance& tol) {
    return static_cast<int>(
        std::count_if(dists.begin(), dists.end(), [&](double d) { return std::abs(d - min_d) <= tol.class_tol; }));
}

}  // namespace

int max_neighbor_count(const PeriodicConfig& c, const Tolerance& tol) {
    const double min_d = min_distance(c, tol);
    int best = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::vector<double> dists;
        for (const auto& h : points_within(c, c.motif_point(i), min_d, tol))
            dists.push_back((h.point - c.motif_point(i)).norm());
        best = std::max(best, count_at(dists, min_d, tol));
    }
    return best;
}

int max_neighbor_count(const PlaneSet& c, const Tolerance& tol) {
    const double min_d = min_distance(c);
    int best = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.known_radius(i) < min_d) continue;
        std::vector<double> dists;
        for (std::size_t j : points_within(c, c[i], min_d, tol)) dists.push_back((c[j] - c[i]).norm());
        best = std::max(best, count_at(dists, min_d, tol));
    }
    return best;
}

// ------------------------------------------------------------------ min distance

MinDistanceReport check_min_distance_property(const PeriodicConfig& c, const Tolerance& tol) {
    MinDistanceReport r;
    r.min_d = min_distance(c, tol);
    r.attained = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (const auto& h : points_within(c, c.motif_point(i), r.min_d, tol)) {
            if (std::abs((h.point - c.motif_point(i)).norm() - r.min_d) <= tol.class_tol) {
                r.pair = {i, h.motif_index};
                return r;
            }
        }
    }
    return r;
}

namespace {

double cross(const PlanePoint& o, const PlanePoint& a, const PlanePoint& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Indices of the convex hull vertices (monotone chain, collinear points dropped).
std::vector<std::size_t> hull_indices(const std::vector<PlanePoint>& pts) {
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pts[a].x() < pts[b].x() || (pts[a].x() == pts[b].x() && pts[a].y() < pts[b].y());
    });
    if (order.size() < 3) return order;
    std::vector<std::size_t> h(2 * order.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        while (k >= 2 && cross(pts[h[k - 2]], pts[h[k - 1]], pts[order[i]]) <= 0) --k;
        h[k++] = order[i];
    }
    for (std::size_t i = order.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(pts[h[k - 2]], pts[h[k - 1]], pts[order[i]]) <= 0) --k;
        h[k++] = order[i];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace

MinDistanceReport check_min_distance_property(const PlaneSet& c, const Tolerance& tol) {
    if (c.size() < 2) throw Error(ErrorKind::NoPairs, "minimal distance needs at least two points");
    MinDistanceReport r;
    r.min_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            const double d = (c[i] - c[j]).norm();
            if (d < r.min_d) {
                r.min_d = d;
                r.pair = {i, j};
            }
        }
    r.attained = r.min_d > 0.0;

    const auto hull = hull_indices(c.points());
    std::vector<PlanePoint> inner;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (std::find(hull.begin(), hull.end(), i) == hull.end()) inner.push_back(c[i]);
    if (inner.size() >= 2) {
        double inner_min = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < inner.size(); ++i)
            for (std::size_t j = i + 1; j < inner.size(); ++j) inner_min = std::min(inner_min, (inner[i] - inner[j]).norm());
        r.window_warning = std::abs(inner_min - r.min_d) > tol.class_tol * r.min_d;
    }
    return r;
}

}  // namespace balanced
