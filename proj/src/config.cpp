#include "balanced/config.hpp"

#include <algorithm>
#include <map>
#include <cmath>
#include <numeric>

#include <Eigen/LU>

#include "spatial_hash.hpp"

namespace balanced {

namespace {

double wrap_unit(double f) {
    double w = f - std::floor(f);
    if (w >= 1.0 - 1e-12) w = 0.0;
    return w;
}

Eigen::Vector2d wrap_unit(const Eigen::Vector2d& f) { return {wrap_unit(f.x()), wrap_unit(f.y())}; }

void require_basis(const Eigen::Matrix2d& basis) {
    if (!basis.allFinite())
        throw Error(ErrorKind::DegenerateBasis, "basis has non-finite entries");
    const double scale = basis.col(0).norm() * basis.col(1).norm();
    if (!(std::abs(basis.determinant()) > 1e-12 * scale))
        throw Error(ErrorKind::DegenerateBasis, "basis vectors are linearly dependent");
}

// Every configuration point within `radius` of base, including base itself.
template <typename F>
void for_each_near(const PeriodicConfig& c, const PlanePoint& base, double radius, F&& f) {
    const Eigen::Matrix2d& red = c.reduced_basis();
    const Eigen::Matrix2d& inv = c.reduced_inverse();
    const double ra = radius * inv.row(0).norm();
    const double rb = radius * inv.row(1).norm();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const PlanePoint& m = c.motif_point(i);
        const Eigen::Vector2d d = inv * (base - m);
        const auto a_lo = static_cast<long>(std::floor(d.x() - ra)) - 1;
        const auto a_hi = static_cast<long>(std::ceil(d.x() + ra)) + 1;
        const auto b_lo = static_cast<long>(std::floor(d.y() - rb)) - 1;
        const auto b_hi = static_cast<long>(std::ceil(d.y() + rb)) + 1;
        for (long a = a_lo; a <= a_hi; ++a) {
            for (long b = b_lo; b <= b_hi; ++b) {
                const PlanePoint p = m + red * Eigen::Vector2d(double(a), double(b));
                const double dist = (p - base).norm();
                if (dist <= radius) f(p, i, dist);
            }
        }
    }
}

PeriodicConfig from_cartesian(const Eigen::Matrix2d& basis, const std::vector<PlanePoint>& points,
                              std::vector<std::string> labels, const Tolerance& tol) {
    require_basis(basis);
    const Eigen::Matrix2d inv = basis.inverse();
    std::vector<Eigen::Vector2d> motif;
    motif.reserve(points.size());
    for (const auto& p : points) motif.push_back(inv * p);
    return PeriodicConfig(basis, std::move(motif), std::move(labels), tol);
}

template <typename Point>
std::vector<DistanceClass<Point>> build_classes(const std::vector<Point>& pts, const std::vector<double>& dists,
                                                const Tolerance& tol) {
    const DistanceGroups groups = group_distances(dists, tol);
    if (groups.any_ambiguous())
        throw Error(ErrorKind::AmbiguousClass, "distance classes closer than twice the class tolerance");
    std::vector<DistanceClass<Point>> out(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        out[g].distance = groups.distance[g];
        for (std::size_t idx : groups.members[g]) out[g].members.push_back(pts[idx]);
    }
    return out;
}

Eigen::Matrix2d rotation(double angle) {
    Eigen::Matrix2d r;
    r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return r;
}

}  // namespace

// ---------------------------------------------------------------- lattices

Eigen::Matrix2d gauss_reduce(const Eigen::Matrix2d& basis) {
    require_basis(basis);
    Eigen::Vector2d b1 = basis.col(0);
    Eigen::Vector2d b2 = basis.col(1);
    for (int iter = 0; iter < 10000; ++iter) {
        if (b2.squaredNorm() < b1.squaredNorm() * (1.0 - 1e-12)) std::swap(b1, b2);
        const double mu = b1.dot(b2) / b1.squaredNorm();
        if (std::abs(mu) <= 0.5 + 1e-12) break;
        b2 -= std::round(mu) * b1;
    }
    if (b1.dot(b2) < 0.0) b2 = -b2;
    Eigen::Matrix2d out;
    out.col(0) = b1;
    out.col(1) = b2;
    return out;
}

PeriodicConfig::PeriodicConfig(const Eigen::Matrix2d& basis, std::vector<Eigen::Vector2d> motif,
                               std::vector<std::string> labels, const Tolerance& tol)
    : basis_(basis), labels_(std::move(labels)) {
    require_basis(basis_);
    if (motif.empty()) throw Error(ErrorKind::InvalidPoint, "periodic configuration needs a motif point");
    if (!labels_.empty() && labels_.size() != motif.size())
        throw Error(ErrorKind::InvalidPoint, "label count does not match motif size");
    basis_inv_ = basis_.inverse();
    reduced_ = gauss_reduce(basis_);
    reduced_inv_ = reduced_.inverse();
    motif_.reserve(motif.size());
    for (const auto& f : motif) {
        if (!f.allFinite()) throw Error(ErrorKind::InvalidPoint, "motif coordinate is not finite");
        motif_.push_back(wrap_unit(f));
        motif_cart_.push_back(basis_ * motif_.back());
    }
    for (std::size_t i = 0; i < motif_cart_.size(); ++i) {
        for (std::size_t j = i + 1; j < motif_cart_.size(); ++j) {
            const Eigen::Vector2d d = reduced_inv_ * (motif_cart_[j] - motif_cart_[i]);
            const Eigen::Vector2d k(std::round(d.x()), std::round(d.y()));
            for (int da = -1; da <= 1; ++da) {
                for (int db = -1; db <= 1; ++db) {
                    const Eigen::Vector2d off = reduced_ * (d - k - Eigen::Vector2d(da, db));
                    if (off.norm() <= tol.dedup_tol)
                        throw Error(ErrorKind::InvalidPoint, "motif points coincide modulo the lattice");
                }
            }
        }
    }
}

PeriodicConfig PeriodicConfig::from_vectors(const PlaneVector& v1, const PlaneVector& v2,
                                            std::vector<Eigen::Vector2d> motif, std::vector<std::string> labels,
                                            const Tolerance& tol) {
    Eigen::Matrix2d b;
    b.col(0) = v1;
    b.col(1) = v2;
    return PeriodicConfig(b, std::move(motif), std::move(labels), tol);
}

// ---------------------------------------------------------------- finite sets

PlaneSet::PlaneSet(std::vector<PlanePoint> points, Window window, std::vector<std::string> labels,
                   const Tolerance& tol)
    : points_(std::move(points)), window_(window), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != points_.size())
        throw Error(ErrorKind::InvalidPoint, "label count does not match point count");
    detail::SpatialHash<2> hash(tol.dedup_tol);
    for (const auto& p : points_) {
        if (!p.allFinite()) throw Error(ErrorKind::InvalidPoint, "plane point is not finite");
        if (!hash.insert(p).second) throw Error(ErrorKind::InvalidPoint, "duplicate plane point");
    }
    if (window_ == Window::Segment && !points_.empty()) {
        auto farthest = [&](const PlanePoint& from) {
            return *std::max_element(points_.begin(), points_.end(), [&](const auto& a, const auto& b) {
                return (a - from).squaredNorm() < (b - from).squaredNorm();
            });
        };
        end_a_ = farthest(points_.front());
        end_b_ = farthest(end_a_);
    }
}

double PlaneSet::known_radius(std::size_t i) const {
    if (window_ == Window::Complete) return std::numeric_limits<double>::infinity();
    return std::min((points_[i] - end_a_).norm(), (points_[i] - end_b_).norm());
}

SphereSet::SphereSet(std::vector<SpherePoint> points, std::vector<std::string> labels, const Tolerance& tol)
    : points_(std::move(points)), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != points_.size())
        throw Error(ErrorKind::InvalidPoint, "label count does not match point count");
    detail::SpatialHash<3> hash(tol.dedup_tol);
    for (const auto& p : points_) {
        require_on_sphere(p);
        if (!hash.insert(p).second) throw Error(ErrorKind::InvalidPoint, "duplicate sphere point");
    }
}

PatchConfig::PatchConfig(std::vector<DiskPoint> points, double patch_radius, std::vector<std::string> labels,
                         const Tolerance& tol)
    : points_(std::move(points)), patch_radius_(patch_radius), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != points_.size())
        throw Error(ErrorKind::InvalidPoint, "label count does not match point count");
    if (!(patch_radius_ >= 0.0)) throw Error(ErrorKind::ParameterDomain, "patch radius must be nonnegative");
    detail::SpatialHash<2> hash(tol.dedup_tol);
    for (const auto& p : points_) {
        require_in_disk(p);
        if (!hash.insert(p).second) throw Error(ErrorKind::InvalidPoint, "duplicate disk point");
    }
}

// ---------------------------------------------------------------- classes

bool DistanceGroups::any_ambiguous() const {
    return std::any_of(ambiguous.begin(), ambiguous.end(), [](bool b) { return b; });
}

DistanceGroups group_distances(std::span<const double> distances, const Tolerance& tol) {
    std::vector<std::size_t> order(distances.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return distances[a] < distances[b]; });
    DistanceGroups g;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const double d = distances[order[k]];
        if (k == 0 || d - distances[order[k - 1]] > tol.class_tol) {
            g.members.emplace_back();
        }
        g.members.back().push_back(order[k]);
    }
    g.distance.resize(g.members.size());
    g.ambiguous.assign(g.members.size(), false);
    for (std::size_t c = 0; c < g.members.size(); ++c) {
        double sum = 0.0;
        for (std::size_t idx : g.members[c]) sum += distances[idx];
        g.distance[c] = sum / double(g.members[c].size());
        for (std::size_t idx : g.members[c])
            if (std::abs(distances[idx] - g.distance[c]) > tol.class_tol) g.ambiguous[c] = true;
    }
    for (std::size_t c = 1; c < g.members.size(); ++c) {
        if (g.distance[c] - g.distance[c - 1] <= 2.0 * tol.class_tol) {
            g.ambiguous[c] = true;
            g.ambiguous[c - 1] = true;
        }
    }
    return g;
}

// ---------------------------------------------------------------- queries

std::vector<LatticeHit> points_within(const PeriodicConfig& c, const PlanePoint& base, double radius,
                                      const Tolerance& tol) {
    std::vector<LatticeHit> out;
    for_each_near(c, base, radius + tol.class_tol, [&](const PlanePoint& p, std::size_t i, double dist) {
        if (dist > tol.dedup_tol) out.push_back({p, i});
    });
    return out;
}

std::vector<std::size_t> points_within(const PlaneSet& c, const PlanePoint& base, double radius,
                                       const Tolerance& tol) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double d = (c[i] - base).norm();
        if (d > tol.dedup_tol && d <= radius + tol.class_tol) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> points_within(const SphereSet& c, const SpherePoint& base, double radius,
                                       const Tolerance& tol) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double d = (c[i] - base).norm();
        if (d > tol.dedup_tol && d <= radius + tol.class_tol) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> points_within(const PatchConfig& c, const DiskPoint& base, double radius,
                                       const Tolerance& tol) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double d = hyp_dist(c[i], base);
        if (d > tol.dedup_tol && d <= radius + tol.class_tol) out.push_back(i);
    }
    return out;
}

double min_distance(const PeriodicConfig& c, const Tolerance& tol) {
    const double bound = c.reduced_basis().col(0).norm();
    double best = bound;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (const auto& hit : points_within(c, c.motif_point(i), bound, tol))
            best = std::min(best, (hit.point - c.motif_point(i)).norm());
    }
    return best;
}

namespace {
template <typename Set, typename Metric>
double brute_min_distance(const Set& c, Metric&& metric) {
    if (c.size() < 2) throw Error(ErrorKind::NoPairs, "minimal distance needs at least two points");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) best = std::min(best, metric(c[i], c[j]));
    return best;
}
}  // namespace

double min_distance(const PlaneSet& c) {
    return brute_min_distance(c, [](const auto& a, const auto& b) { return (a - b).norm(); });
}
double min_distance(const SphereSet& c) {
    return brute_min_distance(c, [](const auto& a, const auto& b) { return (a - b).norm(); });
}
namespace {

// Pairs within hyperbolic distance delta satisfy
// |a - b| <= sinh(delta/2) e^(delta/2) (1 - |a|^2) and their conformal factors
// differ by at most e^delta. Points are bucketed by level floor(-log2(1 - |z|^2))
// on grids of side scale * 2^-level; each point looks only at its own and
// coarser levels, where its search box spans at most 3 x 3 cells.
double patch_min_distance(const PatchConfig& c, double delta) {
    const double scale = std::sinh(delta / 2.0) * std::exp(delta / 2.0);
    const int span = static_cast<int>(std::ceil(delta / std::log(2.0))) + 1;
    auto level_of = [](const DiskPoint& z) {
        return std::max(0, static_cast<int>(std::floor(-std::log2(1.0 - z.squaredNorm()))));
    };
    using Key = std::pair<long long, long long>;
    std::vector<std::map<Key, std::vector<std::size_t>>> grids;
    std::vector<int> level(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        level[i] = level_of(c[i]);
        if (static_cast<std::size_t>(level[i]) >= grids.size()) grids.resize(level[i] + 1);
        const double h = std::ldexp(scale, -level[i]);
        grids[level[i]][{std::llround(std::floor(c[i].x() / h)), std::llround(std::floor(c[i].y() / h))}].push_back(i);
    }
    double best = delta;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (int l = std::max(0, level[i] - span); l <= level[i]; ++l) {
            const double h = std::ldexp(scale, -l);
            const long long kx = std::llround(std::floor(c[i].x() / h));
            const long long ky = std::llround(std::floor(c[i].y() / h));
            for (long long dx = -1; dx <= 1; ++dx)
                for (long long dy = -1; dy <= 1; ++dy) {
                    auto it = grids[l].find({kx + dx, ky + dy});
                    if (it == grids[l].end()) continue;
                    for (std::size_t j : it->second)
                        if (j != i) best = std::min(best, hyp_dist(c[i], c[j]));
                }
        }
    }
    return best;
}

}  // namespace

double min_distance(const PatchConfig& c) {
    if (c.size() < 2) throw Error(ErrorKind::NoPairs, "minimal distance needs at least two points");
    std::size_t inner = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i].squaredNorm() < c[inner].squaredNorm()) inner = i;
    double delta = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c.size(); ++j)
        if (j != inner) delta = std::min(delta, hyp_dist(c[inner], c[j]));
    return patch_min_distance(c, delta);
}

std::vector<DistanceClass<PlanePoint>> distance_classes(const PeriodicConfig& c, const PlanePoint& base,
                                                        double max_radius, const Tolerance& tol) {
    std::vector<PlanePoint> pts;
    std::vector<double> dists;
    for (const auto& hit : points_within(c, base, max_radius, tol)) {
        pts.push_back(hit.point);
        dists.push_back((hit.point - base).norm());
    }
    return build_classes(pts, dists, tol);
}

std::vector<DistanceClass<PlanePoint>> distance_classes(const PlaneSet& c, const PlanePoint& base,
                                                        double max_radius, const Tolerance& tol) {
    std::vector<PlanePoint> pts;
    std::vector<double> dists;
    for (std::size_t i : points_within(c, base, max_radius, tol)) {
        pts.push_back(c[i]);
        dists.push_back((c[i] - base).norm());
    }
    return build_classes(pts, dists, tol);
}

std::vector<DistanceClass<SpherePoint>> distance_classes(const SphereSet& c, const SpherePoint& base,
                                                         double max_radius, const Tolerance& tol) {
    std::vector<SpherePoint> pts;
    std::vector<double> dists;
    for (std::size_t i : points_within(c, base, max_radius, tol)) {
        pts.push_back(c[i]);
        dists.push_back((c[i] - base).norm());
    }
    return build_classes(pts, dists, tol);
}

std::vector<DistanceClass<DiskPoint>> distance_classes(const PatchConfig& c, const DiskPoint& base,
                                                       double max_radius, const Tolerance& tol) {
    std::vector<DiskPoint> pts;
    std::vector<double> dists;
    for (std::size_t i : points_within(c, base, max_radius, tol)) {
        pts.push_back(c[i]);
        dists.push_back(hyp_dist(c[i], base));
    }
    return build_classes(pts, dists, tol);
}

bool contains(const PeriodicConfig& c, const PlanePoint& p, const Tolerance& tol) {
    const Eigen::Matrix2d& red = c.reduced_basis();
    const Eigen::Matrix2d& inv = c.reduced_inverse();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Eigen::Vector2d d = inv * (p - c.motif_point(i));
        const Eigen::Vector2d k(std::round(d.x()), std::round(d.y()));
        for (int da = -1; da <= 1; ++da)
            for (int db = -1; db <= 1; ++db)
                if ((red * (d - k - Eigen::Vector2d(da, db))).norm() <= tol.dedup_tol) return true;
    }
    return false;
}

double nearest_distance(const PeriodicConfig& c, const PlanePoint& p) {
    const double radius = c.reduced_basis().col(0).norm() + c.reduced_basis().col(1).norm();
    double best = std::numeric_limits<double>::infinity();
    for_each_near(c, p, radius, [&](const PlanePoint&, std::size_t, double d) { best = std::min(best, d); });
    return best;
}

// ---------------------------------------------------------------- rewrites

PeriodicConfig canonical_basis(const PeriodicConfig& c) {
    return from_cartesian(c.reduced_basis(), c.motif_points(), c.labels(), Tolerance{});
}

PeriodicConfig primitive_periods(const PeriodicConfig& c, const Tolerance& tol) {
    // A period maps motif point 0 onto some motif point, so it is a motif
    // difference modulo the current lattice.
    std::vector<PlaneVector> periods;
    for (std::size_t j = 1; j < c.size(); ++j) {
        const PlaneVector t = c.motif_point(j) - c.motif_point(0);
        bool ok = true;
        for (std::size_t i = 0; i < c.size() && ok; ++i) ok = contains(c, c.motif_point(i) + t, tol);
        if (ok) periods.push_back(t);
    }
    if (periods.empty()) return c;

    // The two successive minima of the refined lattice form a basis. Both are
    // no longer than the longer reduced vector of the original lattice.
    const Eigen::Matrix2d& red = c.reduced_basis();
    const double rho = red.col(1).norm() * (1.0 + 1e-9);
    std::vector<PlaneVector> vecs;
    auto collect = [&](const PlaneVector& shift) {
        const Eigen::Vector2d d = c.reduced_inverse() * (-shift);
        const double ra = rho * c.reduced_inverse().row(0).norm();
        const double rb = rho * c.reduced_inverse().row(1).norm();
        for (long a = long(std::floor(d.x() - ra)) - 1; a <= long(std::ceil(d.x() + ra)) + 1; ++a)
            for (long b = long(std::floor(d.y() - rb)) - 1; b <= long(std::ceil(d.y() + rb)) + 1; ++b) {
                const PlaneVector v = shift + red * Eigen::Vector2d(double(a), double(b));
                const double n = v.norm();
                if (n > tol.dedup_tol && n <= rho) vecs.push_back(v);
            }
    };
    collect(PlaneVector::Zero());
    for (const auto& t : periods) collect(t);

    const double scale = red.col(0).norm();
    std::sort(vecs.begin(), vecs.end(), [&](const PlaneVector& a, const PlaneVector& b) {
        const double na = a.norm(), nb = b.norm();
        if (std::abs(na - nb) > 1e-12 * scale) return na < nb;
        return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
    });
    const PlaneVector u = vecs.front();
    PlaneVector w = PlaneVector::Zero();
    for (const auto& v : vecs) {
        if (std::abs(u.x() * v.y() - u.y() * v.x()) > 1e-9 * u.norm() * v.norm()) {
            w = v;
            break;
        }
    }
    Eigen::Matrix2d nb;
    nb.col(0) = u;
    nb.col(1) = w;
    nb = gauss_reduce(nb);

    const Eigen::Matrix2d inv = nb.inverse();
    std::vector<Eigen::Vector2d> motif;
    std::vector<std::string> labels;
    detail::SpatialHash<2> seen(tol.dedup_tol);
    for (std::size_t i = 0; i < c.size(); ++i) {
        // Snap onto the canonical representative in the new cell before dedup.
        const Eigen::Vector2d f = wrap_unit(Eigen::Vector2d(inv * c.motif_point(i)));
        Eigen::Vector2d probe = nb * f;
        bool dup = false;
        for (int da = -1; da <= 1 && !dup; ++da)
            for (int db = -1; db <= 1 && !dup; ++db)
                dup = seen.find(probe + nb * Eigen::Vector2d(da, db)).has_value();
        if (dup) continue;
        seen.insert(probe);
        motif.push_back(f);
        if (!c.labels().empty()) labels.push_back(c.labels()[i]);
    }
    return PeriodicConfig(nb, std::move(motif), std::move(labels), tol);
}

PeriodicConfig supercell(const PeriodicConfig& c, int na, int nb) {
    if (na < 1 || nb < 1) throw Error(ErrorKind::ParameterDomain, "supercell factors must be positive");
    Eigen::Matrix2d b = c.basis();
    b.col(0) *= na;
    b.col(1) *= nb;
    std::vector<Eigen::Vector2d> motif;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (int a = 0; a < na; ++a)
            for (int k = 0; k < nb; ++k) {
                motif.emplace_back((c.motif()[i].x() + a) / na, (c.motif()[i].y() + k) / nb);
                if (!c.labels().empty()) labels.push_back(c.labels()[i]);
            }
    }
    return PeriodicConfig(b, std::move(motif), std::move(labels));
}

PeriodicConfig transformed(const PeriodicConfig& c, double angle, double scale, const PlaneVector& shift) {
    const Eigen::Matrix2d m = scale * rotation(angle);
    std::vector<PlanePoint> pts;
    for (const auto& p : c.motif_points()) pts.push_back(m * p + shift);
    return from_cartesian(m * c.basis(), pts, c.labels(), Tolerance{});
}

PlaneSet transformed(const PlaneSet& c, double angle, double scale, const PlaneVector& shift) {
    const Eigen::Matrix2d m = scale * rotation(angle);
    std::vector<PlanePoint> pts;
    for (const auto& p : c.points()) pts.push_back(m * p + shift);
    return PlaneSet(std::move(pts), c.window(), c.labels());
}

PeriodicConfig normalized(const PeriodicConfig& c, const Tolerance& tol) {
    return transformed(c, 0.0, 1.0 / min_distance(c, tol), PlaneVector::Zero());
}

PlaneSet normalized(const PlaneSet& c) { return transformed(c, 0.0, 1.0 / min_distance(c), PlaneVector::Zero()); }

}  // namespace balanced
