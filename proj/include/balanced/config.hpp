#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "balanced/geom.hpp"
#include "balanced/tolerance.hpp"

namespace balanced {

/// Rank-2 periodic planar point set: basis columns v1, v2 and a motif given
/// in fractional coordinates of that basis, reduced into [0, 1)^2.
///
/// Labels are optional per-motif orbit names ("vertex", "midpoint",
/// "center", ...) carried for rendering and reporting.
class PeriodicConfig {
public:
    PeriodicConfig(const Eigen::Matrix2d& basis, std::vector<Eigen::Vector2d> motif,
                   std::vector<std::string> labels = {}, const Tolerance& tol = {});

    static PeriodicConfig from_vectors(const PlaneVector& v1, const PlaneVector& v2,
                                       std::vector<Eigen::Vector2d> motif,
                                       std::vector<std::string> labels = {}, const Tolerance& tol = {});

    const Eigen::Matrix2d& basis() const { return basis_; }
    PlaneVector v1() const { return basis_.col(0); }
    PlaneVector v2() const { return basis_.col(1); }
    double cell_area() const { return std::abs(basis_.determinant()); }

    std::size_t size() const { return motif_.size(); }
    const std::vector<Eigen::Vector2d>& motif() const { return motif_; }
    const std::vector<PlanePoint>& motif_points() const { return motif_cart_; }
    const PlanePoint& motif_point(std::size_t i) const { return motif_cart_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(std::size_t i) const { return i < labels_.size() ? labels_[i] : std::string(); }

    /// Lagrange-Gauss reduced basis of the same lattice, used for enumeration.
    const Eigen::Matrix2d& reduced_basis() const { return reduced_; }
    const Eigen::Matrix2d& reduced_inverse() const { return reduced_inv_; }

    /// Fractional coordinates of a Cartesian point in the stored basis.
    Eigen::Vector2d to_fractional(const PlanePoint& p) const { return basis_inv_ * p; }

private:
    Eigen::Matrix2d basis_;
    Eigen::Matrix2d basis_inv_;
    Eigen::Matrix2d reduced_;
    Eigen::Matrix2d reduced_inv_;
    std::vector<Eigen::Vector2d> motif_;
    std::vector<PlanePoint> motif_cart_;
    std::vector<std::string> labels_;
};

/// How a finite planar set relates to the configuration it samples.
///
/// Complete: the set is the whole configuration. Segment: the set is a
/// window onto a collinear configuration extending past both ends; only
/// points at least the verification radius away from both extreme points are
/// considered verifiable.
enum class Window { Complete, Segment };

class PlaneSet {
public:
    PlaneSet(std::vector<PlanePoint> points, Window window = Window::Complete,
             std::vector<std::string> labels = {}, const Tolerance& tol = {});

    std::size_t size() const { return points_.size(); }
    const std::vector<PlanePoint>& points() const { return points_; }
    const PlanePoint& operator[](std::size_t i) const { return points_[i]; }
    Window window() const { return window_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(std::size_t i) const { return i < labels_.size() ? labels_[i] : std::string(); }

    /// Largest radius r such that the configuration is fully known within r
    /// of point i (infinite for Complete windows).
    double known_radius(std::size_t i) const;

private:
    std::vector<PlanePoint> points_;
    Window window_;
    std::vector<std::string> labels_;
    PlanePoint end_a_ = PlanePoint::Zero();
    PlanePoint end_b_ = PlanePoint::Zero();
};

class SphereSet {
public:
    explicit SphereSet(std::vector<SpherePoint> points, std::vector<std::string> labels = {},
                       const Tolerance& tol = {});

    std::size_t size() const { return points_.size(); }
    const std::vector<SpherePoint>& points() const { return points_; }
    const SpherePoint& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(std::size_t i) const { return i < labels_.size() ? labels_[i] : std::string(); }

private:
    std::vector<SpherePoint> points_;
    std::vector<std::string> labels_;
};

/// Finite window of a hyperbolic configuration around the disk origin.
/// Every configuration point within hyperbolic distance patch_radius of the
/// origin is present. Points farther out may be stored too; their
/// verifiable_radius is negative and they are never verified. A finite
/// hyperbolic set is a patch with infinite radius.
class PatchConfig {
public:
    PatchConfig(std::vector<DiskPoint> points, double patch_radius, std::vector<std::string> labels = {},
                const Tolerance& tol = {});

    std::size_t size() const { return points_.size(); }
    const std::vector<DiskPoint>& points() const { return points_; }
    const DiskPoint& operator[](std::size_t i) const { return points_[i]; }
    double patch_radius() const { return patch_radius_; }
    double verifiable_radius(std::size_t i) const { return patch_radius_ - hyp_norm(points_[i]); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::string label(std::size_t i) const { return i < labels_.size() ? labels_[i] : std::string(); }

private:
    std::vector<DiskPoint> points_;
    double patch_radius_;
    std::vector<std::string> labels_;
};

template <typename Point>
struct DistanceClass {
    double distance = 0.0;
    std::vector<Point> members;
};

/// Result of single-linkage grouping of a list of distances.
struct DistanceGroups {
    std::vector<double> distance;                   // class mean, ascending
    std::vector<std::vector<std::size_t>> members;  // indices into the input
    std::vector<bool> ambiguous;                    // too close to a neighbour class, or too spread

    std::size_t size() const { return distance.size(); }
    bool any_ambiguous() const;
};

DistanceGroups group_distances(std::span<const double> distances, const Tolerance& tol);

/// Configuration point found by a periodic enumeration.
struct LatticeHit {
    PlanePoint point;
    std::size_t motif_index;
};

/// All points within radius + class_tol of base, excluding base itself.
std::vector<LatticeHit> points_within(const PeriodicConfig& c, const PlanePoint& base, double radius,
                                      const Tolerance& tol = {});
std::vector<std::size_t> points_within(const PlaneSet& c, const PlanePoint& base, double radius,
                                       const Tolerance& tol = {});
std::vector<std::size_t> points_within(const SphereSet& c, const SpherePoint& base, double radius,
                                       const Tolerance& tol = {});
std::vector<std::size_t> points_within(const PatchConfig& c, const DiskPoint& base, double radius,
                                       const Tolerance& tol = {});

double min_distance(const PeriodicConfig& c, const Tolerance& tol = {});
double min_distance(const PlaneSet& c);
double min_distance(const SphereSet& c);
double min_distance(const PatchConfig& c);

/// Distance classes of the neighbours of base up to max_radius. Throws
/// Error(AmbiguousClass) when two classes cannot be told apart.
std::vector<DistanceClass<PlanePoint>> distance_classes(const PeriodicConfig& c, const PlanePoint& base,
                                                        double max_radius, const Tolerance& tol = {});
std::vector<DistanceClass<PlanePoint>> distance_classes(const PlaneSet& c, const PlanePoint& base,
                                                        double max_radius, const Tolerance& tol = {});
std::vector<DistanceClass<SpherePoint>> distance_classes(const SphereSet& c, const SpherePoint& base,
                                                         double max_radius, const Tolerance& tol = {});
std::vector<DistanceClass<DiskPoint>> distance_classes(const PatchConfig& c, const DiskPoint& base,
                                                       double max_radius, const Tolerance& tol = {});

bool contains(const PeriodicConfig& c, const PlanePoint& p, const Tolerance& tol = {});

/// Euclidean distance from p to the nearest configuration point.
double nearest_distance(const PeriodicConfig& c, const PlanePoint& p);

/// Same point set with a Lagrange-Gauss reduced basis (|v1| <= |v2|,
/// 0 <= v1.v2 <= |v1|^2 / 2) and the motif re-reduced into [0, 1)^2.
PeriodicConfig canonical_basis(const PeriodicConfig& c);

/// Same point set over its full period lattice, with a minimal motif.
PeriodicConfig primitive_periods(const PeriodicConfig& c, const Tolerance& tol = {});

/// Same point set described over the na x nb supercell.
PeriodicConfig supercell(const PeriodicConfig& c, int na, int nb);

/// Image under p -> scale * R(angle) p + shift.
PeriodicConfig transformed(const PeriodicConfig& c, double angle, double scale, const PlaneVector& shift);
PlaneSet transformed(const PlaneSet& c, double angle, double scale, const PlaneVector& shift);

/// Rescaled copy whose minimal distance is 1.
PeriodicConfig normalized(const PeriodicConfig& c, const Tolerance& tol = {});
PlaneSet normalized(const PlaneSet& c);

/// Explicit Gauss reduction of a basis (columns).
Eigen::Matrix2d gauss_reduce(const Eigen::Matrix2d& basis);

}  // namespace balanced
