#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "balanced/config.hpp"

namespace balanced {

/// A rotation about `center` by `angle` in (0, 2 pi) mapping the
/// configuration to itself.
struct SymmetryWitness {
    PlanePoint center = PlanePoint::Zero();
    double angle = 0.0;
};

/// Rotation angles about p (a configuration point) that map every point
/// within 4 minimal distances of p back into the configuration, ascending.
std::vector<double> rotation_symmetries_about(const PeriodicConfig& c, const PlanePoint& p, const Tolerance& tol = {});

/// Same for point i of a finite set; window points that leave the set break
/// the symmetry.
std::vector<double> rotation_symmetries_about(const PlaneSet& c, std::size_t i, const Tolerance& tol = {});

/// Largest distance from a rotated window point to the configuration.
double witness_mismatch(const PeriodicConfig& c, const SymmetryWitness& w, double window_radius);

struct GroupBalanceResult {
    bool verdict = false;
    /// One entry per motif point (periodic) or per checked point (finite).
    std::vector<std::size_t> points;
    std::vector<std::optional<SymmetryWitness>> witnesses;
};

GroupBalanceResult is_group_balanced(const PeriodicConfig& c, const Tolerance& tol = {});

/// Checks the points of a finite set whose 4-minimal-distance window lies
/// inside the set's known region.
GroupBalanceResult is_group_balanced(const PlaneSet& c, const Tolerance& tol = {});

enum class ConfigTag {
    TriangularLattice,
    Lattice,
    LatticeWithMidpoints,
    HexVertices,
    HexWithMidpoints,
    HexWithMidpointsAndCenters,
    Line,
    Unknown,
};

const char* to_string(ConfigTag tag);

/// Classification verdict plus the parameters to rebuild the input.
///
/// `basis` (columns) spans the tiling lattice in input coordinates and
/// `anchor` is the image of the generator's origin: a lattice vertex, a
/// hexagon center, or the first point of a line. `size` is the hexagon side or
/// line spacing, `count` the number of line points.
struct ConfigClass {
    ConfigTag tag = ConfigTag::Unknown;
    Eigen::Matrix2d basis = Eigen::Matrix2d::Zero();
    PlanePoint anchor = PlanePoint::Zero();
    PlaneVector direction = PlaneVector::UnitX();
    double size = 0.0;
    int count = 0;
    double min_distance = 0.0;
};

ConfigClass classify(const PeriodicConfig& c, const Tolerance& tol = {});
ConfigClass classify(const PlaneSet& c, const Tolerance& tol = {});

/// Rebuilds a periodic configuration from a non-line class.
PeriodicConfig regenerate(const ConfigClass& cls);
/// Rebuilds a line window from a Line class.
PlaneSet regenerate_line(const ConfigClass& cls);

struct NeighborCase {
    std::string label;
    int count = 0;

    bool operator==(const NeighborCase&) const = default;
};

/// Distinct (label, minimal-distance class size) pairs over the motif, by
/// decreasing count.
std::vector<NeighborCase> neighbor_case_signature(const PeriodicConfig& c, const Tolerance& tol = {});

}  // namespace balanced
