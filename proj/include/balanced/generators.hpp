#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "balanced/config.hpp"

namespace balanced {

/// Which of the vertex / edge-midpoint / face-center sets of a tiling to take.
struct SubsetFlags {
    bool vertices = false;
    bool edge_midpoints = false;
    bool face_centers = false;

    bool any() const { return vertices || edge_midpoints || face_centers; }

    /// Parses a comma-separated list of "vertices", "midpoints", "centers".
    static SubsetFlags parse(std::string_view list);
    std::string to_string() const;

    /// All seven nonempty combinations.
    static std::array<SubsetFlags, 7> all_nonempty();
};

PeriodicConfig gen_lattice(const PlaneVector& v1, const PlaneVector& v2, SubsetFlags flags);

/// Triangular lattice: basis (side, 0), (side/2, side*sqrt(3)/2).
PeriodicConfig gen_triangular(double side);

/// Regular hexagon tiling with the given side. Cell basis is
/// (side*sqrt3, 0), (side*sqrt3/2, 3 side/2) with a face center at the origin.
PeriodicConfig gen_hexagonal(double side, SubsetFlags flags);

/// n evenly spaced collinear points on the x-axis, centered at the origin,
/// as a segment window.
PlaneSet gen_line(int n, double spacing);

enum class Solid { Tetrahedron, Cube, Octahedron, Dodecahedron, Icosahedron, Ngon };

Solid parse_solid(std::string_view name);
const char* to_string(Solid s);

/// Points of a spherical tiling; `ngon_n` is used only for Solid::Ngon (the
/// two-hemisphere tiling along a great circle).
SphereSet gen_sphere(Solid kind, SubsetFlags flags, int ngon_n = 0);

// ------------------------------------------------------------- hyperbolic

struct TriangleGroupParams {
    int p = 2, q = 3, r = 7;
    int depth = 0;
};

/// Vertex-type selection for triangle-group tilings: points where 2p, 2q or
/// 2r triangle corners meet.
struct VertexTypes {
    bool p_centers = false;
    bool q_centers = false;
    bool r_centers = false;

    bool any() const { return p_centers || q_centers || r_centers; }
    static VertexTypes parse(std::string_view list);
};

struct RotationTilingParams {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;  // radians
    int m = 3;
    int depth = 0;
};

struct RotationSets {
    bool vertices = false;
    bool mid_ab = false;
    bool mid_ac = false;
    bool mid_bc = false;

    bool any() const { return vertices || mid_ab || mid_ac || mid_bc; }
    static RotationSets parse(std::string_view list);
};

/// A triangle of a hyperbolic tiling. Corner i carries the label of its
/// angle type (0, 1, 2 for p/q/r or alpha/beta/gamma).
struct HypTile {
    std::array<DiskPoint, 3> corner;
    std::array<int, 3> type{0, 1, 2};
};

/// A finite union of tiles around the origin plus the certified radius up to
/// which the union covers the disk.
struct HypTiling {
    std::vector<HypTile> tiles;
    double covered_radius = 0.0;
};

/// Hyperbolic law of cosines for angles: length of the side opposite `opposite`.
double hyp_side_from_angles(double adjacent_a, double adjacent_b, double opposite);

/// Seed triangle with angle pi/p at the origin, its q-corner on the positive
/// x-axis.
HypTile triangle_group_seed(int p, int q, int r);
HypTile rotation_seed(double alpha, double beta, double gamma);

/// Tiles reached from the seed after `depth` vertex-star layers: each layer
/// adds every tile sharing a corner with the current union.
HypTiling tile_triangle_group(const TriangleGroupParams& params);
HypTiling tile_rotation(const RotationTilingParams& params);

PatchConfig gen_hyp_triangle_group(const TriangleGroupParams& params, VertexTypes types);
PatchConfig gen_hyp_rotation_tiling(const RotationTilingParams& params, RotationSets sets);

}  // namespace balanced
