#include "balanced/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <Eigen/Geometry>

#include "spatial_hash.hpp"

namespace balanced {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> split_list(std::string_view list) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : list) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

[[noreturn]] void bad_item(std::string_view what, const std::string& item) {
    throw Error(ErrorKind::ParameterDomain, std::string("unknown ") + std::string(what) + " '" + item + "'");
}

void require_positive(double v, const char* what) {
    if (!std::isfinite(v) || !(v > 0.0))
        throw Error(ErrorKind::ParameterDomain, std::string(what) + " must be positive and finite");
}

void require_flags(const SubsetFlags& flags) {
    if (!flags.any()) throw Error(ErrorKind::ParameterDomain, "at least one point set must be selected");
}

}  // namespace

// ------------------------------------------------------------------ flags

SubsetFlags SubsetFlags::parse(std::string_view list) {
    SubsetFlags f;
    for (const auto& item : split_list(list)) {
        if (item == "vertices") f.vertices = true;
        else if (item == "midpoints" || item == "edge_midpoints") f.edge_midpoints = true;
        else if (item == "centers" || item == "face_centers") f.face_centers = true;
        else bad_item("point set", item);
    }
    require_flags(f);
    return f;
}

std::string SubsetFlags::to_string() const {
    std::string out;
    auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!out.empty()) out += ',';
        out += name;
    };
    add(vertices, "vertices");
    add(edge_midpoints, "midpoints");
    add(face_centers, "centers");
    return out;
}

std::array<SubsetFlags, 7> SubsetFlags::all_nonempty() {
    std::array<SubsetFlags, 7> out{};
    for (int mask = 1; mask < 8; ++mask) out[mask - 1] = SubsetFlags{bool(mask & 1), bool(mask & 2), bool(mask & 4)};
    return out;
}

VertexTypes VertexTypes::parse(std::string_view list) {
    VertexTypes t;
    for (const auto& item : split_list(list)) {
        if (item == "p" || item == "p_centers") t.p_centers = true;
        else if (item == "q" || item == "q_centers") t.q_centers = true;
        else if (item == "r" || item == "r_centers") t.r_centers = true;
        else bad_item("vertex type", item);
    }
    if (!t.any()) throw Error(ErrorKind::ParameterDomain, "at least one vertex type must be selected");
    return t;
}

RotationSets RotationSets::parse(std::string_view list) {
    RotationSets s;
    for (const auto& item : split_list(list)) {
        if (item == "vertices") s.vertices = true;
        else if (item == "mid_ab") s.mid_ab = true;
        else if (item == "mid_ac") s.mid_ac = true;
        else if (item == "mid_bc") s.mid_bc = true;
        else bad_item("point set", item);
    }
    if (!s.any()) throw Error(ErrorKind::ParameterDomain, "at least one point set must be selected");
    return s;
}

// ------------------------------------------------------------------ planar

PeriodicConfig gen_lattice(const PlaneVector& v1, const PlaneVector& v2, SubsetFlags flags) {
    require_flags(flags);
    std::vector<Eigen::Vector2d> motif;
    std::vector<std::string> labels;
    if (flags.vertices) {
        motif.emplace_back(0.0, 0.0);
        labels.emplace_back("vertex");
    }
    if (flags.edge_midpoints) {
        motif.emplace_back(0.5, 0.0);
        motif.emplace_back(0.0, 0.5);
        labels.insert(labels.end(), 2, "midpoint");
    }
    if (flags.face_centers) {
        motif.emplace_back(0.5, 0.5);
        labels.emplace_back("center");
    }
    return PeriodicConfig::from_vectors(v1, v2, std::move(motif), std::move(labels));
}

PeriodicConfig gen_triangular(double side) {
    require_positive(side, "side");
    return PeriodicConfig::from_vectors(PlaneVector(side, 0.0), PlaneVector(side / 2.0, side * std::sqrt(3.0) / 2.0),
                                        {Eigen::Vector2d::Zero()}, {"vertex"});
}

PeriodicConfig gen_hexagonal(double side, SubsetFlags flags) {
    require_positive(side, "side");
    require_flags(flags);
    const double s3 = std::sqrt(3.0);
    std::vector<Eigen::Vector2d> motif;
    std::vector<std::string> labels;
    if (flags.vertices) {
        motif.emplace_back(1.0 / 3.0, 1.0 / 3.0);
        motif.emplace_back(2.0 / 3.0, 2.0 / 3.0);
        labels.insert(labels.end(), 2, "vertex");
    }
    if (flags.edge_midpoints) {
        motif.emplace_back(0.5, 0.0);
        motif.emplace_back(0.0, 0.5);
        motif.emplace_back(0.5, 0.5);
        labels.insert(labels.end(), 3, "midpoint");
    }
    if (flags.face_centers) {
        motif.emplace_back(0.0, 0.0);
        labels.emplace_back("center");
    }
    return PeriodicConfig::from_vectors(PlaneVector(side * s3, 0.0), PlaneVector(side * s3 / 2.0, 1.5 * side),
                                        std::move(motif), std::move(labels));
}

PlaneSet gen_line(int n, double spacing) {
    if (n < 3) throw Error(ErrorKind::ParameterDomain, "a line needs at least 3 points");
    require_positive(spacing, "spacing");
    std::vector<PlanePoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    const double half = 0.5 * (n - 1);
    for (int i = 0; i < n; ++i) pts.emplace_back((i - half) * spacing, 0.0);
    return PlaneSet(std::move(pts), Window::Segment, std::vector<std::string>(static_cast<std::size_t>(n), "vertex"));
}

// ------------------------------------------------------------------ sphere

Solid parse_solid(std::string_view name) {
    if (name == "tetrahedron") return Solid::Tetrahedron;
    if (name == "cube") return Solid::Cube;
    if (name == "octahedron") return Solid::Octahedron;
    if (name == "dodecahedron") return Solid::Dodecahedron;
    if (name == "icosahedron") return Solid::Icosahedron;
    if (name == "ngon") return Solid::Ngon;
    throw Error(ErrorKind::ParameterDomain, "unknown solid '" + std::string(name) + "'");
}

const char* to_string(Solid s) {
    switch (s) {
        case Solid::Tetrahedron: return "tetrahedron";
        case Solid::Cube: return "cube";
        case Solid::Octahedron: return "octahedron";
        case Solid::Dodecahedron: return "dodecahedron";
        case Solid::Icosahedron: return "icosahedron";
        case Solid::Ngon: return "ngon";
    }
    return "unknown";
}

namespace {

std::vector<SpherePoint> solid_vertices(Solid kind) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<SpherePoint> v;
    switch (kind) {
        case Solid::Tetrahedron:
            v = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
            break;
        case Solid::Cube:
            for (int x : {-1, 1})
                for (int y : {-1, 1})
                    for (int z : {-1, 1}) v.emplace_back(x, y, z);
            break;
        case Solid::Octahedron:
            v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
            break;
        case Solid::Icosahedron:
            for (double a : {-1.0, 1.0})
                for (double b : {-phi, phi}) {
                    v.emplace_back(0, a, b);
                    v.emplace_back(a, b, 0);
                    v.emplace_back(b, 0, a);
                }
            break;
        case Solid::Dodecahedron:
            for (int x : {-1, 1})
                for (int y : {-1, 1})
                    for (int z : {-1, 1}) v.emplace_back(x, y, z);
            for (double a : {-1.0 / phi, 1.0 / phi})
                for (double b : {-phi, phi}) {
                    v.emplace_back(0, a, b);
                    v.emplace_back(a, b, 0);
                    v.emplace_back(b, 0, a);
                }
            break;
        case Solid::Ngon:
            break;
    }
    for (auto& p : v) p.normalize();
    return v;
}

struct SolidParts {
    std::vector<SpherePoint> vertices, midpoints, centers;
};

// Edges are vertex pairs at minimal distance; faces are the supporting planes
// through vertex triples with every vertex on one side.
SolidParts polyhedron_parts(Solid kind) {
    SolidParts parts;
    parts.vertices = solid_vertices(kind);
    const auto& v = parts.vertices;
    const std::size_t n = v.size();

    double edge = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edge = std::min(edge, (v[i] - v[j]).norm());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if ((v[i] - v[j]).norm() <= edge * (1.0 + 1e-9)) parts.midpoints.push_back((v[i] + v[j]).normalized());

    detail::SpatialHash<3> seen(1e-9);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                Eigen::Vector3d normal = (v[j] - v[i]).cross(v[k] - v[i]);
                if (normal.norm() < 1e-9) continue;
                normal.normalize();
                if (normal.dot(v[i]) < 0.0) normal = -normal;
                const double h = normal.dot(v[i]);
                bool supporting = true;
                for (const auto& w : v) {
                    if (normal.dot(w) > h + 1e-9) {
                        supporting = false;
                        break;
                    }
                }
                if (!supporting || !seen.insert(normal).second) continue;
                Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
                int count = 0;
                for (const auto& w : v) {
                    if (normal.dot(w) >= h - 1e-9) {
                        centroid += w;
                        ++count;
                    }
                }
                parts.centers.push_back((centroid / count).normalized());
            }
        }
    }
    return parts;
}

SolidParts ngon_parts(int n) {
    SolidParts parts;
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * kPi * i / n;
        const double b = a + kPi / n;
        parts.vertices.emplace_back(std::cos(a), std::sin(a), 0.0);
        parts.midpoints.emplace_back(std::cos(b), std::sin(b), 0.0);
    }
    parts.centers = {{0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}};
    return parts;
}

}  // namespace

SphereSet gen_sphere(Solid kind, SubsetFlags flags, int ngon_n) {
    require_flags(flags);
    SolidParts parts;
    if (kind == Solid::Ngon) {
        if (ngon_n < 2) throw Error(ErrorKind::ParameterDomain, "ngon needs n >= 2");
        parts = ngon_parts(ngon_n);
    } else {
        parts = polyhedron_parts(kind);
    }
    std::vector<SpherePoint> pts;
    std::vector<std::string> labels;
    auto take = [&](bool on, const std::vector<SpherePoint>& src, const char* label) {
        if (!on) return;
        pts.insert(pts.end(), src.begin(), src.end());
        labels.insert(labels.end(), src.size(), label);
    };
    take(flags.vertices, parts.vertices, "vertex");
    take(flags.edge_midpoints, parts.midpoints, "midpoint");
    take(flags.face_centers, parts.centers, "center");
    return SphereSet(std::move(pts), std::move(labels));
}

// ------------------------------------------------------------------ hyperbolic

double hyp_side_from_angles(double adjacent_a, double adjacent_b, double opposite) {
    const double c = (std::cos(adjacent_a) * std::cos(adjacent_b) + std::cos(opposite)) /
                     (std::sin(adjacent_a) * std::sin(adjacent_b));
    if (!(c > 1.0)) throw Error(ErrorKind::ParameterDomain, "angles do not form a hyperbolic triangle");
    return std::acosh(c);
}

namespace {

// Corner 0 at the origin with interior angle a0, corner 1 on the positive
// x-axis, corner 2 at polar angle a0.
HypTile seed_from_angles(double a0, double a1, double a2) {
    const double side01 = hyp_side_from_angles(a0, a1, a2);
    const double side02 = hyp_side_from_angles(a0, a2, a1);
    // Nearly Euclidean angle sums give corners closer than the tile matching tolerance.
    if (std::min(side01, side02) < 1e-6) throw Error(ErrorKind::ParameterDomain, "triangle too close to Euclidean");
    HypTile t;
    t.corner = {DiskPoint::Zero(), disk_polar(side01, 0.0), disk_polar(side02, a0)};
    return t;
}

constexpr double kTileKeyTol = 1e-9;

DiskPoint centroid(const HypTile& t) { return (t.corner[0] + t.corner[1] + t.corner[2]) / 3.0; }

int corner_at(const HypTile& t, const DiskPoint& v) {
    for (int i = 0; i < 3; ++i)
        if ((t.corner[i] - v).norm() <= 1e-9) return i;
    return -1;
}

// Grows the tile union by vertex stars. `across(t, i, j)` returns the
// neighbouring tile sharing edge (i, j).
template <typename Across>
HypTiling grow(const HypTile& seed, int depth, Across&& across) {
    HypTiling out;
    detail::SpatialHash<2> tile_keys(kTileKeyTol);
    detail::SpatialHash<2> starred(kTileKeyTol);
    out.tiles.push_back(seed);
    tile_keys.insert(centroid(seed));
    std::vector<std::size_t> layer{0};

    for (int d = 0; d < depth; ++d) {
        std::vector<std::size_t> next;
        for (std::size_t ti : layer) {
            for (int c = 0; c < 3; ++c) {
                const DiskPoint v = out.tiles[ti].corner[c];
                if (!starred.insert(v).second) continue;
                std::vector<std::size_t> star{ti};
                for (std::size_t s = 0; s < star.size(); ++s) {
                    const HypTile t = out.tiles[star[s]];
                    const int i = corner_at(t, v);
                    for (int j = 0; j < 3; ++j) {
                        if (j == i) continue;
                        HypTile n = across(t, i, j);
                        const auto [idx, fresh] = tile_keys.insert(centroid(n));
                        if (fresh) {
                            out.tiles.push_back(n);
                            next.push_back(idx);
                        }
                        if (std::find(star.begin(), star.end(), idx) == star.end()) star.push_back(idx);
                    }
                }
            }
        }
        layer = std::move(next);
    }

    // Boundary of the union: edges used by exactly one tile.
    detail::SpatialHash<2> vertex_ids(1e-9);
    std::map<std::pair<std::size_t, std::size_t>, int> edge_use;
    std::map<std::pair<std::size_t, std::size_t>, std::pair<DiskPoint, DiskPoint>> edge_ends;
    for (const auto& t : out.tiles) {
        std::array<std::size_t, 3> id{};
        for (int i = 0; i < 3; ++i) id[i] = vertex_ids.insert(t.corner[i]).first;
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3;
            const auto key = std::minmax(id[i], id[j]);
            ++edge_use[key];
            edge_ends[key] = {t.corner[i], t.corner[j]};
        }
    }
    double radius = std::numeric_limits<double>::infinity();
    for (const auto& [key, uses] : edge_use) {
        if (uses != 1) continue;
        const auto& [a, b] = edge_ends[key];
        radius = std::min(radius, origin_segment_distance(a, b));
    }
    out.covered_radius = radius;
    return out;
}

void require_triangle_group(int p, int q, int r) {
    if (p < 2 || q < 2 || r < 2) throw Error(ErrorKind::ParameterDomain, "p, q, r must be at least 2");
    // 1/p + 1/q + 1/r < 1 in exact integer arithmetic.
    if (!(static_cast<long long>(q) * r + static_cast<long long>(p) * r + static_cast<long long>(p) * q <
          static_cast<long long>(p) * q * r))
        throw Error(ErrorKind::ParameterDomain, "1/p + 1/q + 1/r must be less than 1 for a hyperbolic triangle group");
}

void require_rotation(const RotationTilingParams& rp) {
    if (rp.m < 3) throw Error(ErrorKind::ParameterDomain, "m must be at least 3");
    for (double a : {rp.alpha, rp.beta, rp.gamma})
        if (!std::isfinite(a) || !(a > 0.0)) throw Error(ErrorKind::ParameterDomain, "angles must be positive");
    if (std::abs(rp.alpha + rp.beta + rp.gamma - 2.0 * kPi / rp.m) > 1e-12)
        throw Error(ErrorKind::ParameterDomain, "angles must sum to 2 pi / m");
}

void require_depth(int depth) {
    if (depth < 0) throw Error(ErrorKind::ParameterDomain, "depth must be nonnegative");
}

}  // namespace

HypTile triangle_group_seed(int p, int q, int r) {
    require_triangle_group(p, q, r);
    return seed_from_angles(kPi / p, kPi / q, kPi / r);
}

HypTile rotation_seed(double alpha, double beta, double gamma) {
    return seed_from_angles(alpha, beta, gamma);
}

HypTiling tile_triangle_group(const TriangleGroupParams& params) {
    require_depth(params.depth);
    const HypTile seed = triangle_group_seed(params.p, params.q, params.r);
    return grow(seed, params.depth, [](const HypTile& t, int i, int j) {
        const int k = 3 - i - j;
        HypTile n = t;
        n.corner[k] = reflect_through(t.corner[i], t.corner[j], t.corner[k]);
        return n;
    });
}

HypTiling tile_rotation(const RotationTilingParams& params) {
    require_rotation(params);
    require_depth(params.depth);
    const HypTile seed = rotation_seed(params.alpha, params.beta, params.gamma);
    return grow(seed, params.depth, [](const HypTile& t, int i, int j) {
        const int k = 3 - i - j;
        const DiskPoint m = hyp_midpoint(t.corner[i], t.corner[j]);
        HypTile n = t;
        n.corner[i] = t.corner[j];
        n.corner[j] = t.corner[i];
        n.corner[k] = half_turn(m, t.corner[k]);
        return n;
    });
}

namespace {

struct PointCollector {
    detail::SpatialHash<2> hash{Tolerance{}.dedup_tol};
    std::vector<std::string> labels;

    void add(const DiskPoint& p, const std::string& label) {
        if (hash.insert(p).second) labels.push_back(label);
    }
    PatchConfig finish(double radius) {
        return PatchConfig(hash.points(), radius, std::move(labels));
    }
};

}  // namespace

PatchConfig gen_hyp_triangle_group(const TriangleGroupParams& params, VertexTypes types) {
    if (!types.any()) throw Error(ErrorKind::ParameterDomain, "at least one vertex type must be selected");
    const HypTiling tiling = tile_triangle_group(params);
    const std::array<bool, 3> on{types.p_centers, types.q_centers, types.r_centers};
    static const std::array<std::string, 3> names{"p_center", "q_center", "r_center"};
    PointCollector pc;
    for (const auto& t : tiling.tiles)
        for (int i = 0; i < 3; ++i)
            if (on[t.type[i]]) pc.add(t.corner[i], names[t.type[i]]);
    return pc.finish(tiling.covered_radius);
}

PatchConfig gen_hyp_rotation_tiling(const RotationTilingParams& params, RotationSets sets) {
    if (!sets.any()) throw Error(ErrorKind::ParameterDomain, "at least one point set must be selected");
    const HypTiling tiling = tile_rotation(params);
    PointCollector pc;
    for (const auto& t : tiling.tiles) {
        if (sets.vertices)
            for (int i = 0; i < 3; ++i) pc.add(t.corner[i], "vertex");
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3;
            const int lo = std::min(t.type[i], t.type[j]);
            const int hi = std::max(t.type[i], t.type[j]);
            const DiskPoint m = hyp_midpoint(t.corner[i], t.corner[j]);
            if (lo == 0 && hi == 1 && sets.mid_ab) pc.add(m, "mid_ab");
            if (lo == 0 && hi == 2 && sets.mid_ac) pc.add(m, "mid_ac");
            if (lo == 1 && hi == 2 && sets.mid_bc) pc.add(m, "mid_bc");
        }
    }
    return pc.finish(tiling.covered_radius);
}

}  // namespace balanced
