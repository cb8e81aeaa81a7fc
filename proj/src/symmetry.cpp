#include "balanced/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "balanced/generators.hpp"

namespace balanced {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleTol = 1e-9;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

// Candidate angles: each member of the first class can be the image of the
// first member; pi is always tried.
std::vector<double> candidate_angles(const std::vector<PlaneVector>& first_class) {
    std::vector<double> out{std::numbers::pi};
    if (!first_class.empty()) {
        const double a0 = std::atan2(first_class[0].y(), first_class[0].x());
        for (const auto& v : first_class) out.push_back(wrap_angle(std::atan2(v.y(), v.x()) - a0));
    }
    std::sort(out.begin(), out.end());
    std::vector<double> unique;
    for (double a : out) {
        if (a <= kAngleTol || a >= kTwoPi - kAngleTol) continue;
        if (unique.empty() || a - unique.back() > kAngleTol) unique.push_back(a);
    }
    return unique;
}

// Offsets of the nearest neighbours of base, found by widening the search.
template <typename Offsets>
std::vector<PlaneVector> first_class(Offsets&& offsets_within, double start, const Tolerance& tol) {
    for (double r = start; r < start * 64.0; r *= 2.0) {
        std::vector<PlaneVector> offs = offsets_within(r);
        if (offs.empty()) continue;
        std::vector<double> dists;
        for (const auto& v : offs) dists.push_back(v.norm());
        const DistanceGroups g = group_distances(dists, tol);
        std::vector<PlaneVector> out;
        for (std::size_t k : g.members[0]) out.push_back(offs[k]);
        return out;
    }
    return {};
}

}  // namespace

std::vector<double> rotation_symmetries_about(const PeriodicConfig& c, const PlanePoint& p, const Tolerance& tol) {
    const double min_d = min_distance(c, tol);
    auto offsets = [&](double r) {
        std::vector<PlaneVector> out;
        for (const auto& h : points_within(c, p, r, tol)) out.push_back(h.point - p);
        return out;
    };
    const auto window = points_within(c, p, 4.0 * min_d, tol);
    std::vector<double> out;
    for (double a : candidate_angles(first_class(offsets, min_d, tol))) {
        const bool ok = std::all_of(window.begin(), window.end(), [&](const LatticeHit& h) {
            return contains(c, rotate_plane(h.point, p, a), tol);
        });
        if (ok) out.push_back(a);
    }
    return out;
}

std::vector<double> rotation_symmetries_about(const PlaneSet& c, std::size_t i, const Tolerance& tol) {
    if (c.size() < 2) return {};
    const double min_d = min_distance(c);
    const PlanePoint& p = c[i];
    auto offsets = [&](double r) {
        std::vector<PlaneVector> out;
        for (std::size_t j : points_within(c, p, r, tol)) out.push_back(c[j] - p);
        return out;
    };
    auto in_set = [&](const PlanePoint& q) {
        return std::any_of(c.points().begin(), c.points().end(),
                           [&](const PlanePoint& s) { return (s - q).norm() <= tol.dedup_tol; });
    };
    const auto window = points_within(c, p, 4.0 * min_d, tol);
    std::vector<double> out;
    for (double a : candidate_angles(first_class(offsets, min_d, tol))) {
        const bool ok = std::all_of(window.begin(), window.end(),
                                    [&](std::size_t j) { return in_set(rotate_plane(c[j], p, a)); });
        if (ok) out.push_back(a);
    }
    return out;
}

double witness_mismatch(const PeriodicConfig& c, const SymmetryWitness& w, double window_radius) {
    double worst = 0.0;
    for (const auto& h : points_within(c, w.center, window_radius))
        worst = std::max(worst, nearest_distance(c, rotate_plane(h.point, w.center, w.angle)));
    return worst;
}

GroupBalanceResult is_group_balanced(const PeriodicConfig& c, const Tolerance& tol) {
    GroupBalanceResult r;
    r.verdict = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto angles = rotation_symmetries_about(c, c.motif_point(i), tol);
        r.points.push_back(i);
        if (angles.empty()) {
            r.witnesses.emplace_back(std::nullopt);
            r.verdict = false;
        } else {
            r.witnesses.emplace_back(SymmetryWitness{c.motif_point(i), angles.front()});
        }
    }
    return r;
}

GroupBalanceResult is_group_balanced(const PlaneSet& c, const Tolerance& tol) {
    GroupBalanceResult r;
    if (c.size() < 2) return r;
    const double window = 4.0 * min_distance(c);
    r.verdict = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.known_radius(i) < window) continue;
        const auto angles = rotation_symmetries_about(c, i, tol);
        r.points.push_back(i);
        if (angles.empty()) {
            r.witnesses.emplace_back(std::nullopt);
            r.verdict = false;
        } else {
            r.witnesses.emplace_back(SymmetryWitness{c[i], angles.front()});
        }
    }
    if (r.points.empty()) r.verdict = false;
    return r;
}

// ------------------------------------------------------------------ classify

const char* to_string(ConfigTag tag) {
    switch (tag) {
        case ConfigTag::TriangularLattice: return "TriangularLattice";
        case ConfigTag::Lattice: return "Lattice";
        case ConfigTag::LatticeWithMidpoints: return "LatticeWithMidpoints";
        case ConfigTag::HexVertices: return "HexVertices";
        case ConfigTag::HexWithMidpoints: return "HexWithMidpoints";
        case ConfigTag::HexWithMidpointsAndCenters: return "HexWithMidpointsAndCenters";
        case ConfigTag::Line: return "Line";
        case ConfigTag::Unknown: return "Unknown";
    }
    return "Unknown";
}

namespace {

bool is_hexagonal(const Eigen::Matrix2d& b) {
    const PlaneVector v1 = b.col(0), v2 = b.col(1);
    const double ratio = v1.norm() / v2.norm();
    const double angle = std::atan2(std::abs(v1.x() * v2.y() - v1.y() * v2.x()), v1.dot(v2));
    return std::abs(ratio - 1.0) <= 1e-9 && std::abs(angle - std::numbers::pi / 3.0) <= 1e-9;
}

// Difference of two fractional points reduced to the nearest lattice offset,
// measured in Cartesian length.
double wrapped_gap(const Eigen::Matrix2d& b, const Eigen::Vector2d& f, const Eigen::Vector2d& g) {
    const Eigen::Vector2d d = f - g;
    double best = std::numeric_limits<double>::infinity();
    for (int da = -1; da <= 1; ++da)
        for (int db = -1; db <= 1; ++db) {
            const Eigen::Vector2d k(std::round(d.x()) + da, std::round(d.y()) + db);
            best = std::min(best, (b * (d - k)).norm());
        }
    return best;
}

enum class Role { Vertex, Midpoint, Center };

struct HexTemplate {
    ConfigTag tag;
    SubsetFlags flags;
    std::vector<Eigen::Vector2d> points;
    std::vector<Role> roles;
};

std::vector<HexTemplate> hex_templates() {
    const Eigen::Vector2d va(1.0 / 3.0, 1.0 / 3.0), vb(2.0 / 3.0, 2.0 / 3.0);
    const Eigen::Vector2d m1(0.5, 0.0), m2(0.0, 0.5), m3(0.5, 0.5), ctr(0.0, 0.0);
    using R = Role;
    return {
        {ConfigTag::HexVertices, {true, false, false}, {va, vb}, {R::Vertex, R::Vertex}},
        {ConfigTag::HexWithMidpoints,
         {true, true, false},
         {va, vb, m1, m2, m3},
         {R::Vertex, R::Vertex, R::Midpoint, R::Midpoint, R::Midpoint}},
        {ConfigTag::HexWithMidpointsAndCenters,
         {true, true, true},
         {va, vb, m1, m2, m3, ctr},
         {R::Vertex, R::Vertex, R::Midpoint, R::Midpoint, R::Midpoint, R::Center}},
    };
}

// Per-point check on the normalized configuration: vertices see 3 neighbours
// at 120 degrees, midpoints 2 opposite neighbours, centers 6.
bool role_signature_ok(const PeriodicConfig& c, std::size_t i, Role role, const Tolerance& tol) {
    const PlanePoint& p = c.motif_point(i);
    auto offsets = [&](double r) {
        std::vector<PlaneVector> out;
        for (const auto& h : points_within(c, p, r, tol)) out.push_back(h.point - p);
        return out;
    };
    const auto first = first_class(offsets, 1.0, tol);
    const std::size_t want = role == Role::Vertex ? 3 : role == Role::Midpoint ? 2 : 6;
    if (first.size() != want) return false;
    PlaneVector sum = PlaneVector::Zero();
    for (const auto& v : first) sum += v.normalized();
    return sum.norm() <= 1e-9;
}

// Translation of the template (fractional) matching the motif, if any.
std::optional<Eigen::Vector2d> match_template(const PeriodicConfig& c, const HexTemplate& t,
                                              std::vector<std::size_t>& assignment) {
    const double tol = 1e-9 * c.basis().col(0).norm();
    for (const auto& anchor : t.points) {
        const Eigen::Vector2d shift = c.motif()[0] - anchor;
        assignment.assign(t.points.size(), c.size());
        bool ok = true;
        for (std::size_t k = 0; k < t.points.size() && ok; ++k) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (wrapped_gap(c.basis(), c.motif()[i], t.points[k] + shift) <= tol) {
                    assignment[k] = i;
                    break;
                }
            }
            ok = assignment[k] < c.size();
        }
        if (ok) return shift;
    }
    return std::nullopt;
}

}  // namespace

ConfigClass classify(const PeriodicConfig& input, const Tolerance& tol) {
    ConfigClass out;
    const PeriodicConfig canon = canonical_basis(primitive_periods(input, tol));
    const double min_d = min_distance(canon, tol);
    out.min_distance = min_d;
    const PeriodicConfig unit = transformed(canon, 0.0, 1.0 / min_d, PlaneVector::Zero());
    const Eigen::Matrix2d& b = canon.basis();
    const std::size_t k = canon.size();

    if (k == 1) {
        out.tag = is_hexagonal(b) ? ConfigTag::TriangularLattice : ConfigTag::Lattice;
        out.basis = b;
        out.anchor = canon.motif_point(0);
        return out;
    }

    if (k == 3) {
        const double gap_tol = 1e-9 * b.col(0).norm();
        bool half = true;
        for (std::size_t i = 0; i < 3 && half; ++i)
            for (std::size_t j = i + 1; j < 3 && half; ++j) {
                const Eigen::Vector2d d = 2.0 * (canon.motif()[j] - canon.motif()[i]);
                half = wrapped_gap(b, d, Eigen::Vector2d::Zero()) <= 2.0 * gap_tol;
            }
        if (half) {
            auto doubled = [&](std::size_t j) {
                // Round before wrapping so offsets just below an integer map to 0, not 2.
                const Eigen::Vector2d d = 2.0 * (canon.motif()[j] - canon.motif()[0]);
                auto mod2 = [](double x) { return double(((static_cast<long long>(std::llround(x)) % 2) + 2) % 2); };
                return Eigen::Vector2d(mod2(d.x()), mod2(d.y()));
            };
            out.tag = ConfigTag::LatticeWithMidpoints;
            out.basis.col(0) = b * doubled(1);
            out.basis.col(1) = b * doubled(2);
            out.anchor = canon.motif_point(0);
            return out;
        }
    }

    if ((k == 2 || k == 5 || k == 6) && is_hexagonal(b)) {
        for (const auto& t : hex_templates()) {
            if (t.points.size() != k) continue;
            std::vector<std::size_t> assignment;
            const auto shift = match_template(canon, t, assignment);
            if (!shift) continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j) ok = role_signature_ok(unit, assignment[j], t.roles[j], tol);
            if (!ok) break;
            out.tag = t.tag;
            out.basis = b;
            out.size = b.col(0).norm() / std::sqrt(3.0);
            out.anchor = b * *shift;
            return out;
        }
    }
    return out;
}

ConfigClass classify(const PlaneSet& input, const Tolerance& tol) {
    ConfigClass out;
    if (input.size() < 3) return out;
    const double min_d = min_distance(input);
    out.min_distance = min_d;
    const PlaneSet unit = normalized(input);

    // Extreme points: farthest from an arbitrary point, then farthest from that.
    auto farthest = [&](const PlanePoint& from) {
        return *std::max_element(unit.points().begin(), unit.points().end(), [&](const auto& a, const auto& b) {
            return (a - from).squaredNorm() < (b - from).squaredNorm();
        });
    };
    const PlanePoint ea = farthest(unit[0]);
    const PlanePoint eb = farthest(ea);
    const PlaneVector dir = (eb - ea).normalized();
    std::vector<double> along;
    for (const auto& p : unit.points()) {
        const PlaneVector rel = p - ea;
        if (std::abs(rel.x() * dir.y() - rel.y() * dir.x()) > tol.dedup_tol) return out;
        along.push_back(rel.dot(dir));
    }
    std::sort(along.begin(), along.end());
    for (std::size_t i = 1; i < along.size(); ++i)
        if (std::abs(along[i] - along[i - 1] - 1.0) > tol.class_tol) return out;

    out.tag = ConfigTag::Line;
    out.size = min_d;
    out.count = static_cast<int>(input.size());
    out.direction = dir;
    out.anchor = ea * min_d;
    return out;
}

PeriodicConfig regenerate(const ConfigClass& cls) {
    const Eigen::Matrix2d& b = cls.basis;
    switch (cls.tag) {
        case ConfigTag::TriangularLattice:
        case ConfigTag::Lattice:
            return PeriodicConfig::from_vectors(b.col(0), b.col(1), {b.inverse() * cls.anchor});
        case ConfigTag::LatticeWithMidpoints: {
            const Eigen::Vector2d a = b.inverse() * cls.anchor;
            return PeriodicConfig::from_vectors(b.col(0), b.col(1),
                                                {a, a + Eigen::Vector2d(0.5, 0.0), a + Eigen::Vector2d(0.0, 0.5)});
        }
        case ConfigTag::HexVertices:
        case ConfigTag::HexWithMidpoints:
        case ConfigTag::HexWithMidpointsAndCenters: {
            SubsetFlags flags{true, cls.tag != ConfigTag::HexVertices, cls.tag == ConfigTag::HexWithMidpointsAndCenters};
            const double angle = std::atan2(b(1, 0), b(0, 0));
            return transformed(gen_hexagonal(cls.size, flags), angle, 1.0, cls.anchor);
        }
        case ConfigTag::Line:
        case ConfigTag::Unknown:
            break;
    }
    throw Error(ErrorKind::ParameterDomain, std::string("cannot regenerate a periodic configuration from ") +
                                                to_string(cls.tag));
}

PlaneSet regenerate_line(const ConfigClass& cls) {
    if (cls.tag != ConfigTag::Line) throw Error(ErrorKind::ParameterDomain, "class is not a line");
    std::vector<PlanePoint> pts;
    for (int i = 0; i < cls.count; ++i) pts.push_back(cls.anchor + (i * cls.size) * cls.direction);
    return PlaneSet(std::move(pts), Window::Segment);
}

std::vector<NeighborCase> neighbor_case_signature(const PeriodicConfig& c, const Tolerance& tol) {
    const double min_d = min_distance(c, tol);
    std::vector<NeighborCase> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        int count = 0;
        for (const auto& h : points_within(c, c.motif_point(i), min_d, tol))
            if (std::abs((h.point - c.motif_point(i)).norm() - min_d) <= tol.class_tol) ++count;
        if (count == 0) continue;
        NeighborCase nc{c.label(i), count};
        if (std::find(out.begin(), out.end(), nc) == out.end()) out.push_back(nc);
    }
    std::sort(out.begin(), out.end(), [](const NeighborCase& a, const NeighborCase& b) {
        return a.count != b.count ? a.count > b.count : a.label < b.label;
    });
    return out;
}

}  // namespace balanced
