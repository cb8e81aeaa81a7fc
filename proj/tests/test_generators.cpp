#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "balanced/generators.hpp"
#include "balanced/verify.hpp"
#include "support.hpp"

using namespace balanced;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

int count_label(const auto& c, const std::string& label) {
    int n = 0;
    for (const auto& l : c.labels()) n += l == label;
    return n;
}

// Tile corners within tol of z, with their angle types.
std::vector<std::pair<const HypTile*, int>> corners_at(const HypTiling& t, const DiskPoint& z) {
    std::vector<std::pair<const HypTile*, int>> out;
    for (const auto& tile : t.tiles)
        for (int k = 0; k < 3; ++k)
            if ((tile.corner[k] - z).norm() < 1e-9) out.emplace_back(&tile, k);
    return out;
}

double tile_angle(const HypTile& t, int k) {
    return testing::corner_angle(t.corner[k], t.corner[(k + 1) % 3], t.corner[(k + 2) % 3]);
}

}  // namespace

TEST_CASE("subset flag parsing") {
    const auto f = SubsetFlags::parse("vertices,centers");
    CHECK(f.vertices);
    CHECK_FALSE(f.edge_midpoints);
    CHECK(f.face_centers);
    CHECK(SubsetFlags::parse(f.to_string()).to_string() == f.to_string());
    CHECK_THROWS_AS(SubsetFlags::parse("vertices,faces"), Error);
    CHECK_THROWS_AS(SubsetFlags::parse(""), Error);
    std::set<std::string> seen;
    for (const auto& s : SubsetFlags::all_nonempty()) {
        CHECK(s.any());
        seen.insert(s.to_string());
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("lattice motifs") {
    const auto v = gen_lattice({1, 0}, {0, 1}, SubsetFlags::parse("vertices"));
    CHECK(v.size() == 1);
    const auto vm = gen_lattice({1, 0}, {0, 1}, SubsetFlags::parse("vertices,midpoints"));
    REQUIRE(vm.size() == 3);
    std::vector<PlanePoint> want{{0, 0}, {0.5, 0}, {0, 0.5}};
    CHECK(testing::same_points(vm.motif_points(), want, 1e-15));
    CHECK(primitive_periods(gen_lattice({1, 0}, {0, 1}, SubsetFlags::parse("vertices,midpoints,centers"))).size() ==
          1);
    CHECK_THROWS_AS(gen_lattice({1, 0}, {2, 0}, SubsetFlags::parse("vertices")), Error);
}

TEST_CASE("all three lattice sets form the half-scale lattice") {
    for (int i = 0; i < 5; ++i) {
        const PlaneVector v1(testing::uniform(0.8, 1.2), testing::uniform(-0.2, 0.2));
        const PlaneVector v2(testing::uniform(-0.5, 0.5), testing::uniform(0.8, 1.5));
        const auto all = primitive_periods(gen_lattice(v1, v2, SubsetFlags::parse("vertices,midpoints,centers")));
        const auto half = gen_lattice(v1 / 2, v2 / 2, SubsetFlags::parse("vertices"));
        for (int k = 0; k < 1000; ++k) {
            const PlanePoint probe = k % 2 ? PlanePoint(half.basis() * Eigen::Vector2d(k % 9 - 4, k % 7 - 3))
                                           : PlanePoint(testing::uniform(-4, 4), testing::uniform(-4, 4));
            CHECK(contains(all, probe) == contains(half, probe));
        }
    }
}

TEST_CASE("triangular lattice") {
    const auto t = gen_triangular(1.0);
    CHECK(min_distance(t) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_neighbor_count(t) == 6);
    // Brute-force classes from the basis.
    std::map<long, int> counts;
    for (int a = -4; a <= 4; ++a)
        for (int b = -4; b <= 4; ++b) {
            const double d = (t.basis() * Eigen::Vector2d(a, b)).norm();
            if (d > 1e-9 && d < 2.0 + 1e-9) counts[std::lround(d * 1e6)]++;
        }
    const auto classes = distance_classes(t, {0, 0}, 2.0);
    REQUIRE(classes.size() == counts.size());
    auto it = counts.begin();
    for (const auto& c : classes) {
        CHECK(std::lround(c.distance * 1e6) == it->first);
        CHECK(int(c.members.size()) == it->second);
        CHECK(c.members.size() == 6);
        ++it;
    }
    CHECK(classes[1].distance == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("hexagon tilings") {
    const auto v = gen_hexagonal(1.0, SubsetFlags::parse("vertices"));
    CHECK(v.size() == 2);
    for (const auto& m : v.motif_points()) {
        const auto first = distance_classes(v, m, 1.0);
        REQUIRE(first.size() == 1);
        REQUIRE(first[0].members.size() == 3);
        const Eigen::Vector2d a = first[0].members[0] - m, b = first[0].members[1] - m;
        CHECK(std::acos(a.normalized().dot(b.normalized())) == doctest::Approx(2 * kPi / 3));
    }

    const auto vm = gen_hexagonal(2.0, SubsetFlags::parse("vertices,midpoints"));
    CHECK(vm.size() == 5);
    CHECK(min_distance(vm) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < vm.size(); ++i) {
        const auto first = distance_classes(vm, vm.motif_point(i), 1.0);
        CHECK(first[0].members.size() == (vm.label(i) == "vertex" ? 3u : 2u));
    }

    const auto all = gen_hexagonal(2.0, SubsetFlags::parse("vertices,midpoints,centers"));
    CHECK(all.size() == 6);
    CHECK(count_label(all, "vertex") == 2);
    CHECK(count_label(all, "midpoint") == 3);
    CHECK(count_label(all, "center") == 1);
    CHECK(min_distance(all) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalized planar families have unit minimal distance") {
    for (const auto& flags : SubsetFlags::all_nonempty()) {
        CHECK(min_distance(normalized(gen_hexagonal(1.7, flags))) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(min_distance(normalized(gen_lattice({1.3, 0.1}, {0.4, 1.9}, flags))) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(min_distance(normalized(gen_triangular(0.3))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(min_distance(normalized(gen_line(9, 0.7))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("line windows") {
    const auto l = gen_line(3, 1.0);
    std::vector<PlanePoint> want{{-1, 0}, {0, 0}, {1, 0}};
    CHECK(testing::same_points(l.points(), want, 1e-15));
    CHECK(l.window() == Window::Segment);
    const auto l9 = gen_line(9, 1.0);
    for (std::size_t i = 0; i < l9.size(); ++i)
        CHECK(l9.known_radius(i) == doctest::Approx(4.0 - std::abs(l9[i].x())));
    CHECK_THROWS_AS(gen_line(2, 1.0), Error);
}

TEST_CASE("spherical tiling counts") {
    struct Row {
        Solid s;
        int v, e, f;
    };
    for (const Row& r : {Row{Solid::Tetrahedron, 4, 6, 4}, Row{Solid::Cube, 8, 12, 6}, Row{Solid::Octahedron, 6, 12, 8},
                         Row{Solid::Dodecahedron, 20, 30, 12}, Row{Solid::Icosahedron, 12, 30, 20}}) {
        CAPTURE(std::string(to_string(r.s)));
        CHECK(gen_sphere(r.s, SubsetFlags::parse("vertices")).size() == std::size_t(r.v));
        CHECK(gen_sphere(r.s, SubsetFlags::parse("midpoints")).size() == std::size_t(r.e));
        CHECK(gen_sphere(r.s, SubsetFlags::parse("centers")).size() == std::size_t(r.f));
        CHECK(gen_sphere(r.s, SubsetFlags::parse("vertices,midpoints,centers")).size() == std::size_t(r.v + r.e + r.f));
        const auto all = gen_sphere(r.s, SubsetFlags::parse("vertices,midpoints,centers"));
        for (const auto& p : all.points())
            CHECK(std::abs(p.norm() - 1.0) < 1e-12);
    }
    std::vector<SpherePoint> axes{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    const auto oct = gen_sphere(Solid::Octahedron, SubsetFlags::parse("vertices"));
    CHECK(oct.size() == 6);
    for (const auto& a : axes) {
        bool found = false;
        for (const auto& p : oct.points()) found = found || (p - a).norm() < 1e-12;
        CHECK(found);
    }
    const auto ngon = gen_sphere(Solid::Ngon, SubsetFlags::parse("vertices,centers"), 5);
    CHECK(ngon.size() == 7);
    CHECK(count_label(ngon, "center") == 2);
    CHECK(gen_sphere(Solid::Cube, SubsetFlags::parse("vertices,midpoints,centers")).size() == 26);
    CHECK_THROWS_AS(gen_sphere(Solid::Ngon, SubsetFlags::parse("vertices"), 1), Error);
    CHECK(parse_solid("icosahedron") == Solid::Icosahedron);
    CHECK_THROWS_AS(parse_solid("torus"), Error);
}

TEST_CASE("triangle group seed measures") {
    for (auto [p, q, r] : {std::array{2, 3, 7}, std::array{2, 4, 5}, std::array{3, 3, 4}, std::array{4, 4, 4}}) {
        const HypTile seed = triangle_group_seed(p, q, r);
        CHECK(seed.corner[0].norm() < 1e-15);
        CHECK(tile_angle(seed, 0) == doctest::Approx(kPi / p).epsilon(1e-10));
        CHECK(tile_angle(seed, 1) == doctest::Approx(kPi / q).epsilon(1e-10));
        CHECK(tile_angle(seed, 2) == doctest::Approx(kPi / r).epsilon(1e-10));
        const double ap = kPi / p, aq = kPi / q, ar = kPi / r;
        const double side_r = std::acosh((std::cos(ap) * std::cos(aq) + std::cos(ar)) / (std::sin(ap) * std::sin(aq)));
        CHECK(hyp_dist(seed.corner[0], seed.corner[1]) == doctest::Approx(side_r).epsilon(1e-12));
        CHECK(hyp_side_from_angles(ap, aq, ar) == doctest::Approx(side_r).epsilon(1e-12));
    }
}

TEST_CASE("triangle group tilings") {
    const auto seed_only = gen_hyp_triangle_group({2, 3, 7, 0}, VertexTypes::parse("p"));
    REQUIRE(seed_only.size() == 1);
    CHECK(seed_only[0].norm() < 1e-15);

    for (auto [p, q, r] : {std::array{2, 3, 7}, std::array{2, 4, 5}, std::array{3, 3, 4}}) {
        const HypTiling t = tile_triangle_group({p, q, r, 3});
        // 2p corners of angle pi/p meet at the origin, and every tile is a
        // congruent copy of the seed.
        const auto at_origin = corners_at(t, {0, 0});
        CHECK(int(at_origin.size()) == 2 * p);
        double total = 0;
        for (auto [tile, k] : at_origin) {
            CHECK(tile->type[k] == 0);
            total += tile_angle(*tile, k);
        }
        CHECK(total == doctest::Approx(2 * kPi).epsilon(1e-10));
        const HypTile seed = triangle_group_seed(p, q, r);
        const double s01 = hyp_dist(seed.corner[0], seed.corner[1]);
        for (const auto& tile : t.tiles) {
            int i0 = 0, i1 = 0;
            for (int k = 0; k < 3; ++k) {
                if (tile.type[k] == 0) i0 = k;
                if (tile.type[k] == 1) i1 = k;
            }
            CHECK(hyp_dist(tile.corner[i0], tile.corner[i1]) == doctest::Approx(s01).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(gen_hyp_triangle_group({2, 3, 6, 2}, VertexTypes::parse("p")), Error);
    CHECK_THROWS_AS(gen_hyp_triangle_group({2, 3, 5, 2}, VertexTypes::parse("p")), Error);
    CHECK_THROWS_AS(gen_hyp_triangle_group({2, 3, 7, -1}, VertexTypes::parse("p")), Error);
    CHECK_THROWS_AS(VertexTypes::parse("s"), Error);
}

TEST_CASE("every patch point inside the covered radius is generated") {
    // Oracle: tile to a larger depth and compare inside the smaller radius.
    const auto small = gen_hyp_triangle_group({2, 3, 7, 4}, VertexTypes::parse("p,q,r"));
    const auto large = gen_hyp_triangle_group({2, 3, 7, 6}, VertexTypes::parse("p,q,r"));
    int inside = 0;
    for (const auto& z : large.points()) {
        if (hyp_norm(z) > small.patch_radius() - 1e-9) continue;
        ++inside;
        bool found = false;
        for (const auto& w : small.points()) found = found || (z - w).norm() < 1e-9;
        CHECK(found);
    }
    CHECK(inside > 0);
}

TEST_CASE("same-type distances form tight shells") {
    for (auto [p, q, r] : {std::array{2, 3, 7}, std::array{3, 3, 4}}) {
        const auto c = gen_hyp_triangle_group({p, q, r, 5}, VertexTypes::parse("q"));
        std::vector<double> d;
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (c.verifiable_radius(i) > 0 && c.verifiable_radius(j) > 0) d.push_back(hyp_dist(c[i], c[j]));
        std::sort(d.begin(), d.end());
        std::size_t start = 0;
        int shells = 0;
        for (std::size_t k = 1; k <= d.size(); ++k)
            if (k == d.size() || d[k] - d[k - 1] > 1e-6) {
                CHECK(d[k - 1] - d[start] < 1e-9);
                start = k;
                ++shells;
            }
        CHECK(shells > 3);
    }
}

TEST_CASE("rotation tilings") {
    const RotationTilingParams eq{40 * kDeg, 40 * kDeg, 40 * kDeg, 3, 0};
    CHECK(gen_hyp_rotation_tiling(eq, RotationSets::parse("vertices")).size() == 3);

    for (auto [a, b, g] : {std::array{40.0, 40.0, 40.0}, std::array{30.0, 40.0, 50.0}}) {
        const RotationTilingParams params{a * kDeg, b * kDeg, g * kDeg, 3, 3};
        const HypTile seed = rotation_seed(params.alpha, params.beta, params.gamma);
        CHECK(tile_angle(seed, 0) == doctest::Approx(params.alpha).epsilon(1e-10));
        CHECK(tile_angle(seed, 1) == doctest::Approx(params.beta).epsilon(1e-10));
        CHECK(tile_angle(seed, 2) == doctest::Approx(params.gamma).epsilon(1e-10));

        const HypTiling t = tile_rotation(params);
        // 3m corners around the origin, m of each angle, summing to 2 pi.
        const auto at_origin = corners_at(t, {0, 0});
        CHECK(at_origin.size() == 9);
        std::map<int, int> per_type;
        double total = 0;
        for (auto [tile, k] : at_origin) {
            per_type[tile->type[k]]++;
            total += tile_angle(*tile, k);
        }
        CHECK(per_type[0] == 3);
        CHECK(per_type[1] == 3);
        CHECK(per_type[2] == 3);
        CHECK(total == doctest::Approx(2 * kPi).epsilon(1e-10));

        // The half-turn about each seed edge midpoint gives a tile sharing
        // that edge with the corners swapped.
        for (int e = 0; e < 3; ++e) {
            const DiskPoint u = seed.corner[e], v = seed.corner[(e + 1) % 3], w = seed.corner[(e + 2) % 3];
            bool found = false;
            for (const auto& tile : t.tiles) {
                int hu = -1, hv = -1;
                for (int k = 0; k < 3; ++k) {
                    if ((tile.corner[k] - u).norm() < 1e-9) hu = k;
                    if ((tile.corner[k] - v).norm() < 1e-9) hv = k;
                }
                if (hu < 0 || hv < 0) continue;
                const int hw = 3 - hu - hv;
                if ((tile.corner[hw] - w).norm() < 1e-9) continue;  // the seed itself
                // Swapped types, and the far corner mirrors w through the midpoint.
                found = tile.type[hu] == (e + 1) % 3 && tile.type[hv] == e &&
                        std::abs(hyp_dist(tile.corner[hw], u) - hyp_dist(w, v)) < 1e-9 &&
                        std::abs(hyp_dist(tile.corner[hw], v) - hyp_dist(w, u)) < 1e-9;
            }
            CHECK(found);
        }
    }
    CHECK_THROWS_AS(gen_hyp_rotation_tiling({40 * kDeg, 40 * kDeg, 41 * kDeg, 3, 1}, RotationSets::parse("vertices")),
                    Error);
    CHECK_THROWS_AS(gen_hyp_rotation_tiling({60 * kDeg, 60 * kDeg, 60 * kDeg, 2, 1}, RotationSets::parse("vertices")),
                    Error);
}
