#include <doctest.h>

#include <cmath>
#include <numbers>

#include "balanced/config.hpp"
#include "balanced/generators.hpp"
#include "support.hpp"

using namespace balanced;
using testing::uniform;

namespace {

const double kSqrt3 = std::sqrt(3.0);

PeriodicConfig square() { return gen_lattice({1, 0}, {0, 1}, SubsetFlags::parse("vertices")); }

// Distance from p to the configuration by scanning the raw basis.
double scan_nearest(const PeriodicConfig& c, const PlanePoint& p) {
    double best = 1e300;
    for (const auto& q : testing::scan_within(c, p, 3.0 * std::sqrt(c.cell_area()) + 3.0, 0.0, -1.0))
        best = std::min(best, (q - p).norm());
    return best;
}

}  // namespace

TEST_CASE("minimal distance examples") {
    CHECK(min_distance(square()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(min_distance(gen_hexagonal(1.0, SubsetFlags::parse("vertices"))) == doctest::Approx(1.0).epsilon(1e-12));
    try {
        min_distance(PlaneSet({PlanePoint(0, 0)}));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoPairs);
    }
}

TEST_CASE("minimal distance against a translate scan") {
    for (int i = 0; i < 50; ++i) {
        const PeriodicConfig c = testing::random_periodic(2);
        // A lattice translate is a neighbour, so the first basis vector
        // bounds the minimum.
        const double bound = c.v1().norm();
        double best = bound;
        for (const auto& m : c.motif_points())
            for (const auto& q : testing::scan_within(c, m, bound, 0.0, 1e-12)) best = std::min(best, (q - m).norm());
        CHECK(min_distance(c) == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("points within a radius") {
    CHECK(points_within(square(), {0, 0}, 1.0).size() == 4);
    CHECK(points_within(square(), {0, 0}, std::sqrt(2.0)).size() == 8);
}

TEST_CASE("points_within equals the translate scan") {
    const Tolerance tol;
    for (int i = 0; i < 60; ++i) {
        const PeriodicConfig c = testing::random_periodic();
        const double radius = uniform(0.5, 8.0);
        const PlanePoint base = uniform(0, 1) < 0.5 ? c.motif_point(0) : PlanePoint(uniform(-3, 3), uniform(-3, 3));
        std::vector<PlanePoint> got;
        for (const auto& h : points_within(c, base, radius, tol)) got.push_back(h.point);
        const auto want = testing::scan_within(c, base, radius, tol.class_tol, tol.dedup_tol);
        CHECK(testing::same_points(got, want, tol.dedup_tol));
    }
}

TEST_CASE("distance class examples") {
    const auto hex = gen_hexagonal(1.0, SubsetFlags::parse("vertices"));
    const auto classes = distance_classes(hex, hex.motif_point(0), 2.0);
    REQUIRE(classes.size() == 3);
    CHECK(classes[0].members.size() == 3);
    CHECK(classes[0].distance == doctest::Approx(1.0));
    CHECK(classes[1].members.size() == 6);
    CHECK(classes[1].distance == doctest::Approx(kSqrt3));
    CHECK(classes[2].members.size() == 3);
    CHECK(classes[2].distance == doctest::Approx(2.0));

    const auto sq = distance_classes(square(), {0, 0}, std::sqrt(2.0));
    REQUIRE(sq.size() == 2);
    CHECK(sq[0].members.size() == 4);
    CHECK(sq[1].members.size() == 4);

    const auto tri = distance_classes(gen_triangular(1.0), {0, 0}, 1.0);
    REQUIRE(tri.size() == 1);
    CHECK(tri[0].members.size() == 6);
}

TEST_CASE("distance classes are tight and separated on generated families") {
    const Tolerance tol;
    std::vector<PeriodicConfig> families{gen_triangular(1.0), gen_hexagonal(1.3, SubsetFlags::parse("vertices")),
                                         gen_hexagonal(2.0, SubsetFlags::parse("vertices,midpoints,centers")),
                                         gen_lattice({1, 0}, {0.4, 1.2}, SubsetFlags::parse("vertices,midpoints"))};
    for (const auto& c : families) {
        const double md = min_distance(c);
        for (const auto& m : c.motif_points()) {
            const auto classes = distance_classes(c, m, 6.0 * md, tol);
            for (std::size_t k = 0; k < classes.size(); ++k) {
                for (const auto& p : classes[k].members)
                    CHECK(std::abs((p - m).norm() - classes[k].distance) < 1e-9);
                if (k > 0) CHECK(classes[k].distance - classes[k - 1].distance > 2 * tol.class_tol);
            }
        }
    }
}

TEST_CASE("near-coincident distances are reported as ambiguous") {
    const std::vector<double> d{1.0, 1.0 + 1.5e-6, 2.0};
    Tolerance tol;
    const auto g = group_distances(d, tol);
    CHECK(g.any_ambiguous());
    const PlaneSet s({PlanePoint(0, 0), PlanePoint(1, 0), PlanePoint(0, 1.0 + 1.5e-6)});
    try {
        distance_classes(s, s[0], 2.0, tol);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AmbiguousClass);
    }
}

TEST_CASE("membership tests") {
    const auto c = gen_lattice({1.0, 0.2}, {0.3, 1.1}, SubsetFlags::parse("vertices"));
    for (int a = -4; a <= 4; ++a)
        for (int b = -4; b <= 4; ++b) CHECK(contains(c, c.basis() * Eigen::Vector2d(a, b)));
    CHECK_FALSE(contains(square(), {0.5, 0.0}));
    // Points just across the fundamental-domain boundary.
    CHECK(contains(square(), {1e-12, -1e-12}));
    CHECK(contains(square(), {-1e-12, 1.0 - 1e-12}));
}

TEST_CASE("membership agrees with the nearest-point oracle on a million probes") {
    const Tolerance tol;
    int disagreements = 0;
    long checked = 0;
    for (int cfg = 0; cfg < 10; ++cfg) {
        const PeriodicConfig c = testing::random_periodic();
        const int reach = 6;
        for (int i = 0; i < 100000; ++i) {
            PlanePoint p;
            const int mode = i % 4;
            const PlanePoint lattice = c.basis() * Eigen::Vector2d(testing::uniform_int(-reach, reach),
                                                                   testing::uniform_int(-reach, reach));
            const PlanePoint member = c.motif_point(testing::uniform_int(0, int(c.size()) - 1)) + lattice;
            if (mode == 0) p = member + testing::random_disk_point(0.5 * tol.dedup_tol);
            else if (mode == 1) p = member + testing::random_disk_point(1e-3);
            else p = lattice + PlanePoint(uniform(-2, 2), uniform(-2, 2));
            // Oracle: distance to the nearest point of the motif shifted by
            // every translate in a 7 x 7 block around the probe's cell.
            const Eigen::Vector2d f = c.to_fractional(p);
            double best = 1e300;
            for (const auto& m : c.motif_points())
                for (int a = -3; a <= 3; ++a)
                    for (int b = -3; b <= 3; ++b) {
                        const Eigen::Vector2d shift(std::floor(f.x()) + a, std::floor(f.y()) + b);
                        best = std::min(best, (m + c.basis() * shift - p).norm());
                    }
            // Skip probes too close to the threshold to call.
            if (std::abs(best - tol.dedup_tol) < 1e-12) continue;
            ++checked;
            if (contains(c, p, tol) != (best <= tol.dedup_tol)) ++disagreements;
        }
    }
    CHECK(checked > 900000);
    CHECK(disagreements == 0);
}

TEST_CASE("nearest distance matches a scan") {
    for (int i = 0; i < 30; ++i) {
        const PeriodicConfig c = testing::random_periodic();
        const PlanePoint p(uniform(-4, 4), uniform(-4, 4));
        CHECK(nearest_distance(c, p) == doctest::Approx(scan_nearest(c, p)).epsilon(1e-12));
    }
}

TEST_CASE("canonical basis") {
    const auto c = gen_lattice({1, 0}, {5, 1}, SubsetFlags::parse("vertices"));
    const auto r = canonical_basis(c);
    CHECK(r.v1().norm() == doctest::Approx(1.0));
    CHECK(r.v2().norm() == doctest::Approx(1.0));
    CHECK(std::abs(r.v1().dot(r.v2())) < 1e-12);

    const auto again = canonical_basis(r);
    CHECK((again.basis() - r.basis()).norm() < 1e-12);

    for (int i = 0; i < 100; ++i) {
        const PeriodicConfig rc = testing::random_periodic();
        const PeriodicConfig red = canonical_basis(rc);
        const Eigen::Vector2d v1 = red.v1(), v2 = red.v2();
        CHECK(v1.norm() <= v2.norm() + 1e-12);
        CHECK(std::abs(v1.dot(v2)) <= 0.5 * v1.squaredNorm() + 1e-12);
        CHECK(testing::unimodular_equivalent(rc.basis(), red.basis()));
        for (const auto& m : rc.motif_points()) CHECK(contains(red, m));
        CHECK(red.size() == rc.size());
    }
}

TEST_CASE("primitive periods") {
    const PeriodicConfig centered(Eigen::Matrix2d::Identity(), {{0, 0}, {0.5, 0.5}});
    const auto p = primitive_periods(centered);
    CHECK(p.size() == 1);
    Eigen::Matrix2d expect;
    expect << 0.5, 0.5, 0.5, -0.5;
    CHECK(testing::unimodular_equivalent(expect, p.basis()));

    CHECK(primitive_periods(gen_hexagonal(1.0, SubsetFlags::parse("vertices"))).size() == 2);

    const auto all = primitive_periods(gen_lattice({1, 0}, {0, 1}, SubsetFlags::parse("vertices,midpoints,centers")));
    CHECK(all.size() == 1);
    Eigen::Matrix2d half = 0.5 * Eigen::Matrix2d::Identity();
    CHECK(testing::unimodular_equivalent(half, all.basis()));
}

TEST_CASE("primitive periods preserve the point set and are idempotent") {
    for (int i = 0; i < 30; ++i) {
        PeriodicConfig c = testing::random_periodic();
        if (i % 3 == 0) c = supercell(c, testing::uniform_int(1, 3), testing::uniform_int(1, 3));
        const PeriodicConfig p = primitive_periods(c);
        const PeriodicConfig pp = primitive_periods(p);
        CHECK(pp.size() == p.size());
        CHECK(std::abs(pp.cell_area() - p.cell_area()) < 1e-9);
        if (i % 3 == 0) CHECK(p.size() * c.cell_area() <= c.size() * p.cell_area() * (1 + 1e-9) + 1e-9);
        for (int k = 0; k < 1000; ++k) {
            const PlanePoint probe = k % 2 ? c.motif_point(k % c.size()) + c.basis() * Eigen::Vector2d(k % 7 - 3, k % 5 - 2)
                                           : PlanePoint(uniform(-5, 5), uniform(-5, 5));
            CHECK(contains(c, probe) == contains(p, probe));
        }
    }
}

TEST_CASE("supercells, motions and normalization") {
    const auto hex = gen_hexagonal(1.0, SubsetFlags::parse("vertices,midpoints"));
    const auto big = supercell(hex, 2, 3);
    CHECK(big.size() == 6 * hex.size());
    CHECK(big.cell_area() == doctest::Approx(6 * hex.cell_area()));
    CHECK(primitive_periods(big).size() == hex.size());

    const auto moved = transformed(hex, 0.7, 3.0, {1.5, -2.0});
    CHECK(min_distance(moved) == doctest::Approx(3.0 * min_distance(hex)));
    CHECK(min_distance(normalized(moved)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(supercell(hex, 0, 1), Error);

    const auto line = gen_line(5, 2.5);
    CHECK(min_distance(normalized(line)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gauss reduction of explicit bases") {
    Eigen::Matrix2d b;
    b << 1, 5, 0, 1;
    const Eigen::Matrix2d r = gauss_reduce(b);
    CHECK(testing::unimodular_equivalent(b, r));
    CHECK(r.col(0).norm() == doctest::Approx(1.0));
}

TEST_CASE("construction errors") {
    Eigen::Matrix2d flat;
    flat << 1, 2, 0, 0;
    try {
        PeriodicConfig(flat, {{0, 0}});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateBasis);
    }
    CHECK_THROWS_AS(PeriodicConfig(Eigen::Matrix2d::Identity(), {{0, 0}, {1, 0}}), Error);
    CHECK_THROWS_AS(PlaneSet({PlanePoint(0, 0), PlanePoint(0, 0)}), Error);
    CHECK_THROWS_AS(PatchConfig({DiskPoint(1.0, 0)}, 1.0), Error);
    CHECK_THROWS_AS(SphereSet({SpherePoint(1, 1, 0)}), Error);
}

TEST_CASE("patch minimal distance matches brute force") {
    for (int i = 0; i < 20; ++i) {
        std::vector<DiskPoint> pts;
        const int n = testing::uniform_int(2, 300);
        for (int k = 0; k < n; ++k) pts.push_back(testing::random_disk_point(0.999));
        const PatchConfig c(pts, 1.0);
        double best = 1e300;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) best = std::min(best, hyp_dist(pts[a], pts[b]));
        CHECK(min_distance(c) == doctest::Approx(best).epsilon(1e-12));
    }
}
