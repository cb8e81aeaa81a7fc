#include <doctest.h>

#include <cmath>
#include <numbers>

#include "balanced/geom.hpp"
#include "support.hpp"

using namespace balanced;
using testing::random_disk_point;
using testing::uniform;

namespace {

constexpr double kPi = std::numbers::pi;

// Length of the geodesic arc from a to b under the disk metric
// 2|dz| / (1 - |z|^2), by composite Simpson in the arc angle.
double integrated_length(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    const Eigen::Vector2d o = testing::orthogonal_circle_center(a, b);
    const double r = (a - o).norm();
    const double ta = std::atan2(a.y() - o.y(), a.x() - o.x());
    double tb = std::atan2(b.y() - o.y(), b.x() - o.x());
    // The arc inside the disk is the short one between a and b.
    while (tb - ta > kPi) tb -= 2 * kPi;
    while (ta - tb > kPi) tb += 2 * kPi;
    const int n = 20000;
    const double h = (tb - ta) / n;
    auto f = [&](double t) {
        const Eigen::Vector2d z = o + r * Eigen::Vector2d(std::cos(t), std::sin(t));
        return 2.0 * r / (1.0 - z.squaredNorm());
    };
    double s = f(ta) + f(tb);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(ta + i * h);
    return std::abs(s * h / 3.0);
}

}  // namespace

TEST_CASE("euclidean and chordal distances") {
    CHECK(euclid_dist(PlanePoint(0, 0), PlanePoint(1, 0)) == doctest::Approx(1.0));
    CHECK(euclid_dist(PlanePoint(0, 0), PlanePoint(0, 0)) == 0.0);
    CHECK(euclid_dist(PlanePoint(0, 0), PlanePoint(1, 1)) == doctest::Approx(std::sqrt(2.0)));

    CHECK(sphere_dist(SpherePoint(0, 0, 1), SpherePoint(0, 0, -1)) == doctest::Approx(2.0));
    CHECK(sphere_dist(SpherePoint(1, 0, 0), SpherePoint(0, 1, 0)) == doctest::Approx(std::sqrt(2.0)));
    const SpherePoint p = testing::random_unit3();
    CHECK(sphere_dist(p, p) == 0.0);
    CHECK_THROWS_AS(sphere_dist(SpherePoint(1, 1, 0), SpherePoint(1, 0, 0)), Error);
}

TEST_CASE("disk distance closed forms and errors") {
    CHECK(hyp_dist(DiskPoint(0, 0), DiskPoint(0, 0)) == 0.0);
    for (double r : {0.1, 0.5, 0.9, 0.999})
        CHECK(hyp_dist(DiskPoint(0, 0), DiskPoint(r, 0)) == doctest::Approx(std::log((1 + r) / (1 - r))).epsilon(1e-12));
    try {
        hyp_dist(DiskPoint(1, 0), DiskPoint(0, 0));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidPoint);
    }
}

TEST_CASE("disk distance matches numerical arc length") {
    for (int i = 0; i < 20; ++i) {
        const DiskPoint a = random_disk_point(0.9), b = random_disk_point(0.9);
        if (std::abs(a.x() * b.y() - a.y() * b.x()) < 1e-3) continue;  // near a diameter
        CHECK(hyp_dist(a, b) == doctest::Approx(integrated_length(a, b)).epsilon(1e-8));
    }
}

TEST_CASE("metric axioms on random inputs") {
    for (int i = 0; i < 500; ++i) {
        const DiskPoint a = random_disk_point(0.95), b = random_disk_point(0.95), c = random_disk_point(0.95);
        const double ab = hyp_dist(a, b);
        CHECK(ab >= 0.0);
        CHECK(ab == doctest::Approx(hyp_dist(b, a)).epsilon(1e-12));
        CHECK(hyp_dist(a, c) <= ab + hyp_dist(b, c) + 1e-12);
        CHECK(hyp_dist(a, a) <= 1e-9);
    }
}

TEST_CASE("tangent projection") {
    const SpherePoint n(0, 0, 1);
    CHECK(sphere_tangent_projection(n, n).norm() < 1e-15);
    CHECK((sphere_tangent_projection(n, SpherePoint(1, 0, 0)) - SpherePoint(1, 0, 0)).norm() < 1e-15);
    const double t = 0.7;
    CHECK((sphere_tangent_projection(n, SpherePoint(0, std::sin(t), std::cos(t))) - SpherePoint(0, std::sin(t), 0))
              .norm() < 1e-15);
    for (int i = 0; i < 200; ++i) {
        const SpherePoint base = testing::random_unit3(), target = testing::random_unit3();
        CHECK(std::abs(sphere_tangent_projection(base, target).dot(base)) < 1e-12);
    }
}

TEST_CASE("geodesic initial direction") {
    CHECK((hyp_log_dir(DiskPoint(0, 0), DiskPoint(0.4, 0)) - DiskPoint(1, 0)).norm() < 1e-15);
    const DiskPoint t(-0.2, 0.5);
    CHECK((hyp_log_dir(DiskPoint(0, 0), t) - t.normalized()).norm() < 1e-14);

    // Oracle: the tangent of the orthogonal circle at the base.
    const auto tangent = testing::geodesic_tangent;
    CHECK((hyp_log_dir(DiskPoint(0.3, 0), DiskPoint(0.3, 0.4)) - tangent({0.3, 0}, {0.3, 0.4})).norm() < 1e-12);
    for (int i = 0; i < 200; ++i) {
        const DiskPoint a = random_disk_point(0.95), b = random_disk_point(0.95);
        const Eigen::Vector2d d = hyp_log_dir(a, b);
        CHECK(std::abs(d.norm() - 1.0) < 1e-12);
        if (std::abs(a.x() * b.y() - a.y() * b.x()) > 1e-3) CHECK((d - tangent(a, b)).norm() < 1e-8);
    }
    try {
        hyp_log_dir(DiskPoint(0.2, 0.1), DiskPoint(0.2, 0.1));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateDirection);
    }
}

TEST_CASE("disk translations are isometries") {
    const DiskPoint c(0.3, -0.5);
    CHECK(mobius_translate(c, c).norm() < 1e-15);
    CHECK((mobius_translate(DiskPoint(0, 0), DiskPoint(0.2, 0.7)) - DiskPoint(0.2, 0.7)).norm() < 1e-15);
    for (int i = 0; i < 500; ++i) {
        const DiskPoint ctr = random_disk_point(0.95), a = random_disk_point(0.95), b = random_disk_point(0.95);
        const DiskPoint ta = mobius_translate(ctr, a), tb = mobius_translate(ctr, b);
        CHECK(ta.norm() < 1.0);
        CHECK(std::abs(hyp_dist(ta, tb) - hyp_dist(a, b)) < 1e-10 * std::max(1.0, hyp_dist(a, b)));
        CHECK((mobius_untranslate(ctr, ta) - a).norm() < 1e-12);
    }
}

TEST_CASE("planar rotation") {
    CHECK((rotate_plane(PlanePoint(1, 0), PlanePoint(0, 0), kPi / 2) - PlanePoint(0, 1)).norm() < 1e-15);
    for (int i = 0; i < 100; ++i) {
        const PlanePoint p(uniform(-5, 5), uniform(-5, 5)), c(uniform(-5, 5), uniform(-5, 5));
        CHECK((rotate_plane(p, c, 0.0) - p).norm() < 1e-14);
        CHECK((rotate_plane(p, c, 2 * kPi) - p).norm() < 1e-12);
        CHECK(std::abs((rotate_plane(p, c, uniform(0, 7)) - c).norm() - (p - c).norm()) < 1e-12);
    }
}

TEST_CASE("geodesic reflections") {
    const auto x_axis = Geodesic<double>::diameter({1, 0});
    CHECK((reflect_geodesic(x_axis, DiskPoint(0.3, 0.4)) - DiskPoint(0.3, -0.4)).norm() < 1e-15);
    for (int i = 0; i < 300; ++i) {
        const DiskPoint a = random_disk_point(0.9), b = random_disk_point(0.9);
        if ((a - b).norm() < 1e-3) continue;
        const auto g = Geodesic<double>::through(a, b);
        const DiskPoint z = random_disk_point(0.95), w = random_disk_point(0.95);
        const DiskPoint rz = reflect_geodesic(g, z), rw = reflect_geodesic(g, w);
        CHECK((reflect_geodesic(g, rz) - z).norm() < 1e-12);
        CHECK(std::abs(hyp_dist(rz, rw) - hyp_dist(z, w)) < 1e-10 * std::max(1.0, hyp_dist(z, w)));
        // Points on the geodesic are fixed.
        CHECK((reflect_geodesic(g, a) - a).norm() < 1e-10);
        CHECK((reflect_through(a, b, z) - rz).norm() < 1e-10);
    }
    try {
        Geodesic<double>::arc({2, 0}, 1.0);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidGeodesic);
    }
    CHECK_NOTHROW(Geodesic<double>::arc({2, 0}, std::sqrt(3.0)));
}

TEST_CASE("half turns and midpoints") {
    for (int i = 0; i < 200; ++i) {
        const DiskPoint a = random_disk_point(0.9), b = random_disk_point(0.9);
        const DiskPoint m = hyp_midpoint(a, b);
        CHECK(std::abs(hyp_dist(a, m) - hyp_dist(m, b)) < 1e-10);
        CHECK(std::abs(hyp_dist(a, m) + hyp_dist(m, b) - hyp_dist(a, b)) < 1e-10);
        CHECK((half_turn(m, a) - b).norm() < 1e-10);
    }
}
