#pragma once

// Random inputs and brute-force oracles shared by the tests. Nothing here
// calls the library's enumeration code.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "balanced/config.hpp"

namespace testing {

using balanced::PlanePoint;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline PlanePoint random_disk_point(double max_norm) {
    const double r = max_norm * std::sqrt(uniform(0.0, 1.0));
    const double t = uniform(0.0, 2.0 * std::numbers::pi);
    return {r * std::cos(t), r * std::sin(t)};
}

inline Eigen::Vector3d random_unit3() {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Vector3d v(n(rng()), n(rng()), n(rng()));
    return v.normalized();
}

/// Circle through a and b orthogonal to the unit circle: it also passes
/// through the inversion a / |a|^2. Returns the circumcenter.
inline Eigen::Vector2d orthogonal_circle_center(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    const Eigen::Vector2d c = a / a.squaredNorm();
    Eigen::Matrix2d m;
    m << 2 * (b - a).transpose(), 2 * (c - a).transpose();
    const Eigen::Vector2d rhs(b.squaredNorm() - a.squaredNorm(), c.squaredNorm() - a.squaredNorm());
    return m.fullPivLu().solve(rhs);
}

/// Unit tangent at a of the geodesic towards b, from the orthogonal circle
/// (or the straight segment when a, b and the origin are collinear).
inline Eigen::Vector2d geodesic_tangent(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    if (std::abs(a.x() * b.y() - a.y() * b.x()) < 1e-14 || a.norm() < 1e-14) return (b - a).normalized();
    const Eigen::Vector2d o = orthogonal_circle_center(a, b);
    Eigen::Vector2d v(-(a - o).y(), (a - o).x());
    v.normalize();
    return v.dot(b - a) >= 0 ? v : Eigen::Vector2d(-v);
}

/// Interior angle at a of the geodesic triangle a, b, c.
inline double corner_angle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    const Eigen::Vector2d u = geodesic_tangent(a, b), v = geodesic_tangent(a, c);
    return std::acos(std::clamp(u.dot(v), -1.0, 1.0));
}

/// Random reasonably conditioned basis with a random 1-3 point motif.
inline balanced::PeriodicConfig random_periodic(int max_motif = 3) {
    for (;;) {
        const double a = uniform(0.6, 1.6), b = uniform(0.6, 1.6);
        const double t0 = uniform(0.0, 2.0 * std::numbers::pi), gap = uniform(0.5, 2.6);
        Eigen::Matrix2d basis;
        basis << a * std::cos(t0), b * std::cos(t0 + gap), a * std::sin(t0), b * std::sin(t0 + gap);
        // Shear by a random unimodular matrix so the stored basis is not reduced.
        Eigen::Matrix2d u;
        u << 1, uniform_int(-3, 3), 0, 1;
        basis = basis * u;
        std::vector<Eigen::Vector2d> motif;
        const int k = uniform_int(1, max_motif);
        for (int i = 0; i < k; ++i) motif.emplace_back(uniform(0.0, 1.0), uniform(0.0, 1.0));
        try {
            balanced::PeriodicConfig c(basis, motif);
            if (balanced::min_distance(c) > 0.05) return c;
        } catch (const balanced::Error&) {
        }
    }
}

/// Every configuration point within radius of base (base excluded), found by
/// scanning integer translates of the stored, unreduced basis with bounds from
/// its smallest singular value.
inline std::vector<PlanePoint> scan_within(const balanced::PeriodicConfig& c, const PlanePoint& base, double radius,
                                           double slack, double exclude) {
    const Eigen::JacobiSVD<Eigen::Matrix2d> svd(c.basis());
    const double smin = svd.singularValues().minCoeff();
    double reach = base.norm() + radius;
    for (const auto& m : c.motif_points()) reach = std::max(reach, m.norm() + base.norm() + radius);
    const int n = static_cast<int>(std::ceil(reach / smin)) + 2;
    std::vector<PlanePoint> out;
    for (int a = -n; a <= n; ++a)
        for (int b = -n; b <= n; ++b)
            for (const auto& m : c.motif_points()) {
                const PlanePoint p = m + c.basis() * Eigen::Vector2d(a, b);
                const double d = (p - base).norm();
                if (d > exclude && d <= radius + slack) out.push_back(p);
            }
    return out;
}

/// Multiset equality of point lists up to tol.
inline bool same_points(std::vector<PlanePoint> a, std::vector<PlanePoint> b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& p : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size() && !found; ++j)
            if (!used[j] && (p - b[j]).norm() <= tol) used[j] = found = true;
        if (!found) return false;
    }
    return true;
}

/// Integer matrix U with b2 = b1 U, if one exists with |det U| = 1.
inline bool unimodular_equivalent(const Eigen::Matrix2d& b1, const Eigen::Matrix2d& b2, double tol = 1e-7) {
    const Eigen::Matrix2d u = b1.inverse() * b2;
    for (int i = 0; i < 4; ++i)
        if (std::abs(u(i) - std::round(u(i))) > tol) return false;
    return std::abs(std::abs(u.determinant()) - 1.0) < tol;
}

}  // namespace testing
