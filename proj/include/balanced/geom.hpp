#pragma once

// Metric and tangent-space primitives for the Euclidean plane, the unit
// sphere in R^3 and the Poincare disk. Everything here is a pure function of
// its arguments and is templated on the scalar type.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Core>

#include "balanced/errors.hpp"

namespace balanced {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

using PlanePoint = Vec2<double>;
using PlaneVector = Vec2<double>;
using SpherePoint = Vec3<double>;
using DiskPoint = Vec2<double>;

namespace detail {

template <typename Scalar>
std::complex<Scalar> to_complex(const Vec2<Scalar>& v) {
    return {v.x(), v.y()};
}

template <typename Scalar>
Vec2<Scalar> from_complex(const std::complex<Scalar>& z) {
    return {z.real(), z.imag()};
}

}  // namespace detail

template <typename Derived>
bool is_finite(const Eigen::MatrixBase<Derived>& v) {
    return v.allFinite();
}

template <typename Scalar>
void require_on_sphere(const Vec3<Scalar>& u, Scalar tol = Scalar(1e-9)) {
    if (!u.allFinite() || std::abs(u.norm() - Scalar(1)) > tol)
        throw Error(ErrorKind::InvalidPoint, "sphere point is not unit norm");
}

template <typename Scalar>
void require_in_disk(const Vec2<Scalar>& z) {
    if (!z.allFinite() || !(z.squaredNorm() < Scalar(1)))
        throw Error(ErrorKind::InvalidPoint, "disk point is not strictly inside the unit disk");
}

template <typename Scalar>
Scalar euclid_dist(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
    return (a - b).norm();
}

/// Chordal distance in R^3 between two unit vectors; lies in [0, 2].
template <typename Scalar>
Scalar sphere_dist(const Vec3<Scalar>& a, const Vec3<Scalar>& b, Scalar unit_tol = Scalar(1e-9)) {
    require_on_sphere(a, unit_tol);
    require_on_sphere(b, unit_tol);
    return (a - b).norm();
}

/// Poincare-disk distance, arccosh(1 + 2|a-b|^2 / ((1-|a|^2)(1-|b|^2))), in
/// the cancellation-free form 2 asinh(|a-b| / sqrt((1-|a|^2)(1-|b|^2))).
template <typename Scalar>
Scalar hyp_dist(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
    require_in_disk(a);
    require_in_disk(b);
    const Scalar denom = std::sqrt((Scalar(1) - a.squaredNorm()) * (Scalar(1) - b.squaredNorm()));
    return Scalar(2) * std::asinh((a - b).norm() / denom);
}

/// Hyperbolic distance from the disk origin to z.
template <typename Scalar>
Scalar hyp_norm(const Vec2<Scalar>& z) {
    require_in_disk(z);
    return Scalar(2) * std::atanh(z.norm());
}

/// Disk point at hyperbolic distance `dist` from the origin in direction `angle`.
template <typename Scalar>
Vec2<Scalar> disk_polar(Scalar dist, Scalar angle) {
    const Scalar r = std::tanh(dist / Scalar(2));
    return {r * std::cos(angle), r * std::sin(angle)};
}

/// Component of target orthogonal to base: target - (target . base) base.
template <typename Scalar>
Vec3<Scalar> sphere_tangent_projection(const Vec3<Scalar>& base, const Vec3<Scalar>& target) {
    return target - target.dot(base) * base;
}

/// Disk isometry sending `center` to the origin: z -> (z - c) / (1 - conj(c) z).
template <typename Scalar>
Vec2<Scalar> mobius_translate(const Vec2<Scalar>& center, const Vec2<Scalar>& z) {
    const auto c = detail::to_complex(center);
    const auto w = detail::to_complex(z);
    return detail::from_complex((w - c) / (Scalar(1) - std::conj(c) * w));
}

/// Inverse of mobius_translate(center, .): sends the origin back to `center`.
template <typename Scalar>
Vec2<Scalar> mobius_untranslate(const Vec2<Scalar>& center, const Vec2<Scalar>& w) {
    const auto c = detail::to_complex(center);
    const auto z = detail::to_complex(w);
    return detail::from_complex((z + c) / (Scalar(1) + std::conj(c) * z));
}

/// Unit initial direction at `base` of the geodesic towards `target`.
///
/// The translation z -> (z - c)/(1 - conj(c) z) has derivative 1/(1 - |c|^2) at
/// c, a positive real, so directions at `base` coincide with directions at the
/// origin after translating.
template <typename Scalar>
Vec2<Scalar> hyp_log_dir(const Vec2<Scalar>& base, const Vec2<Scalar>& target) {
    require_in_disk(base);
    require_in_disk(target);
    const Vec2<Scalar> w = mobius_translate(base, target);
    const Scalar r = w.norm();
    if (!(r > Scalar(0)))
        throw Error(ErrorKind::DegenerateDirection, "geodesic direction undefined for coincident points");
    return w / r;
}

template <typename Scalar>
Vec2<Scalar> rotate_plane(const Vec2<Scalar>& p, const Vec2<Scalar>& center, Scalar angle) {
    const Scalar c = std::cos(angle);
    const Scalar s = std::sin(angle);
    const Vec2<Scalar> d = p - center;
    return center + Vec2<Scalar>(c * d.x() - s * d.y(), s * d.x() + c * d.y());
}

/// A geodesic of the disk: either a diameter (unit direction) or a circular
/// arc orthogonal to the unit circle (|center|^2 = radius^2 + 1).
template <typename Scalar>
class Geodesic {
public:
    enum class Kind { Diameter, Arc };

    static Geodesic diameter(const Vec2<Scalar>& direction) {
        const Scalar n = direction.norm();
        if (!direction.allFinite() || !(n > Scalar(0)))
            throw Error(ErrorKind::InvalidGeodesic, "diameter needs a nonzero direction");
        return Geodesic(Kind::Diameter, direction / n, Scalar(0));
    }

    static Geodesic arc(const Vec2<Scalar>& center, Scalar radius, Scalar tol = Scalar(1e-9)) {
        if (!center.allFinite() || !std::isfinite(radius) || !(radius > Scalar(0)))
            throw Error(ErrorKind::InvalidGeodesic, "arc needs a finite center and positive radius");
        const Scalar mismatch = center.squaredNorm() - radius * radius - Scalar(1);
        if (std::abs(mismatch) > tol * std::max(Scalar(1), center.squaredNorm()))
            throw Error(ErrorKind::InvalidGeodesic, "arc is not orthogonal to the unit circle");
        return Geodesic(Kind::Arc, center, radius);
    }

    /// The geodesic through two distinct disk points.
    static Geodesic through(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
        require_in_disk(a);
        require_in_disk(b);
        // Circle center c with |c|^2 - r^2 = 1 passing through a and b:
        // 2 a.c = |a|^2 + 1 and 2 b.c = |b|^2 + 1.
        const Scalar det = Scalar(2) * (a.x() * b.y() - a.y() * b.x());
        const Scalar scale = std::max<Scalar>((a - b).norm(), Scalar(1e-300));
        if (std::abs(det) <= Scalar(1e-12) * scale) {
            const Vec2<Scalar> d = a.norm() >= b.norm() ? a : b;
            if (d.norm() > Scalar(0)) return diameter(d);
            return diameter(b - a);
        }
        const Scalar ra = a.squaredNorm() + Scalar(1);
        const Scalar rb = b.squaredNorm() + Scalar(1);
        const Vec2<Scalar> c((ra * b.y() - rb * a.y()) / det, (rb * a.x() - ra * b.x()) / det);
        const Scalar radius = std::sqrt(c.squaredNorm() - Scalar(1));
        return Geodesic(Kind::Arc, c, radius);
    }

    Kind kind() const { return kind_; }
    const Vec2<Scalar>& center() const { return vec_; }
    const Vec2<Scalar>& direction() const { return vec_; }
    Scalar radius() const { return radius_; }

private:
    Geodesic(Kind kind, Vec2<Scalar> vec, Scalar radius) : kind_(kind), vec_(std::move(vec)), radius_(radius) {}

    Kind kind_;
    Vec2<Scalar> vec_;
    Scalar radius_;
};

/// Hyperbolic reflection in a geodesic: line reflection for diameters,
/// inversion for arcs.
template <typename Scalar>
Vec2<Scalar> reflect_geodesic(const Geodesic<Scalar>& g, const Vec2<Scalar>& z) {
    require_in_disk(z);
    if (g.kind() == Geodesic<Scalar>::Kind::Diameter) {
        const Vec2<Scalar>& d = g.direction();
        return Scalar(2) * z.dot(d) * d - z;
    }
    const Vec2<Scalar> rel = z - g.center();
    return g.center() + (g.radius() * g.radius() / rel.squaredNorm()) * rel;
}

/// Reflection in the geodesic through a and b, evaluated by translating a to
/// the origin (where the geodesic is a diameter) and back.
template <typename Scalar>
Vec2<Scalar> reflect_through(const Vec2<Scalar>& a, const Vec2<Scalar>& b, const Vec2<Scalar>& z) {
    const Vec2<Scalar> d = hyp_log_dir(a, b);
    const Vec2<Scalar> w = mobius_translate(a, z);
    return mobius_untranslate(a, Vec2<Scalar>(Scalar(2) * w.dot(d) * d - w));
}

/// Hyperbolic half-turn (point reflection) about m.
template <typename Scalar>
Vec2<Scalar> half_turn(const Vec2<Scalar>& m, const Vec2<Scalar>& z) {
    return mobius_untranslate(m, Vec2<Scalar>(-mobius_translate(m, z)));
}

/// Hyperbolic rotation by `angle` about m.
template <typename Scalar>
Vec2<Scalar> hyp_rotate(const Vec2<Scalar>& m, const Vec2<Scalar>& z, Scalar angle) {
    return mobius_untranslate(m, rotate_plane(mobius_translate(m, z), Vec2<Scalar>::Zero().eval(), angle));
}

/// Geodesic midpoint of a and b.
template <typename Scalar>
Vec2<Scalar> hyp_midpoint(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
    const Vec2<Scalar> w = mobius_translate(a, b);
    const Scalar r = w.norm();
    if (!(r > Scalar(0))) return a;
    // |w| = tanh(d/2); the midpoint sits at tanh(d/4) = r / (1 + sqrt(1 - r^2)).
    const Scalar half = r / (Scalar(1) + std::sqrt(Scalar(1) - r * r));
    return mobius_untranslate(a, Vec2<Scalar>((half / r) * w));
}

/// Point at parameter t in [0, 1] along the geodesic segment from a to b
/// (monotone, not arclength).
template <typename Scalar>
Vec2<Scalar> geodesic_lerp(const Vec2<Scalar>& a, const Vec2<Scalar>& b, Scalar t) {
    return mobius_untranslate(a, Vec2<Scalar>(t * mobius_translate(a, b)));
}

/// Hyperbolic distance from the origin to the geodesic segment [a, b].
///
/// Distance to a point moving along a geodesic is convex in arclength, hence
/// unimodal in any monotone parameter; golden-section search finds the minimum.
template <typename Scalar>
Scalar origin_segment_distance(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
    const Scalar phi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
    Scalar lo = 0, hi = 1;
    auto f = [&](Scalar t) { return geodesic_lerp(a, b, t).norm(); };
    Scalar x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    Scalar f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < 90; ++i) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        }
    }
    const Scalar best = std::min({f(lo), f(hi), f1, f2, a.norm(), b.norm()});
    return Scalar(2) * std::atanh(best);
}

}  // namespace balanced
