#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "balanced/config.hpp"

namespace balanced {

struct VerifyParams {
    /// Distance-class cutoff in units of the configuration's minimal distance.
    double max_radius = 6.0;
    Tolerance tol;

    void validate() const;
};

enum class SphereMode { ScalarMultiple, TangentProjection };

/// Residual of one distance class around one base point. Planar and disk
/// residuals use the first two components.
struct ClassResidual {
    std::size_t point = 0;  // motif index or point index
    double distance = 0.0;
    std::size_t members = 0;
    Eigen::Vector3d residual = Eigen::Vector3d::Zero();
    double norm = 0.0;
    bool ambiguous = false;
    bool pass = true;
};

struct BalanceReport {
    double cutoff = 0.0;  // absolute distance up to which classes were checked
    double residual_tol = 0.0;
    std::vector<std::size_t> verified_points;
    std::vector<ClassResidual> classes;
    double worst_residual = 0.0;

    /// True iff every class residual is within residual_tol and no class was
    /// ambiguous.
    bool pass() const;
    bool any_ambiguous() const;
    /// Indices into `classes` of the failing entries.
    std::vector<std::size_t> failing() const;
};

BalanceReport verify_plane(const PeriodicConfig& c, const VerifyParams& params = {});

/// Only points whose cutoff ball lies inside the window are verified; throws
/// Error(InsufficientPatch) when there are none.
BalanceReport verify_plane(const PlaneSet& c, const VerifyParams& params = {});

BalanceReport verify_sphere(const SphereSet& c, const VerifyParams& params = {},
                            SphereMode mode = SphereMode::ScalarMultiple);

/// Verifies points whose verifiable radius is at least the cutoff; throws
/// Error(InsufficientPatch) when there are none.
BalanceReport verify_hyperbolic(const PatchConfig& c, const VerifyParams& params = {});

/// Cutoff in units of the minimal distance that reaches the first `shells`
/// distance classes around the innermost point of every label. Throws
/// Error(InsufficientPatch) when a label lacks that many classes.
double shell_radius(const PatchConfig& c, int shells = 2, const Tolerance& tol = {});

/// Largest number of neighbours at the minimal distance.
int max_neighbor_count(const PeriodicConfig& c, const Tolerance& tol = {});
int max_neighbor_count(const PlaneSet& c, const Tolerance& tol = {});

struct MinDistanceReport {
    double min_d = 0.0;
    bool attained = false;
    std::pair<std::size_t, std::size_t> pair{0, 0};
    /// Set when dropping the outermost points of the window changes the
    /// minimum, so the infimum may depend on the window.
    bool window_warning = false;
};

MinDistanceReport check_min_distance_property(const PeriodicConfig& c, const Tolerance& tol = {});
MinDistanceReport check_min_distance_property(const PlaneSet& c, const Tolerance& tol = {});

}  // namespace balanced
