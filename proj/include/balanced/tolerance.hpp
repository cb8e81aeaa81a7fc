#pragma once

namespace balanced {

/// Numerical tolerances shared by every query.
///
/// class_tol links distances into one distance class, residual_tol is the
/// largest class-sum norm still accepted as zero, dedup_tol is the radius
/// under which two points are the same point.
struct Tolerance {
    double class_tol = 1e-6;
    double residual_tol = 1e-9;
    double dedup_tol = 1e-9;

    bool valid() const { return 0.0 < dedup_tol && dedup_tol < class_tol && residual_tol > 0.0; }

    /// Throws Error(ParameterDomain) unless valid().
    void validate() const;
};

}  // namespace balanced
