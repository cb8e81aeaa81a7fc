#include "balanced/errors.hpp"
#include "balanced/tolerance.hpp"

namespace balanced {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidPoint: return "invalid-point";
        case ErrorKind::InvalidGeodesic: return "invalid-geodesic";
        case ErrorKind::DegenerateDirection: return "degenerate-direction";
        case ErrorKind::DegenerateBasis: return "degenerate-basis";
        case ErrorKind::NoPairs: return "no-pairs";
        case ErrorKind::AmbiguousClass: return "ambiguous-class";
        case ErrorKind::ParameterDomain: return "parameter-domain";
        case ErrorKind::InsufficientPatch: return "insufficient-patch";
        case ErrorKind::SceneConstruction: return "scene-construction";
        case ErrorKind::Parse: return "parse";
    }
    return "unknown";
}

void Tolerance::validate() const {
    if (!valid())
        throw Error(ErrorKind::ParameterDomain,
                    "tolerances must satisfy 0 < dedup_tol < class_tol and residual_tol > 0");
}

}  // namespace balanced
