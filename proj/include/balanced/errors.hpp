#pragma once

#include <stdexcept>
#include <string>

namespace balanced {

enum class ErrorKind {
    InvalidPoint,
    InvalidGeodesic,
    DegenerateDirection,
    DegenerateBasis,
    NoPairs,
    AmbiguousClass,
    ParameterDomain,
    InsufficientPatch,
    SceneConstruction,
    Parse,
};

/// Library error carrying a machine-readable kind.
///
/// The CLI maps kinds onto exit codes: input-shaped problems (bad points,
/// bad parameters, parse failures) exit 2, numeric trouble (ambiguous
/// classes, non-converging scenes) exits 3.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    bool is_numeric() const noexcept {
        return kind_ == ErrorKind::AmbiguousClass || kind_ == ErrorKind::SceneConstruction;
    }

private:
    ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace balanced
