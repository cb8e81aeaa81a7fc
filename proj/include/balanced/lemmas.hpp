#pragma once

#include <functional>
#include <string>
#include <vector>

#include "balanced/tolerance.hpp"

namespace balanced {

/// Strict bound an entry must satisfy.
enum class Bound { Negative, BelowOne, None };

const char* to_string(Bound b);

struct LemmaCheck {
    std::string id;
    std::string description;
    double expected = 0.0;  // published value, rounded
    int decimals = 2;       // digits printed in the published value
    Bound bound = Bound::None;
    bool scene = false;
    /// Evaluated from a published angle rather than a re-derived constraint.
    bool uses_published_angle = false;
    std::function<double()> evaluate;

    /// Allowed distance from `expected`: half a unit in the last printed
    /// digit for scenes, 0.005 for closed forms.
    double match_tolerance() const;
};

struct CheckResult {
    std::string id;
    double computed = 0.0;
    double expected = 0.0;
    bool matches_published = false;
    bool bound_holds = false;
    /// Distance to the bound (positive when it holds); infinite for Bound::None.
    double margin = 0.0;
};

std::vector<LemmaCheck> lemma_catalog();

/// Evaluates every entry. Scene solvers throw Error(SceneConstruction) naming
/// the entry when a constraint cannot be bracketed.
std::vector<CheckResult> run_catalog(const Tolerance& tol = {});

/// True when every bound holds and every entry matches its published value.
bool catalog_passes(const std::vector<CheckResult>& results);

/// Extreme values of the bisector-component sum of five unit neighbours
/// around a point when two consecutive neighbours are `gap_deg` apart and all
/// neighbours are at least 60 degrees apart. Greedy placement, degrees in.
struct BisectorRange {
    double min = 0.0;
    double max = 0.0;
    /// Five neighbours fit with 60 degree separations only for gaps in
    /// [60, 120]; outside it min and max are the greedy formulas' values.
    bool feasible = false;
    bool admits_zero() const { return feasible && min <= 0.0 && max >= 0.0; }
};

BisectorRange bisector_sum_range(double gap_deg);

/// Sweeps gap angles over [90, 150] degrees and confirms the greedy maximum
/// stays negative, i.e. no balanced placement exists. samples >= 100.
bool check_angle_bound_60_90(int samples);

/// Root of f on [lo, hi] by bisection to 1e-12; throws
/// Error(SceneConstruction) mentioning `what` if f does not change sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, const std::string& what);

}  // namespace balanced
