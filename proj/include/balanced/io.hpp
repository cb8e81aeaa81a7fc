#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "balanced/config.hpp"
#include "balanced/lemmas.hpp"
#include "balanced/symmetry.hpp"
#include "balanced/verify.hpp"

namespace balanced {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Space { Euclidean2, Sphere2, Hyperbolic2 };
enum class DocKind { Finite, Periodic, Patch };

const char* to_string(Space s);
const char* to_string(DocKind k);

/// On-disk configuration. `basis` rows are v1 and v2; `coords` holds the
/// fractional motif for periodic documents and the points otherwise.
struct ConfigDocument {
    Space space = Space::Euclidean2;
    DocKind kind = DocKind::Finite;
    std::optional<std::array<std::array<double, 2>, 2>> basis;
    std::vector<std::vector<double>> coords;
    std::optional<double> patch_radius;
    std::map<std::string, std::string> metadata;

    bool operator==(const ConfigDocument&) const = default;
};

/// Throws Error(Parse) naming the offending field, or Error(InvalidPoint) for
/// points off the sphere or outside the disk.
ConfigDocument parse_config(std::string_view text);
std::string serialize_config(const ConfigDocument& doc);

using AnyConfig = std::variant<PeriodicConfig, PlaneSet, SphereSet, PatchConfig>;

ConfigDocument to_document(const PeriodicConfig& c);
ConfigDocument to_document(const PlaneSet& c);
ConfigDocument to_document(const SphereSet& c);
ConfigDocument to_document(const PatchConfig& c);

/// Builds the configuration a document describes. Finite hyperbolic sets
/// become patches of infinite radius.
AnyConfig to_config(const ConfigDocument& doc, const Tolerance& tol = {});

// ------------------------------------------------------------------ reports

nlohmann::json params_json(const VerifyParams& params);

/// {tool_version, params, verdict, details}.
nlohmann::json make_report(const std::string& command, const VerifyParams& params, const std::string& verdict,
                           nlohmann::json details);

nlohmann::json to_json(const BalanceReport& r);
nlohmann::json to_json(const ConfigClass& c);
nlohmann::json to_json(const GroupBalanceResult& g);
nlohmann::json to_json(const std::vector<CheckResult>& results);

// ------------------------------------------------------------------ svg

struct RenderWindow {
    double xmin = -5.0, xmax = 5.0, ymin = -5.0, ymax = 5.0;
    bool empty() const { return !(xmax > xmin) || !(ymax > ymin); }
};

struct SvgStyle {
    double width_px = 600.0;
    double margin_px = 16.0;
    double marker_px = 4.0;
    bool unit_circle = true;  // disk renders only
};

/// Points of a periodic configuration inside the window. Throws
/// Error(ParameterDomain) for an empty window.
std::string render_svg(const PeriodicConfig& c, const RenderWindow& window, const SvgStyle& style = {});
/// Finite planar set over its padded bounding box.
std::string render_svg(const PlaneSet& c, const SvgStyle& style = {});
/// Disk configuration over the unit square around the disk.
std::string render_svg(const PatchConfig& c, const SvgStyle& style = {});

}  // namespace balanced
