#include "balanced/io.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace balanced {

using nlohmann::json;

const char* to_string(Space s) {
    switch (s) {
        case Space::Euclidean2: return "euclidean2";
        case Space::Sphere2: return "sphere2";
        case Space::Hyperbolic2: return "hyperbolic2";
    }
    return "euclidean2";
}

const char* to_string(DocKind k) {
    switch (k) {
        case DocKind::Finite: return "finite";
        case DocKind::Periodic: return "periodic";
        case DocKind::Patch: return "patch";
    }
    return "finite";
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw Error(ErrorKind::Parse, field + ": " + what);
}

const json& require(const json& root, const char* key) {
    auto it = root.find(key);
    if (it == root.end()) fail(key, "missing required field");
    return *it;
}

double number(const json& v, const std::string& field) {
    if (!v.is_number()) fail(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(field, "expected a finite number");
    return d;
}

std::vector<double> coordinate(const json& v, std::size_t dim, const std::string& field) {
    if (!v.is_array() || v.size() != dim) fail(field, "expected an array of " + std::to_string(dim) + " numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < dim; ++i) out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

std::string join_labels(const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ',';
        out += labels[i];
    }
    return out;
}

std::vector<std::string> split_labels(const ConfigDocument& doc) {
    auto it = doc.metadata.find("labels");
    if (it == doc.metadata.end() || it->second.empty()) return {};
    std::vector<std::string> out;
    std::string cur;
    for (char ch : it->second) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    if (out.size() != doc.coords.size()) fail("metadata.labels", "label count does not match the number of points");
    return out;
}

void put_labels(ConfigDocument& doc, const std::vector<std::string>& labels) {
    if (!labels.empty()) doc.metadata["labels"] = join_labels(labels);
}

}  // namespace

ConfigDocument parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail("document", std::string("malformed JSON (") + e.what() + ")");
    }
    if (!root.is_object()) fail("document", "expected a JSON object");

    ConfigDocument doc;
    const json& space = require(root, "space");
    if (!space.is_string()) fail("space", "expected a string");
    const auto s = space.get<std::string>();
    if (s == "euclidean2") doc.space = Space::Euclidean2;
    else if (s == "sphere2") doc.space = Space::Sphere2;
    else if (s == "hyperbolic2") doc.space = Space::Hyperbolic2;
    else fail("space", "unknown space '" + s + "' (expected euclidean2, sphere2 or hyperbolic2)");

    const json& kind = require(root, "kind");
    if (!kind.is_string()) fail("kind", "expected a string");
    const auto k = kind.get<std::string>();
    if (k == "finite") doc.kind = DocKind::Finite;
    else if (k == "periodic") doc.kind = DocKind::Periodic;
    else if (k == "patch") doc.kind = DocKind::Patch;
    else fail("kind", "unknown kind '" + k + "' (expected finite, periodic or patch)");

    if (doc.kind == DocKind::Periodic && doc.space != Space::Euclidean2)
        fail("kind", "periodic documents must use space euclidean2");
    if (doc.kind == DocKind::Patch && doc.space != Space::Hyperbolic2)
        fail("kind", "patch documents must use space hyperbolic2");

    const char* list_key = doc.kind == DocKind::Periodic ? "motif" : "points";
    if (doc.kind == DocKind::Periodic) {
        const json& b = require(root, "basis");
        if (!b.is_array() || b.size() != 2) fail("basis", "expected two rows v1, v2");
        std::array<std::array<double, 2>, 2> rows{};
        for (std::size_t i = 0; i < 2; ++i) {
            const auto row = coordinate(b[i], 2, "basis[" + std::to_string(i) + "]");
            rows[i] = {row[0], row[1]};
        }
        doc.basis = rows;
    }
    if (doc.kind == DocKind::Patch) {
        const double r = number(require(root, "patch_radius"), "patch_radius");
        if (r < 0.0) fail("patch_radius", "must be nonnegative");
        doc.patch_radius = r;
    }

    const json& list = require(root, list_key);
    if (!list.is_array()) fail(list_key, "expected an array of coordinates");
    const std::size_t dim = doc.space == Space::Sphere2 ? 3 : 2;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string field = std::string(list_key) + "[" + std::to_string(i) + "]";
        auto c = coordinate(list[i], dim, field);
        if (doc.space == Space::Sphere2) {
            const double n = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
            if (std::abs(n - 1.0) > 1e-9)
                throw Error(ErrorKind::InvalidPoint, field + ": sphere point norm differs from 1 by more than 1e-9");
        }
        if (doc.space == Space::Hyperbolic2 && !(c[0] * c[0] + c[1] * c[1] < 1.0))
            throw Error(ErrorKind::InvalidPoint, field + ": disk point must satisfy |z| < 1");
        doc.coords.push_back(std::move(c));
    }

    if (auto it = root.find("metadata"); it != root.end()) {
        if (!it->is_object()) fail("metadata", "expected an object of strings");
        for (const auto& [key, value] : it->items()) {
            if (!value.is_string()) fail("metadata." + key, "expected a string");
            doc.metadata[key] = value.get<std::string>();
        }
    }
    split_labels(doc);
    return doc;
}

std::string serialize_config(const ConfigDocument& doc) {
    json root;
    root["space"] = to_string(doc.space);
    root["kind"] = to_string(doc.kind);
    if (doc.basis) root["basis"] = *doc.basis;
    root[doc.kind == DocKind::Periodic ? "motif" : "points"] = doc.coords;
    if (doc.patch_radius) root["patch_radius"] = *doc.patch_radius;
    if (!doc.metadata.empty()) root["metadata"] = doc.metadata;
    return root.dump(2) + "\n";
}

ConfigDocument to_document(const PeriodicConfig& c) {
    ConfigDocument doc;
    doc.space = Space::Euclidean2;
    doc.kind = DocKind::Periodic;
    doc.basis = std::array<std::array<double, 2>, 2>{
        {{c.basis()(0, 0), c.basis()(1, 0)}, {c.basis()(0, 1), c.basis()(1, 1)}}};
    for (const auto& f : c.motif()) doc.coords.push_back({f.x(), f.y()});
    put_labels(doc, c.labels());
    return doc;
}

ConfigDocument to_document(const PlaneSet& c) {
    ConfigDocument doc;
    doc.space = Space::Euclidean2;
    doc.kind = DocKind::Finite;
    for (const auto& p : c.points()) doc.coords.push_back({p.x(), p.y()});
    put_labels(doc, c.labels());
    if (c.window() == Window::Segment) doc.metadata["window"] = "segment";
    return doc;
}

ConfigDocument to_document(const SphereSet& c) {
    ConfigDocument doc;
    doc.space = Space::Sphere2;
    doc.kind = DocKind::Finite;
    for (const auto& p : c.points()) doc.coords.push_back({p.x(), p.y(), p.z()});
    put_labels(doc, c.labels());
    return doc;
}

ConfigDocument to_document(const PatchConfig& c) {
    ConfigDocument doc;
    doc.space = Space::Hyperbolic2;
    if (std::isfinite(c.patch_radius())) {
        doc.kind = DocKind::Patch;
        doc.patch_radius = c.patch_radius();
    } else {
        doc.kind = DocKind::Finite;
    }
    for (const auto& p : c.points()) doc.coords.push_back({p.x(), p.y()});
    put_labels(doc, c.labels());
    return doc;
}

AnyConfig to_config(const ConfigDocument& doc, const Tolerance& tol) {
    const auto labels = split_labels(doc);
    switch (doc.space) {
        case Space::Euclidean2: {
            if (doc.kind == DocKind::Periodic) {
                if (!doc.basis) fail("basis", "missing required field");
                Eigen::Matrix2d b;
                b << (*doc.basis)[0][0], (*doc.basis)[1][0], (*doc.basis)[0][1], (*doc.basis)[1][1];
                std::vector<Eigen::Vector2d> motif;
                for (const auto& c : doc.coords) motif.emplace_back(c[0], c[1]);
                return PeriodicConfig(b, std::move(motif), labels, tol);
            }
            std::vector<PlanePoint> pts;
            for (const auto& c : doc.coords) pts.emplace_back(c[0], c[1]);
            auto it = doc.metadata.find("window");
            const Window w = it != doc.metadata.end() && it->second == "segment" ? Window::Segment : Window::Complete;
            return PlaneSet(std::move(pts), w, labels, tol);
        }
        case Space::Sphere2: {
            std::vector<SpherePoint> pts;
            for (const auto& c : doc.coords) pts.emplace_back(c[0], c[1], c[2]);
            return SphereSet(std::move(pts), labels, tol);
        }
        case Space::Hyperbolic2: {
            std::vector<DiskPoint> pts;
            for (const auto& c : doc.coords) pts.emplace_back(c[0], c[1]);
            const double r = doc.kind == DocKind::Patch ? doc.patch_radius.value_or(0.0)
                                                        : std::numeric_limits<double>::infinity();
            return PatchConfig(std::move(pts), r, labels, tol);
        }
    }
    fail("space", "unsupported");
}

// ------------------------------------------------------------------ reports

json params_json(const VerifyParams& params) {
    return {{"max_radius", params.max_radius},
            {"residual_tol", params.tol.residual_tol},
            {"class_tol", params.tol.class_tol},
            {"dedup_tol", params.tol.dedup_tol}};
}

json make_report(const std::string& command, const VerifyParams& params, const std::string& verdict, json details) {
    return {{"tool_version", kToolVersion},
            {"command", command},
            {"params", params_json(params)},
            {"verdict", verdict},
            {"details", std::move(details)}};
}

json to_json(const BalanceReport& r) {
    json classes = json::array();
    for (const auto& c : r.classes) {
        classes.push_back({{"point", c.point},
                           {"distance", c.distance},
                           {"members", c.members},
                           {"residual", {c.residual.x(), c.residual.y(), c.residual.z()}},
                           {"norm", c.norm},
                           {"ambiguous", c.ambiguous},
                           {"pass", c.pass}});
    }
    return {{"cutoff", r.cutoff},
            {"residual_tol", r.residual_tol},
            {"worst_residual", r.worst_residual},
            {"verified_points", r.verified_points},
            {"failing", r.failing()},
            {"ambiguous", r.any_ambiguous()},
            {"classes", std::move(classes)}};
}

json to_json(const ConfigClass& c) {
    json basis = {{c.basis(0, 0), c.basis(1, 0)}, {c.basis(0, 1), c.basis(1, 1)}};
    return {{"tag", to_string(c.tag)},
            {"basis", std::move(basis)},
            {"anchor", {c.anchor.x(), c.anchor.y()}},
            {"direction", {c.direction.x(), c.direction.y()}},
            {"size", c.size},
            {"count", c.count},
            {"min_distance", c.min_distance}};
}

json to_json(const GroupBalanceResult& g) {
    json points = json::array();
    for (std::size_t i = 0; i < g.points.size(); ++i) {
        json entry = {{"point", g.points[i]}};
        if (g.witnesses[i]) {
            entry["center"] = {g.witnesses[i]->center.x(), g.witnesses[i]->center.y()};
            entry["angle"] = g.witnesses[i]->angle;
        } else {
            entry["center"] = nullptr;
            entry["angle"] = nullptr;
        }
        points.push_back(std::move(entry));
    }
    return {{"group_balanced", g.verdict}, {"witnesses", std::move(points)}};
}

json to_json(const std::vector<CheckResult>& results) {
    json out = json::array();
    for (const auto& r : results) {
        out.push_back({{"id", r.id},
                       {"computed", r.computed},
                       {"expected", r.expected},
                       {"matches_published", r.matches_published},
                       {"bound_holds", r.bound_holds},
                       {"margin", std::isfinite(r.margin) ? json(r.margin) : json(nullptr)}});
    }
    return out;
}

}  // namespace balanced
