#include "balanced/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "balanced/generators.hpp"
#include "balanced/io.hpp"

namespace balanced {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kOutputDirEnv = "BALANCED_OUTPUT_DIR";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

fs::path output_path(const std::string& path) {
    fs::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = fs::path(dir) / p;
    }
    return p;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    const fs::path p = output_path(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw UsageError("cannot write " + p.string());
    f << text;
}

std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    ss << f.rdbuf();
    return ss.str();
}

PlaneVector parse_vec(const std::string& text, const char* flag) {
    std::istringstream ss(text);
    double x = 0, y = 0;
    char comma = 0;
    if (!(ss >> x >> comma >> y) || comma != ',') throw UsageError(std::string(flag) + " expects x,y");
    return {x, y};
}

RenderWindow parse_window(const std::string& text) {
    std::istringstream ss(text);
    RenderWindow w;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(ss >> w.xmin >> c1 >> w.xmax >> c2 >> w.ymin >> c3 >> w.ymax) || c1 != ',' || c2 != ',' || c3 != ',')
        throw UsageError("--window expects xmin,xmax,ymin,ymax");
    return w;
}

struct Common {
    double max_radius = 6.0;
    double residual_tol = 1e-9;
    double class_tol = 1e-6;
    double dedup_tol = 1e-9;
    std::string input;
    std::string report;
    bool json_only = false;
    CLI::Option* max_radius_opt = nullptr;

    VerifyParams params() const {
        VerifyParams p;
        p.max_radius = max_radius;
        p.tol.residual_tol = residual_tol;
        p.tol.class_tol = class_tol;
        p.tol.dedup_tol = dedup_tol;
        p.validate();
        return p;
    }
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("input", c.input, "Configuration document (- for stdin)")->required();
    c.max_radius_opt =
        sub->add_option("--max-radius", c.max_radius,
                        "Distance-class cutoff in units of the minimal distance; patch documents carrying a "
                        "max_radius entry use it unless this is given")
            ->capture_default_str();
    sub->add_option("--residual-tol", c.residual_tol, "Largest residual norm that counts as balanced")
        ->capture_default_str();
    sub->add_option("--class-tol", c.class_tol, "Distance-class clustering threshold")->capture_default_str();
    sub->add_option("--dedup-tol", c.dedup_tol, "Point identification threshold")->capture_default_str();
    sub->add_option("--report", c.report, "Write the JSON report to this path");
    sub->add_flag("--json", c.json_only, "Print the JSON report instead of the summary");
}

// Writes the report and summary; returns the exit code for the verdict.
int finish(const Common& c, const json& report, const std::string& summary, int code, std::ostream& out) {
    const std::string text = report.dump(2) + "\n";
    if (!c.report.empty()) write_output(c.report, text, out);
    if (c.json_only) out << text;
    else out << summary;
    return code;
}

// ------------------------------------------------------------------ generate

struct GenerateArgs {
    std::string family;
    std::string v1 = "1,0", v2 = "0,1";
    double side = 1.0;
    std::string sets;
    int n = 41;
    double spacing = 1.0;
    std::string solid = "octahedron";
    int ngon_n = 5;
    int p = 2, q = 3, r = 7;
    int depth = -1;
    double alpha = 40.0, beta = 40.0, gamma = 40.0;
    int m = 3;
    bool normalize = false;
    std::string out;
};

// Patches cannot reach 6 minimal distances at any practical depth, so the
// document records the two-shell cutoff for verify to pick up.
ConfigDocument patch_document(const PatchConfig& c) {
    ConfigDocument doc = to_document(c);
    try {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", shell_radius(c, 2));
        doc.metadata["max_radius"] = buf;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InsufficientPatch) throw;
    }
    return doc;
}

ConfigDocument run_generate(const GenerateArgs& a) {
    const std::string sets = a.sets;
    auto flags = [&](const char* fallback) { return SubsetFlags::parse(sets.empty() ? fallback : sets); };
    if (a.family == "lattice") {
        auto c = gen_lattice(parse_vec(a.v1, "--v1"), parse_vec(a.v2, "--v2"), flags("vertices"));
        return to_document(a.normalize ? normalized(c) : c);
    }
    if (a.family == "triangular") {
        auto c = gen_triangular(a.side);
        return to_document(a.normalize ? normalized(c) : c);
    }
    if (a.family == "hexagonal") {
        auto c = gen_hexagonal(a.side, flags("vertices"));
        return to_document(a.normalize ? normalized(c) : c);
    }
    if (a.family == "line") {
        auto c = gen_line(a.n, a.spacing);
        return to_document(a.normalize ? normalized(c) : c);
    }
    if (a.family == "sphere") return to_document(gen_sphere(parse_solid(a.solid), flags("vertices"), a.ngon_n));
    if (a.family == "triangle-group") {
        const VertexTypes t = VertexTypes::parse(sets.empty() ? "p" : sets);
        return patch_document(gen_hyp_triangle_group({a.p, a.q, a.r, a.depth < 0 ? 6 : a.depth}, t));
    }
    if (a.family == "rotation") {
        const double deg = std::numbers::pi / 180.0;
        const RotationSets s = RotationSets::parse(sets.empty() ? "vertices" : sets);
        return patch_document(
            gen_hyp_rotation_tiling({a.alpha * deg, a.beta * deg, a.gamma * deg, a.m, a.depth < 0 ? 5 : a.depth}, s));
    }
    throw UsageError("unknown family '" + a.family + "'");
}

// ------------------------------------------------------------------ verify

std::string balance_summary(const BalanceReport& r) {
    std::ostringstream s;
    s << "verdict: " << (r.pass() ? "pass" : "fail") << "\n"
      << "verified points: " << r.verified_points.size() << "\n"
      << "classes checked: " << r.classes.size() << " (cutoff " << r.cutoff << ")\n"
      << "worst residual: " << r.worst_residual << " (tolerance " << r.residual_tol << ")\n";
    if (r.any_ambiguous()) s << "ambiguous distance classes present\n";
    const auto failing = r.failing();
    for (std::size_t k = 0; k < failing.size() && k < 20; ++k) {
        const auto& c = r.classes[failing[k]];
        s << "  fail: point " << c.point << " distance " << c.distance << " members " << c.members << " residual "
          << c.norm << (c.ambiguous ? " (ambiguous)" : "") << "\n";
    }
    if (failing.size() > 20) s << "  ... " << failing.size() - 20 << " more\n";
    return s.str();
}

int run_verify(Common c, const std::string& sphere_mode, std::ostream& out) {
    const ConfigDocument doc = parse_config(read_input(c.input));
    if (auto it = doc.metadata.find("max_radius"); it != doc.metadata.end() && c.max_radius_opt->count() == 0) {
        try {
            c.max_radius = std::stod(it->second);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, "metadata.max_radius: not a number");
        }
    }
    const VerifyParams params = c.params();
    const AnyConfig cfg = to_config(doc, params.tol);
    SphereMode mode = SphereMode::ScalarMultiple;
    if (sphere_mode == "tangent") mode = SphereMode::TangentProjection;
    else if (sphere_mode != "scalar") throw UsageError("--sphere-mode must be scalar or tangent");

    const BalanceReport r = std::visit(
        [&](const auto& x) -> BalanceReport {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PeriodicConfig> || std::is_same_v<T, PlaneSet>) return verify_plane(x, params);
            else if constexpr (std::is_same_v<T, SphereSet>) return verify_sphere(x, params, mode);
            else return verify_hyperbolic(x, params);
        },
        cfg);
    const std::string verdict = r.any_ambiguous() ? "error" : r.pass() ? "pass" : "fail";
    json details = to_json(r);
    details["sphere_mode"] = sphere_mode;
    const int code = r.any_ambiguous() ? kExitNumeric : r.pass() ? kExitOk : kExitNegative;
    return finish(c, make_report("verify", params, verdict, std::move(details)), balance_summary(r), code, out);
}

// ------------------------------------------------------------------ classify / symmetry

int run_classify(const Common& c, std::ostream& out) {
    const VerifyParams params = c.params();
    const AnyConfig cfg = to_config(parse_config(read_input(c.input)), params.tol);
    ConfigClass cls;
    if (auto* p = std::get_if<PeriodicConfig>(&cfg)) cls = classify(*p, params.tol);
    else if (auto* s = std::get_if<PlaneSet>(&cfg)) cls = classify(*s, params.tol);
    else throw UsageError("classify needs a planar configuration");
    const bool known = cls.tag != ConfigTag::Unknown;
    std::ostringstream s;
    s << "class: " << to_string(cls.tag) << "\n";
    if (known) s << "minimal distance: " << cls.min_distance << "\n";
    return finish(c, make_report("classify", params, known ? "pass" : "fail", to_json(cls)), s.str(),
                  known ? kExitOk : kExitNegative, out);
}

int run_symmetry(const Common& c, std::ostream& out) {
    const VerifyParams params = c.params();
    const AnyConfig cfg = to_config(parse_config(read_input(c.input)), params.tol);
    GroupBalanceResult g;
    json details;
    if (auto* p = std::get_if<PeriodicConfig>(&cfg)) {
        g = is_group_balanced(*p, params.tol);
        details = to_json(g);
        const double window = 4.0 * min_distance(*p, params.tol);
        double worst = 0.0;
        for (const auto& w : g.witnesses)
            if (w) worst = std::max(worst, witness_mismatch(*p, *w, window));
        details["max_witness_mismatch"] = worst;
    } else if (auto* s = std::get_if<PlaneSet>(&cfg)) {
        g = is_group_balanced(*s, params.tol);
        details = to_json(g);
    } else {
        throw UsageError("symmetry needs a planar configuration");
    }
    std::ostringstream s;
    s << "group-balanced: " << (g.verdict ? "yes" : "no") << "\n"
      << "points checked: " << g.points.size() << "\n";
    for (std::size_t i = 0; i < g.points.size(); ++i)
        if (!g.witnesses[i]) s << "  no rotation about point " << g.points[i] << "\n";
    return finish(c, make_report("symmetry", params, g.verdict ? "pass" : "fail", std::move(details)), s.str(),
                  g.verdict ? kExitOk : kExitNegative, out);
}

// ------------------------------------------------------------------ lemmas

int run_lemmas(const std::string& report_path, bool json_only, int samples, std::ostream& out) {
    const auto results = run_catalog();
    const bool sweep = check_angle_bound_60_90(samples);
    const bool ok = catalog_passes(results) && sweep;
    json details = {{"entries", to_json(results)}, {"angle_sweep", {{"samples", samples}, {"confirmed", sweep}}}};
    const json report = make_report("lemmas", VerifyParams{}, ok ? "pass" : "fail", std::move(details));
    std::ostringstream s;
    const auto catalog = lemma_catalog();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        char line[160];
        std::snprintf(line, sizeof line, "%-4s %-50s computed %9.5f  published %6.2f  bound %-4s %s\n", r.id.c_str(),
                      catalog[i].description.c_str(), r.computed, r.expected, to_string(catalog[i].bound),
                      r.matches_published && r.bound_holds ? "ok" : "MISMATCH");
        s << line;
    }
    s << "angle sweep over [90, 150] degrees: " << (sweep ? "no balanced placement" : "FAILED") << "\n";
    Common c;
    c.report = report_path;
    c.json_only = json_only;
    return finish(c, report, s.str(), ok ? kExitOk : kExitNegative, out);
}

// ------------------------------------------------------------------ render

int run_render(const std::string& input, const std::string& window, bool no_circle, const std::string& out_path,
               std::ostream& out) {
    const AnyConfig cfg = to_config(parse_config(read_input(input)));
    SvgStyle style;
    style.unit_circle = !no_circle;
    std::string svg;
    if (auto* p = std::get_if<PeriodicConfig>(&cfg)) svg = render_svg(*p, parse_window(window), style);
    else if (auto* s = std::get_if<PlaneSet>(&cfg)) svg = render_svg(*s, style);
    else if (auto* h = std::get_if<PatchConfig>(&cfg)) svg = render_svg(*h, style);
    else throw UsageError("render supports planar and disk configurations");
    write_output(out_path, svg, out);
    return kExitOk;
}

int error_code(const Error& e) { return e.is_numeric() || e.kind() == ErrorKind::DegenerateDirection ? kExitNumeric : kExitUsage; }

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Balanced point configurations: generate, verify, classify and render", "balanced"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    GenerateArgs g;
    auto* gen = app.add_subcommand("generate", "Write a configuration document for a family");
    gen->add_option("--family", g.family, "lattice, triangular, hexagonal, line, sphere, triangle-group, rotation")
        ->required();
    gen->add_option("--v1", g.v1, "First lattice vector x,y")->capture_default_str();
    gen->add_option("--v2", g.v2, "Second lattice vector x,y")->capture_default_str();
    gen->add_option("--side", g.side, "Triangle or hexagon side")->capture_default_str();
    gen->add_option("--sets", g.sets,
                    "Comma list: vertices,midpoints,centers; p,q,r for triangle groups; "
                    "vertices,mid_ab,mid_ac,mid_bc for rotation tilings");
    gen->add_option("--n", g.n, "Number of line points")->capture_default_str();
    gen->add_option("--spacing", g.spacing, "Line spacing")->capture_default_str();
    gen->add_option("--solid", g.solid, "tetrahedron, cube, octahedron, dodecahedron, icosahedron, ngon")
        ->capture_default_str();
    gen->add_option("--ngon-n", g.ngon_n, "n for the ngon tiling")->capture_default_str();
    gen->add_option("--p", g.p)->capture_default_str();
    gen->add_option("--q", g.q)->capture_default_str();
    gen->add_option("--r", g.r)->capture_default_str();
    gen->add_option("--depth", g.depth, "Vertex-star layers around the seed triangle (default 6, rotation 5)");
    gen->add_option("--alpha", g.alpha, "Rotation tiling angle in degrees")->capture_default_str();
    gen->add_option("--beta", g.beta, "Rotation tiling angle in degrees")->capture_default_str();
    gen->add_option("--gamma", g.gamma, "Rotation tiling angle in degrees")->capture_default_str();
    gen->add_option("--m", g.m, "Repeats of the angle pattern around each vertex")->capture_default_str();
    gen->add_flag("--normalize", g.normalize, "Rescale planar output to minimal distance 1");
    gen->add_option("-o,--out", g.out, "Output path (default stdout)");

    Common vc;
    std::string sphere_mode = "scalar";
    auto* ver = app.add_subcommand("verify", "Check balance up to the cutoff radius");
    add_common(ver, vc);
    ver->add_option("--sphere-mode", sphere_mode, "scalar or tangent")->capture_default_str();

    Common cc;
    auto* cls = app.add_subcommand("classify", "Identify the planar family of a configuration");
    add_common(cls, cc);

    Common sc;
    auto* sym = app.add_subcommand("symmetry", "Search rotation witnesses for group balance");
    add_common(sym, sc);

    std::string lemma_report;
    bool lemma_json = false;
    int samples = 1000;
    auto* lem = app.add_subcommand("lemmas", "Evaluate the inequality and scene catalog");
    lem->add_option("--report", lemma_report, "Write the JSON report to this path");
    lem->add_flag("--json", lemma_json, "Print the JSON report instead of the summary");
    lem->add_option("--samples", samples, "Angle sweep samples (at least 100)")->capture_default_str();

    std::string render_input, render_window = "-5,5,-5,5", render_out;
    bool no_circle = false;
    auto* ren = app.add_subcommand("render", "Write an SVG drawing");
    ren->add_option("input", render_input, "Configuration document (- for stdin)")->required();
    ren->add_option("--window", render_window, "xmin,xmax,ymin,ymax for periodic input")->capture_default_str();
    ren->add_flag("--no-circle", no_circle, "Omit the disk boundary");
    ren->add_option("-o,--out", render_out, "Output path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) {
            write_output(g.out, serialize_config(run_generate(g)), out);
            return kExitOk;
        }
        if (*ver) return run_verify(vc, sphere_mode, out);
        if (*cls) return run_classify(cc, out);
        if (*sym) return run_symmetry(sc, out);
        if (*lem) return run_lemmas(lemma_report, lemma_json, samples, out);
        if (*ren) return run_render(render_input, render_window, no_circle, render_out, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return error_code(e);
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return cli_main(args, std::cout, std::cerr);
}

}  // namespace balanced
