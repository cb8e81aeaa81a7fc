#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "balanced/io.hpp"

namespace balanced {

namespace {

enum class Marker { Circle, Square, Triangle, Diamond, Cross };

constexpr Marker kMarkers[] = {Marker::Circle, Marker::Square, Marker::Triangle, Marker::Diamond, Marker::Cross};
constexpr const char* kColors[] = {"#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e"};

struct Item {
    PlanePoint p;
    std::string label;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

class Canvas {
public:
    Canvas(const RenderWindow& w, const SvgStyle& s) : w_(w), s_(s) {
        if (w.empty()) throw Error(ErrorKind::ParameterDomain, "render window is empty");
        scale_ = (s.width_px - 2.0 * s.margin_px) / (w.xmax - w.xmin);
        height_ = (w.ymax - w.ymin) * scale_ + 2.0 * s.margin_px;
    }

    double x(double wx) const { return s_.margin_px + (wx - w_.xmin) * scale_; }
    double y(double wy) const { return s_.margin_px + (w_.ymax - wy) * scale_; }
    double scale() const { return scale_; }

    std::string header() const {
        return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
               "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
               fmt(s_.width_px) + "\" height=\"" + fmt(height_) + "\" viewBox=\"0 0 " + fmt(s_.width_px) + " " +
               fmt(height_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    std::string marker(const PlanePoint& p, Marker m, const char* color) const {
        const double cx = x(p.x()), cy = y(p.y()), r = s_.marker_px;
        const std::string fill = std::string(" fill=\"") + color + "\"";
        switch (m) {
            case Marker::Circle:
                return "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r) + "\"" + fill + "/>\n";
            case Marker::Square:
                return "<rect x=\"" + fmt(cx - r) + "\" y=\"" + fmt(cy - r) + "\" width=\"" + fmt(2 * r) +
                       "\" height=\"" + fmt(2 * r) + "\"" + fill + "/>\n";
            case Marker::Triangle:
                return "<polygon points=\"" + fmt(cx) + "," + fmt(cy - r) + " " + fmt(cx + r) + "," + fmt(cy + r) +
                       " " + fmt(cx - r) + "," + fmt(cy + r) + "\"" + fill + "/>\n";
            case Marker::Diamond:
                return "<polygon points=\"" + fmt(cx) + "," + fmt(cy - r) + " " + fmt(cx + r) + "," + fmt(cy) + " " +
                       fmt(cx) + "," + fmt(cy + r) + " " + fmt(cx - r) + "," + fmt(cy) + "\"" + fill + "/>\n";
            case Marker::Cross:
                return "<path d=\"M" + fmt(cx - r) + " " + fmt(cy - r) + "L" + fmt(cx + r) + " " + fmt(cy + r) + "M" +
                       fmt(cx - r) + " " + fmt(cy + r) + "L" + fmt(cx + r) + " " + fmt(cy - r) +
                       "\" stroke=\"" + color + "\" stroke-width=\"1.5\" fill=\"none\"/>\n";
        }
        return {};
    }

private:
    RenderWindow w_;
    SvgStyle s_;
    double scale_ = 1.0;
    double height_ = 0.0;
};

// One marker class per distinct label, in order of first appearance.
std::string draw(const Canvas& canvas, const std::vector<Item>& items, const std::string& extra) {
    std::vector<std::string> classes;
    for (const auto& it : items)
        if (std::find(classes.begin(), classes.end(), it.label) == classes.end()) classes.push_back(it.label);
    std::string out = canvas.header() + extra;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const std::size_t style = c % std::size(kMarkers);
        out += "<g class=\"" + (classes[c].empty() ? std::string("point") : classes[c]) + "\">\n";
        for (const auto& it : items)
            if (it.label == classes[c]) out += canvas.marker(it.p, kMarkers[style], kColors[style]);
        out += "</g>\n";
    }
    return out + "</svg>\n";
}

}  // namespace

std::string render_svg(const PeriodicConfig& c, const RenderWindow& window, const SvgStyle& style) {
    const Canvas canvas(window, style);
    const Eigen::Matrix2d& b = c.reduced_basis();
    const Eigen::Matrix2d inv = c.reduced_inverse();
    double lo_a = 1e300, hi_a = -1e300, lo_b = 1e300, hi_b = -1e300;
    for (double x : {window.xmin, window.xmax})
        for (double y : {window.ymin, window.ymax}) {
            const Eigen::Vector2d f = inv * PlanePoint(x, y);
            lo_a = std::min(lo_a, f.x());
            hi_a = std::max(hi_a, f.x());
            lo_b = std::min(lo_b, f.y());
            hi_b = std::max(hi_b, f.y());
        }
    std::vector<Item> items;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Eigen::Vector2d m = inv * c.motif_point(i);
        for (long a = long(std::floor(lo_a - m.x())) - 1; a <= long(std::ceil(hi_a - m.x())) + 1; ++a)
            for (long k = long(std::floor(lo_b - m.y())) - 1; k <= long(std::ceil(hi_b - m.y())) + 1; ++k) {
                const PlanePoint p = c.motif_point(i) + b * Eigen::Vector2d(double(a), double(k));
                if (p.x() >= window.xmin && p.x() <= window.xmax && p.y() >= window.ymin && p.y() <= window.ymax)
                    items.push_back({p, c.label(i)});
            }
    }
    return draw(canvas, items, "");
}

std::string render_svg(const PlaneSet& c, const SvgStyle& style) {
    if (c.size() == 0) throw Error(ErrorKind::ParameterDomain, "render window is empty");
    RenderWindow w{1e300, -1e300, 1e300, -1e300};
    for (const auto& p : c.points()) {
        w.xmin = std::min(w.xmin, p.x());
        w.xmax = std::max(w.xmax, p.x());
        w.ymin = std::min(w.ymin, p.y());
        w.ymax = std::max(w.ymax, p.y());
    }
    const double pad = std::max({w.xmax - w.xmin, w.ymax - w.ymin, 1.0}) * 0.05 + 0.5;
    w.xmin -= pad;
    w.xmax += pad;
    w.ymin -= pad;
    w.ymax += pad;
    std::vector<Item> items;
    for (std::size_t i = 0; i < c.size(); ++i) items.push_back({c[i], c.label(i)});
    return draw(Canvas(w, style), items, "");
}

std::string render_svg(const PatchConfig& c, const SvgStyle& style) {
    const RenderWindow w{-1.05, 1.05, -1.05, 1.05};
    const Canvas canvas(w, style);
    std::string circle;
    if (style.unit_circle)
        circle = "<circle cx=\"" + fmt(canvas.x(0.0)) + "\" cy=\"" + fmt(canvas.y(0.0)) + "\" r=\"" +
                 fmt(canvas.scale()) + "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
    std::vector<Item> items;
    for (std::size_t i = 0; i < c.size(); ++i) items.push_back({c[i], c.label(i)});
    return draw(canvas, items, circle);
}

}  // namespace balanced
