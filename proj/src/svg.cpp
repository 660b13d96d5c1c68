#include "setid/svg.hpp"

#include <cstdio>
#include <sstream>

namespace setid::svg {

namespace {

constexpr double kSize = 420.0;
constexpr double kMargin = 50.0;
constexpr double kSpan = 1.12; // data range drawn on each axis

double px(double x) { return kMargin + x / kSpan * (kSize - 2 * kMargin) * kSpan; }
double py(double y) { return kSize - kMargin - y / kSpan * (kSize - 2 * kMargin) * kSpan; }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

} // namespace

Figure::Figure(std::string x_label, std::string y_label)
    : x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void Figure::add_region(const geom::ConvexRegion2D& region, const std::string& fill,
                        double opacity) {
    Poly p;
    for (const auto& v : region.vertices())
        p.pts.emplace_back(rat_double(v.x), rat_double(v.y));
    p.fill = fill;
    p.opacity = opacity;
    polys_.push_back(std::move(p));
}

void Figure::add_corner_guides(const geom::ConvexRegion2D& region) {
    if (region.empty()) return;
    guides_.emplace_back(rat_double(region.max_x()), 0.0);
    guides_.emplace_back(0.0, rat_double(region.max_y()));
}

std::string Figure::render() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
       << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
    os << "  <rect width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";

    // simplex boundary
    os << "  <polygon points=\"" << fmt(px(0)) << "," << fmt(py(0)) << " " << fmt(px(1)) << ","
       << fmt(py(0)) << " " << fmt(px(0)) << "," << fmt(py(1))
       << "\" fill=\"none\" stroke=\"#e8a33d\" stroke-width=\"1.5\"/>\n";

    for (const auto& poly : polys_) {
        if (poly.pts.empty()) continue;
        if (poly.pts.size() == 1) {
            os << "  <circle cx=\"" << fmt(px(poly.pts[0].first)) << "\" cy=\""
               << fmt(py(poly.pts[0].second)) << "\" r=\"2.5\" fill=\"" << poly.fill
               << "\" fill-opacity=\"" << fmt(poly.opacity) << "\"/>\n";
            continue;
        }
        os << "  <polygon points=\"";
        bool first = true;
        for (const auto& [x, y] : poly.pts) {
            if (!first) os << ' ';
            os << fmt(px(x)) << "," << fmt(py(y));
            first = false;
        }
        os << "\" fill=\"" << poly.fill << "\" fill-opacity=\"" << fmt(poly.opacity)
           << "\" stroke=\"" << poly.fill << "\"/>\n";
    }

    for (const auto& [gx, gy] : guides_) {
        if (gx > 0) {
            os << "  <line x1=\"" << fmt(px(gx)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\""
               << fmt(px(gx)) << "\" y2=\"" << fmt(py(0) + 4) << "\" stroke=\"black\"/>\n";
            os << "  <text x=\"" << fmt(px(gx)) << "\" y=\"" << fmt(py(0) + 16)
               << "\" font-size=\"10\" text-anchor=\"middle\">" << fmt3(gx) << "</text>\n";
        }
        if (gy > 0) {
            os << "  <line x1=\"" << fmt(px(0) - 4) << "\" y1=\"" << fmt(py(gy)) << "\" x2=\""
               << fmt(px(0)) << "\" y2=\"" << fmt(py(gy)) << "\" stroke=\"black\"/>\n";
            os << "  <text x=\"" << fmt(px(0) - 6) << "\" y=\"" << fmt(py(gy) + 3)
               << "\" font-size=\"10\" text-anchor=\"end\">" << fmt3(gy) << "</text>\n";
        }
    }

    // axes
    os << "  <line x1=\"" << fmt(px(0)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(px(kSpan))
       << "\" y2=\"" << fmt(py(0)) << "\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
    os << "  <line x1=\"" << fmt(px(0)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(px(0))
       << "\" y2=\"" << fmt(py(kSpan)) << "\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
    os << "  <text x=\"" << fmt(px(kSpan) - 4) << "\" y=\"" << fmt(py(0) + 28)
       << "\" font-size=\"11\" text-anchor=\"end\">" << x_label_ << "</text>\n";
    os << "  <text x=\"" << fmt(px(0)) << "\" y=\"" << fmt(py(kSpan) - 8)
       << "\" font-size=\"11\">" << y_label_ << "</text>\n";
    os << "  <text x=\"" << fmt(px(1)) << "\" y=\"" << fmt(py(0) + 16)
       << "\" font-size=\"10\" text-anchor=\"middle\">1</text>\n";
    os << "  <text x=\"" << fmt(px(0) - 6) << "\" y=\"" << fmt(py(1) + 3)
       << "\" font-size=\"10\" text-anchor=\"end\">1</text>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace setid::svg
