#include "setid/polytope.hpp"

#include "setid/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace setid::geom {

namespace {

Rat cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool lex_less(const Point2& a, const Point2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

} // namespace

void HalfspaceSystem::add_inequality(std::vector<Rat> coeffs, Rat bound, std::string label) {
    if (coeffs.size() != dim_) throw InvalidInput("halfspace coefficient length != dimension");
    ineqs_.push_back({std::move(coeffs), std::move(bound), std::move(label)});
}

void HalfspaceSystem::add_equality(std::vector<Rat> coeffs, Rat value, std::string label) {
    if (coeffs.size() != dim_) throw InvalidInput("equality coefficient length != dimension");
    eqs_.push_back({std::move(coeffs), std::move(value), std::move(label)});
}

bool contains(const HalfspaceSystem& sys, const std::vector<Rat>& point) {
    if (point.size() != sys.dimension()) throw InvalidInput("point dimension mismatch");
    for (const auto& h : sys.inequalities()) {
        Rat lhs(0);
        for (std::size_t i = 0; i < point.size(); ++i) lhs += h.coeffs[i] * point[i];
        if (lhs > h.bound) return false;
    }
    for (const auto& e : sys.equalities()) {
        Rat lhs(0);
        for (std::size_t i = 0; i < point.size(); ++i) lhs += e.coeffs[i] * point[i];
        if (lhs != e.value) return false;
    }
    return true;
}

lp::Result support_point(const HalfspaceSystem& sys, const std::vector<Rat>& direction) {
    if (direction.size() != sys.dimension()) throw InvalidInput("direction dimension mismatch");
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    for (const auto& h : sys.inequalities()) {
        A.push_back(h.coeffs);
        b.push_back(h.bound);
    }
    std::vector<std::vector<Rat>> E;
    std::vector<Rat> d;
    for (const auto& e : sys.equalities()) {
        E.push_back(e.coeffs);
        d.push_back(e.value);
    }
    return lp::maximize(A, b, E, d, direction);
}

Rat support(const HalfspaceSystem& sys, const std::vector<Rat>& direction) {
    auto res = support_point(sys, direction);
    if (res.status == lp::Status::Infeasible) throw InfeasibleError("support of an empty system");
    if (res.status == lp::Status::Unbounded)
        throw UnboundedError("system unbounded in the requested direction");
    return res.value;
}

ConvexRegion2D ConvexRegion2D::from_points(std::vector<Point2> points) {
    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());

    ConvexRegion2D region;
    if (points.size() <= 2) {
        region.verts_ = std::move(points);
        return region;
    }

    // Andrew monotone chain, strict turns only (drops collinear points).
    std::vector<Point2> hull(2 * points.size());
    std::size_t k = 0;
    for (const auto& p : points) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = points.rbegin() + 1; it != points.rend(); ++it) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);

    // The chain is already counter-clockwise and starts at the sort minimum,
    // which is the lexicographically smallest vertex.
    if (hull.size() == 2 && !lex_less(hull[0], hull[1])) std::swap(hull[0], hull[1]);
    region.verts_ = std::move(hull);
    return region;
}

Rat ConvexRegion2D::max_x() const {
    if (verts_.empty()) throw InvalidInput("max_x of empty region");
    Rat best = verts_[0].x;
    for (const auto& v : verts_)
        if (v.x > best) best = v.x;
    return best;
}

Rat ConvexRegion2D::max_y() const {
    if (verts_.empty()) throw InvalidInput("max_y of empty region");
    Rat best = verts_[0].y;
    for (const auto& v : verts_)
        if (v.y > best) best = v.y;
    return best;
}

bool ConvexRegion2D::contains_point(const Point2& p) const {
    if (verts_.empty()) return false;
    if (verts_.size() == 1) return verts_[0] == p;
    if (verts_.size() == 2) {
        // on the segment?
        if (cross(verts_[0], verts_[1], p) != 0) return false;
        const Rat dot = (p.x - verts_[0].x) * (verts_[1].x - verts_[0].x) +
                        (p.y - verts_[0].y) * (verts_[1].y - verts_[0].y);
        const Rat len2 = (verts_[1].x - verts_[0].x) * (verts_[1].x - verts_[0].x) +
                         (verts_[1].y - verts_[0].y) * (verts_[1].y - verts_[0].y);
        return dot >= 0 && dot <= len2;
    }
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        const Point2& a = verts_[i];
        const Point2& b = verts_[(i + 1) % verts_.size()];
        if (cross(a, b, p) < 0) return false;
    }
    return true;
}

ConvexRegion2D vertices_2d(const HalfspaceSystem& sys) {
    if (sys.dimension() != 2) throw InvalidInput("vertices_2d needs a 2-D system");

    // boundedness / feasibility probe in the four axis directions
    const std::vector<std::vector<Rat>> dirs = {
        {Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(0), Rat(-1)}};
    for (const auto& dir : dirs) {
        auto res = support_point(sys, dir);
        if (res.status == lp::Status::Infeasible) throw InfeasibleError("empty region");
        if (res.status == lp::Status::Unbounded) throw UnboundedError("unbounded region");
    }

    // candidate vertices: pairwise intersections of boundary lines
    struct Line {
        Rat a, b, c; // a x + b y = c
    };
    std::vector<Line> lines;
    for (const auto& h : sys.inequalities()) {
        if (h.coeffs[0] == 0 && h.coeffs[1] == 0) continue;
        lines.push_back({h.coeffs[0], h.coeffs[1], h.bound});
    }
    for (const auto& e : sys.equalities()) {
        if (e.coeffs[0] == 0 && e.coeffs[1] == 0) continue;
        lines.push_back({e.coeffs[0], e.coeffs[1], e.value});
    }

    std::vector<Point2> candidates;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const Rat det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
            if (det == 0) continue;
            Point2 pt;
            pt.x = (lines[i].c * lines[j].b - lines[j].c * lines[i].b) / det;
            pt.y = (lines[i].a * lines[j].c - lines[j].a * lines[i].c) / det;
            if (contains(sys, {pt.x, pt.y})) candidates.push_back(pt);
        }
    }
    if (candidates.empty()) {
        // feasible and bounded but no two lines meet inside: a single point
        // pinned by equalities cannot reach here (equality pairs intersect),
        // so this would mean an interior-only description; report it.
        throw InvalidInput("vertices_2d: bounded region without boundary vertices");
    }
    return ConvexRegion2D::from_points(std::move(candidates));
}

ConvexRegion2D minkowski_sum(const ConvexRegion2D& a, const ConvexRegion2D& b) {
    if (a.empty() || b.empty()) throw InvalidInput("minkowski_sum of empty region");
    std::vector<Point2> sums;
    sums.reserve(a.vertices().size() * b.vertices().size());
    for (const auto& va : a.vertices())
        for (const auto& vb : b.vertices()) sums.push_back({va.x + vb.x, va.y + vb.y});
    return ConvexRegion2D::from_points(std::move(sums));
}

ConvexRegion2D scale(const ConvexRegion2D& a, const Rat& factor) {
    if (factor < 0) throw InvalidInput("negative scale factor");
    std::vector<Point2> pts;
    pts.reserve(a.vertices().size());
    for (const auto& v : a.vertices()) pts.push_back({v.x * factor, v.y * factor});
    return ConvexRegion2D::from_points(std::move(pts));
}

ConvexRegion2D intersect_halfplane(const ConvexRegion2D& region, const Rat& a, const Rat& b,
                                   const Rat& bound) {
    if (region.empty()) return region;
    const auto& vs = region.vertices();
    // explicit return type: gmpxx expression templates must not escape
    auto value = [&](const Point2& p) -> Rat { return a * p.x + b * p.y; };

    if (vs.size() == 1) {
        if (value(vs[0]) <= bound) return region;
        return ConvexRegion2D();
    }

    // Sutherland-Hodgman over the closed vertex cycle; a 2-vertex region is
    // treated as the degenerate cycle v0 -> v1 -> v0.
    std::vector<Point2> out;
    const std::size_t m = vs.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point2& cur = vs[i];
        const Point2& nxt = vs[(i + 1) % m];
        const Rat vc = value(cur), vn = value(nxt);
        if (vc <= bound) out.push_back(cur);
        if ((vc <= bound) != (vn <= bound)) {
            const Rat t = (bound - vc) / (vn - vc);
            out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
        }
    }
    return ConvexRegion2D::from_points(std::move(out));
}

ConvexRegion2D reflect_diagonal(const ConvexRegion2D& region) {
    std::vector<Point2> pts;
    for (const auto& v : region.vertices()) pts.push_back({v.y, v.x});
    return ConvexRegion2D::from_points(std::move(pts));
}

nlohmann::ordered_json to_json(const HalfspaceSystem& sys) {
    nlohmann::ordered_json j;
    j["dimension"] = sys.dimension();
    auto rows = nlohmann::ordered_json::array();
    for (const auto& h : sys.inequalities()) {
        nlohmann::ordered_json row;
        auto coeffs = nlohmann::ordered_json::array();
        for (const auto& c : h.coeffs) coeffs.push_back(rat_str(c));
        row["coeffs"] = coeffs;
        row["bound"] = rat_str(h.bound);
        if (!h.label.empty()) row["label"] = h.label;
        rows.push_back(row);
    }
    j["inequalities"] = rows;
    auto eqs = nlohmann::ordered_json::array();
    for (const auto& e : sys.equalities()) {
        nlohmann::ordered_json row;
        auto coeffs = nlohmann::ordered_json::array();
        for (const auto& c : e.coeffs) coeffs.push_back(rat_str(c));
        row["coeffs"] = coeffs;
        row["value"] = rat_str(e.value);
        if (!e.label.empty()) row["label"] = e.label;
        eqs.push_back(row);
    }
    j["equalities"] = eqs;
    return j;
}

HalfspaceSystem halfspace_system_from_json(const nlohmann::ordered_json& j) {
    HalfspaceSystem sys(j.at("dimension").get<std::size_t>());
    for (const auto& row : j.at("inequalities")) {
        std::vector<Rat> coeffs;
        for (const auto& c : row.at("coeffs")) coeffs.push_back(parse_rat(c.get<std::string>()));
        sys.add_inequality(std::move(coeffs), parse_rat(row.at("bound").get<std::string>()),
                           row.value("label", std::string()));
    }
    for (const auto& row : j.at("equalities")) {
        std::vector<Rat> coeffs;
        for (const auto& c : row.at("coeffs")) coeffs.push_back(parse_rat(c.get<std::string>()));
        sys.add_equality(std::move(coeffs), parse_rat(row.at("value").get<std::string>()),
                         row.value("label", std::string()));
    }
    return sys;
}

nlohmann::ordered_json to_json(const ConvexRegion2D& region) {
    nlohmann::ordered_json j;
    auto verts = nlohmann::ordered_json::array();
    for (const auto& v : region.vertices())
        verts.push_back(nlohmann::ordered_json::array({rat_str(v.x), rat_str(v.y)}));
    j["vertices"] = verts;
    return j;
}

ConvexRegion2D region_from_json(const nlohmann::ordered_json& j) {
    std::vector<Point2> pts;
    for (const auto& v : j.at("vertices"))
        pts.push_back({parse_rat(v.at(0).get<std::string>()), parse_rat(v.at(1).get<std::string>())});
    return ConvexRegion2D::from_points(std::move(pts));
}

} // namespace setid::geom
