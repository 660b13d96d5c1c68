#pragma once

#include "setid/lp.hpp"
#include "setid/rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace setid::geom {

struct Halfspace {
    std::vector<Rat> coeffs; // coeffs . x <= bound
    Rat bound;
    std::string label;
};

struct Equality {
    std::vector<Rat> coeffs; // coeffs . x == value
    Rat value;
    std::string label;
};

// Linear-inequality description of a convex region, kept in exact rationals.
class HalfspaceSystem {
  public:
    explicit HalfspaceSystem(std::size_t dimension) : dim_(dimension) {}

    void add_inequality(std::vector<Rat> coeffs, Rat bound, std::string label = "");
    void add_equality(std::vector<Rat> coeffs, Rat value, std::string label = "");

    std::size_t dimension() const { return dim_; }
    const std::vector<Halfspace>& inequalities() const { return ineqs_; }
    const std::vector<Equality>& equalities() const { return eqs_; }

  private:
    std::size_t dim_;
    std::vector<Halfspace> ineqs_;
    std::vector<Equality> eqs_;
};

bool contains(const HalfspaceSystem& sys, const std::vector<Rat>& point);

// Exact value of max direction.x over the system. Throws InfeasibleError /
// UnboundedError.
Rat support(const HalfspaceSystem& sys, const std::vector<Rat>& direction);

// Same LP but also returns an optimal point.
lp::Result support_point(const HalfspaceSystem& sys, const std::vector<Rat>& direction);

struct Point2 {
    Rat x, y;
    bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
};

// Convex polygon with exact vertices in canonical form: counter-clockwise,
// no three collinear, lexicographically smallest vertex first. Degenerate
// cases (segment, single point, empty) keep 2, 1 or 0 vertices.
class ConvexRegion2D {
  public:
    ConvexRegion2D() = default;
    static ConvexRegion2D from_points(std::vector<Point2> points);

    const std::vector<Point2>& vertices() const { return verts_; }
    bool empty() const { return verts_.empty(); }

    bool operator==(const ConvexRegion2D& o) const { return verts_ == o.verts_; }

    // largest x (resp. y) coordinate over the region
    Rat max_x() const;
    Rat max_y() const;

    bool contains_point(const Point2& p) const;

  private:
    std::vector<Point2> verts_;
};

// Exact vertex enumeration of a bounded nonempty 2-D system.
ConvexRegion2D vertices_2d(const HalfspaceSystem& sys);

ConvexRegion2D minkowski_sum(const ConvexRegion2D& a, const ConvexRegion2D& b);
ConvexRegion2D scale(const ConvexRegion2D& a, const Rat& factor);

// region ∩ {a*x + b*y <= bound}; result may be empty
ConvexRegion2D intersect_halfplane(const ConvexRegion2D& region, const Rat& a, const Rat& b,
                                   const Rat& bound);

// diagonal reflection (x,y) -> (y,x)
ConvexRegion2D reflect_diagonal(const ConvexRegion2D& region);

nlohmann::ordered_json to_json(const HalfspaceSystem& sys);
HalfspaceSystem halfspace_system_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const ConvexRegion2D& region);
ConvexRegion2D region_from_json(const nlohmann::ordered_json& j);

} // namespace setid::geom
