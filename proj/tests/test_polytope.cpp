#include "setid/errors.hpp"
#include "setid/polytope.hpp"

#include <doctest.h>

#include <nlohmann/json.hpp>

#include <random>

#include "helpers.hpp"

using namespace setid;
using namespace setid::geom;
using helpers::rq;

namespace {

HalfspaceSystem unit_simplex_2d() {
    HalfspaceSystem sys(2);
    sys.add_inequality({Rat(-1), Rat(0)}, Rat(0));
    sys.add_inequality({Rat(0), Rat(-1)}, Rat(0));
    sys.add_inequality({Rat(1), Rat(1)}, Rat(1));
    return sys;
}

HalfspaceSystem box_2d(const Rat& x_max, const Rat& y_max) {
    HalfspaceSystem sys(2);
    sys.add_inequality({Rat(-1), Rat(0)}, Rat(0));
    sys.add_inequality({Rat(0), Rat(-1)}, Rat(0));
    sys.add_inequality({Rat(1), Rat(0)}, x_max);
    sys.add_inequality({Rat(0), Rat(1)}, y_max);
    return sys;
}

std::vector<Point2> verts(std::initializer_list<std::pair<Rat, Rat>> pts) {
    std::vector<Point2> out;
    for (const auto& [x, y] : pts) out.push_back({x, y});
    return out;
}

} // namespace

TEST_CASE("membership in the unit simplex") {
    const auto sys = unit_simplex_2d();
    CHECK(contains(sys, {rq(1, 2), rq(1, 2)}));
    CHECK_FALSE(contains(sys, {rq(7, 10), rq(7, 10)}));
    CHECK(contains(box_2d(rq(331, 500), rq(169, 500)), {rq(331, 500), rq(169, 500)}));
    CHECK_THROWS_AS(contains(sys, {Rat(0)}), InvalidInput);
}

TEST_CASE("support values are exact optima") {
    CHECK(support(box_2d(rq(3, 5), rq(2, 5)), {Rat(1), Rat(0)}) == rq(3, 5));
    CHECK(support(unit_simplex_2d(), {Rat(1), Rat(1)}) == Rat(1));

    HalfspaceSystem empty(2);
    empty.add_inequality({Rat(1), Rat(0)}, Rat(-1));
    empty.add_inequality({Rat(-1), Rat(0)}, Rat(0));
    CHECK_THROWS_AS(support(empty, {Rat(1), Rat(0)}), InfeasibleError);

    HalfspaceSystem open(2);
    open.add_inequality({Rat(0), Rat(1)}, Rat(0));
    CHECK_THROWS_AS(support(open, {Rat(1), Rat(0)}), UnboundedError);
}

TEST_CASE("vertex enumeration of the figures' regions") {
    CHECK(vertices_2d(unit_simplex_2d()).vertices() ==
          verts({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}}));

    // rectangle cut by the minimal-vagueness line
    HalfspaceSystem fig3 = box_2d(rq(3, 5), rq(2, 5));
    fig3.add_inequality({Rat(1), Rat(1)}, rq(17, 20));
    CHECK(vertices_2d(fig3).vertices() == verts({{Rat(0), Rat(0)},
                                                 {rq(3, 5), Rat(0)},
                                                 {rq(3, 5), rq(1, 4)},
                                                 {rq(9, 20), rq(2, 5)},
                                                 {Rat(0), rq(2, 5)}}));

    CHECK(vertices_2d(box_2d(rq(331, 500), rq(169, 500))).vertices().size() == 4);

    HalfspaceSystem line(2);
    line.add_equality({Rat(1), Rat(1)}, Rat(1));
    line.add_inequality({Rat(-1), Rat(0)}, Rat(0));
    line.add_inequality({Rat(0), Rat(-1)}, Rat(0));
    CHECK(vertices_2d(line).vertices() == verts({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}));

    CHECK_THROWS_AS(vertices_2d(HalfspaceSystem(2)), UnboundedError);
}

TEST_CASE("minkowski sums from the abstention figures") {
    const auto r = helpers::rect(rq(2, 5), rq(3, 10));
    const auto tri = ConvexRegion2D::from_points(
        {{Rat(0), Rat(0)}, {rq(3, 10), Rat(0)}, {Rat(0), rq(3, 10)}});
    CHECK(minkowski_sum(r, tri).vertices() == verts({{Rat(0), Rat(0)},
                                                     {rq(7, 10), Rat(0)},
                                                     {rq(7, 10), rq(3, 10)},
                                                     {rq(2, 5), rq(3, 5)},
                                                     {Rat(0), rq(3, 5)}}));

    const auto origin = ConvexRegion2D::from_points({{Rat(0), Rat(0)}});
    CHECK(minkowski_sum(r, origin) == r);

    const auto seg_x = ConvexRegion2D::from_points({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}});
    const auto seg_y = ConvexRegion2D::from_points({{Rat(0), Rat(0)}, {Rat(0), Rat(1)}});
    CHECK(minkowski_sum(seg_x, seg_y).vertices() ==
          verts({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}}));
}

TEST_CASE("scaling") {
    CHECK(scale(helpers::rect(rq(3, 5), rq(2, 5)), rq(1, 2)) == helpers::rect(rq(3, 10), rq(1, 5)));
    const auto tri = ConvexRegion2D::from_points({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    CHECK(scale(tri, Rat(1)) == tri);
    const Rat g = rq(2646, 10000);
    CHECK(scale(tri, g).vertices() == verts({{Rat(0), Rat(0)}, {g, Rat(0)}, {Rat(0), g}}));
    CHECK(scale(tri, Rat(0)).vertices() == verts({{Rat(0), Rat(0)}}));
    CHECK_THROWS_AS(scale(tri, Rat(-1)), InvalidInput);
}

TEST_CASE("halfplane clipping keeps degenerate shapes sane") {
    const auto tri = ConvexRegion2D::from_points({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    // keep x >= 1/2
    const auto cut = intersect_halfplane(tri, Rat(-1), Rat(0), rq(-1, 2));
    CHECK(cut.vertices() == verts({{rq(1, 2), Rat(0)}, {Rat(1), Rat(0)}, {rq(1, 2), rq(1, 2)}}));
    // cut everything away
    CHECK(intersect_halfplane(tri, Rat(1), Rat(0), Rat(-1)).empty());
    // a segment survives clipping
    const auto seg = ConvexRegion2D::from_points({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}});
    const auto seg_cut = intersect_halfplane(seg, Rat(1), Rat(1), Rat(1));
    CHECK(seg_cut.vertices() == verts({{Rat(0), Rat(0)}, {rq(1, 2), rq(1, 2)}}));
}

TEST_CASE("properties on random bounded systems") {
    std::mt19937 gen(20181106);
    std::uniform_int_distribution<long> num(1, 9);
    std::uniform_int_distribution<long> coeff(-3, 3);

    for (int iter = 0; iter < 60; ++iter) {
        HalfspaceSystem sys = box_2d(rq(num(gen), 4), rq(num(gen), 4));
        const int extra = iter % 4;
        for (int k = 0; k < extra; ++k) {
            Rat a(coeff(gen)), b(coeff(gen));
            if (a == 0 && b == 0) continue;
            sys.add_inequality({a, b}, rq(num(gen), 2));
        }
        ConvexRegion2D region;
        try {
            region = vertices_2d(sys);
        } catch (const InfeasibleError&) {
            continue; // a random cut may empty the box
        }

        // every enumerated vertex satisfies the system
        for (const auto& v : region.vertices()) CHECK(contains(sys, {v.x, v.y}));

        // LP support equals the vertex maximum in random directions
        for (int d = 0; d < 6; ++d) {
            Rat dx(coeff(gen)), dy(coeff(gen));
            const Rat s = support(sys, {dx, dy});
            Rat best = dx * region.vertices()[0].x + dy * region.vertices()[0].y;
            for (const auto& v : region.vertices()) {
                const Rat val = dx * v.x + dy * v.y;
                if (val > best) best = val;
            }
            CHECK(s == best);
        }
    }
}

TEST_CASE("minkowski algebra on canonical forms") {
    std::mt19937 gen(7);
    std::uniform_int_distribution<long> num(0, 6);
    auto random_region = [&] {
        std::vector<Point2> pts;
        const int k = 3 + static_cast<int>(num(gen)) % 3;
        for (int i = 0; i < k; ++i) pts.push_back({rq(num(gen), 6), rq(num(gen), 6)});
        return ConvexRegion2D::from_points(std::move(pts));
    };
    for (int iter = 0; iter < 40; ++iter) {
        const auto a = random_region();
        const auto b = random_region();
        const auto c = random_region();
        if (a.empty() || b.empty() || c.empty()) continue;
        CHECK(minkowski_sum(a, b) == minkowski_sum(b, a));
        CHECK(minkowski_sum(minkowski_sum(a, b), c) == minkowski_sum(a, minkowski_sum(b, c)));
        const Rat f = rq(static_cast<long>(num(gen)), 3);
        CHECK(scale(minkowski_sum(a, b), f) == minkowski_sum(scale(a, f), scale(b, f)));
        CHECK(minkowski_sum(a, b).vertices().size() <=
              a.vertices().size() + b.vertices().size());
    }
}

TEST_CASE("json round trips") {
    HalfspaceSystem sys = unit_simplex_2d();
    sys.add_equality({Rat(1), Rat(1)}, Rat(1), "mass");
    const auto j = to_json(sys);
    const auto back = halfspace_system_from_json(j);
    CHECK(to_json(back) == j);

    const auto region = helpers::rect(rq(331, 500), rq(169, 500));
    CHECK(region_from_json(to_json(region)) == region);
}
