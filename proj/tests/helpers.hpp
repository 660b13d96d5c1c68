#pragma once

#include "setid/polytope.hpp"
#include "setid/rational.hpp"

namespace helpers {

// canonicalized rational (mpq_class(n, d) alone does not reduce)
inline setid::Rat rq(long num, long den = 1) {
    setid::Rat q(num, den);
    q.canonicalize();
    return q;
}

inline setid::geom::Point2 pt(long xn, long xd, long yn, long yd) {
    return {rq(xn, xd), rq(yn, yd)};
}

inline setid::geom::ConvexRegion2D rect(const setid::Rat& x_max, const setid::Rat& y_max) {
    return setid::geom::ConvexRegion2D::from_points(
        {{setid::Rat(0), setid::Rat(0)}, {x_max, setid::Rat(0)}, {x_max, y_max}, {setid::Rat(0), y_max}});
}

} // namespace helpers
