#pragma once

#include "setid/rational.hpp"

#include <vector>

namespace setid::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Rat value;               // objective at the optimum
    std::vector<Rat> point;  // an optimal point (empty unless Optimal)
};

// Exact two-phase simplex with Bland's rule over rationals.
//
//   maximize c.x   subject to   A x <= b,  E x == d,  x free.
//
// Free variables are split internally; the returned point is in the original
// coordinates. Deterministic: identical inputs give identical vertices.
Result maximize(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                const std::vector<std::vector<Rat>>& E, const std::vector<Rat>& d,
                const std::vector<Rat>& c);

} // namespace setid::lp
