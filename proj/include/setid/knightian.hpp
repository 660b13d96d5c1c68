#pragma once

#include "setid/polytope.hpp"
#include "setid/rational.hpp"

#include <string>
#include <vector>

namespace setid::knightian {

// Per-state utilities for each alternative, exact rationals.
struct StateUtility {
    std::vector<std::string> states;
    std::vector<std::string> alternatives;
    std::vector<std::vector<Rat>> utilities; // [alternative][state]

    void validate() const;
};

// Convex set of priors over the states, held by its vertices.
struct PriorSet {
    std::vector<std::vector<Rat>> vertices; // each a probability vector

    void validate(std::size_t n_states) const;

    // H-representation input, converted by vertex enumeration. Supported for
    // up to 3 states; larger state spaces must supply vertices directly.
    static PriorSet from_halfspaces(const geom::HalfspaceSystem& sys);
};

enum class Comparison { XOverY, YOverX, Incomparable };

// x > y iff E_pi[u(x) - u(y)] > 0 for every prior; the minimum of a linear
// functional over the prior set is attained at a vertex, so vertex scans
// decide it exactly. A minimum of exactly 0 counts as incomparable.
Comparison bewley_prefers(std::size_t x, std::size_t y, const StateUtility& su,
                          const PriorSet& priors);

// Alternatives not strictly beaten under bewley_prefers; never empty.
std::vector<std::size_t> knightian_nondominated(const StateUtility& su, const PriorSet& priors);

} // namespace setid::knightian
