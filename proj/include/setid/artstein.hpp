#pragma once

#include "setid/polytope.hpp"
#include "setid/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace setid::artstein {

// Nonempty subset of alternatives as a bitmask over positions; n <= 16.
using Mask = std::uint32_t;

std::string subset_label(Mask mask, std::size_t n);
Mask mask_from_label(const std::string& label, std::size_t n);

// Probability mass over all nonempty subsets of the feasible set. The mass of
// subset A sits at masses[A-1].
struct ChoiceParamVector {
    std::size_t n = 0;
    std::vector<Rat> masses; // size (1<<n)-1

    void validate() const; // nonneg, sums to 1
    const Rat& mass(Mask m) const { return masses.at(m - 1); }
    Rat& mass(Mask m) { return masses.at(m - 1); }
    static ChoiceParamVector zeros(std::size_t n);
};

// Observed per-alternative choice probabilities.
struct ChoiceFrequencies {
    std::size_t n = 0;
    std::vector<Rat> probs;
    std::optional<std::string> instrument_label;
    std::optional<Rat> gamma;

    void validate_sums_to_one() const;
};

// C_M(A): total mass of nonempty subsets contained in `target`.
Rat containment_functional(const ChoiceParamVector& theta, Mask target);

// Sharp identification region: the simplex plus, for every nonempty A, the
// constraint  sum_{A' subseteq A} theta_{A'} <= sum_{a in A} p_a.  The full-set
// constraint is generated too even though the simplex equality implies it.
geom::HalfspaceSystem build_sharp_region(const ChoiceFrequencies& p);

// Relaxation using only the singleton constraints theta_a <= p_a.
geom::HalfspaceSystem build_theta1_region(const ChoiceFrequencies& p);

struct FlowEntry {
    Mask subset;
    std::size_t alternative;
    Rat amount;
};

struct FeasibilityResult {
    bool feasible = false;
    std::vector<FlowEntry> flow; // q(a|A) masses when feasible
    std::string violated;        // a violated Artstein inequality when infeasible
};

// Independent selection-feasibility oracle: does a conditional selection
// q(a|A) >= 0 exist with sum_{a in A} q(a|A) = theta_A and
// sum_{A owns a} q(a|A) = p_a? Decided by exact max-flow, not by the
// inequality system above.
FeasibilityResult selection_feasible(const ChoiceParamVector& theta, const ChoiceFrequencies& p);

// A point of Theta^1 violating the pair constraint of the sharp region for
// pair_mask (|pair_mask| >= 2), when one exists. Found by maximizing the
// violation over Theta^1.
std::optional<ChoiceParamVector> strict_inclusion_witness(const ChoiceFrequencies& p,
                                                          Mask pair_mask);

// Direction vector whose support over a region is sum_{A' subseteq mask} theta_{A'}.
std::vector<Rat> subset_sum_direction(std::size_t n, Mask mask);

} // namespace setid::artstein
