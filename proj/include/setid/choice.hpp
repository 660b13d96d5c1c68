#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace setid::choice {

// Closed utility interval [lower, upper]; upper - lower is the vagueness.
struct UtilityInterval {
    double lower = 0;
    double upper = 0;
};

struct UtilityProfile {
    std::vector<std::string> alternatives;
    std::vector<UtilityInterval> intervals;

    void validate() const; // nonempty, unique names, lower <= upper
    std::size_t size() const { return alternatives.size(); }
};

// Alternatives whose upper utility reaches the largest lower utility. The
// boundary tie counts as not dominated, so the result is never empty.
// Indices are returned in ascending order.
std::vector<std::size_t> nondominated_set(const UtilityProfile& profile);

// Strict relation over indices 0..size-1; irreflexive by construction.
class StrictRelation {
  public:
    explicit StrictRelation(std::vector<std::string> ground);

    void add_pair(std::size_t below, std::size_t above);
    bool related(std::size_t below, std::size_t above) const;

    std::size_t size() const { return ground_.size(); }
    const std::vector<std::string>& ground() const { return ground_; }
    const std::set<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }

  private:
    std::vector<std::string> ground_;
    std::set<std::pair<std::size_t, std::size_t>> pairs_;
};

struct IntervalOrderCheck {
    bool is_interval_order = false;
    // first violating quadruple (x,y,z,w): x<y and z<w but neither x<w nor z<y
    std::optional<std::array<std::size_t, 4>> witness;
};

// Irreflexivity plus Fishburn's transitivity variant, checked exhaustively.
// Ground sets larger than 12 are rejected.
IntervalOrderCheck is_interval_order(const StrictRelation& rel);

// Integer-grid interval representation with x<y iff upper(x) < lower(y),
// found as a difference-constraint system with strictness margin 1.
// Returns nullopt when the relation is not an interval order.
std::optional<UtilityProfile> fishburn_representation(const StrictRelation& rel);

// Binary minmax-regret choice: the alternative with the larger lower+upper
// sum (equivalently larger midpoint). Exact ties throw TieError.
std::size_t minmax_regret_choice(const UtilityProfile& profile);

} // namespace setid::choice
