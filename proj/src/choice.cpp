#include "setid/choice.hpp"

#include "setid/errors.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace setid::choice {

void UtilityProfile::validate() const {
    if (alternatives.empty()) throw InvalidInput("profile has no alternatives");
    if (alternatives.size() != intervals.size())
        throw InvalidInput("profile alternative/interval count mismatch");
    std::unordered_set<std::string> seen;
    for (const auto& name : alternatives)
        if (!seen.insert(name).second) throw InvalidInput("duplicate alternative: " + name);
    for (const auto& iv : intervals)
        if (!(iv.lower <= iv.upper)) throw InvalidInput("interval with lower > upper");
}

std::vector<std::size_t> nondominated_set(const UtilityProfile& profile) {
    profile.validate();
    double max_lower = -std::numeric_limits<double>::infinity();
    for (const auto& iv : profile.intervals) max_lower = std::max(max_lower, iv.lower);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < profile.intervals.size(); ++i)
        if (profile.intervals[i].upper >= max_lower) keep.push_back(i);
    return keep;
}

StrictRelation::StrictRelation(std::vector<std::string> ground) : ground_(std::move(ground)) {
    std::unordered_set<std::string> seen;
    for (const auto& name : ground_)
        if (!seen.insert(name).second) throw InvalidInput("duplicate ground element: " + name);
}

void StrictRelation::add_pair(std::size_t below, std::size_t above) {
    if (below >= size() || above >= size()) throw InvalidInput("relation pair out of range");
    if (below == above) throw InvalidInput("strict relation cannot be reflexive");
    pairs_.insert({below, above});
}

bool StrictRelation::related(std::size_t below, std::size_t above) const {
    return pairs_.count({below, above}) > 0;
}

IntervalOrderCheck is_interval_order(const StrictRelation& rel) {
    if (rel.size() > 12) throw InvalidInput("is_interval_order: ground set larger than 12");
    // x<y and z<w  =>  x<w or z<y, over all ordered pairs of relation pairs
    for (const auto& [x, y] : rel.pairs()) {
        for (const auto& [z, w] : rel.pairs()) {
            if (!rel.related(x, w) && !rel.related(z, y))
                return {false, std::array<std::size_t, 4>{x, y, z, w}};
        }
    }
    return {true, std::nullopt};
}

std::optional<UtilityProfile> fishburn_representation(const StrictRelation& rel) {
    const std::size_t k = rel.size();
    if (k == 0) throw InvalidInput("empty ground set");

    // Difference constraints over variables L_0..L_{k-1}, U_0..U_{k-1}:
    //   U_i - L_i >= 0                 (valid interval)
    //   L_j - U_i >= 1    for i < j    (strictly below, margin 1)
    //   U_i - L_j >= 0    otherwise    (overlap: j not above i)
    // Written as X_v - X_u <= w they become edges u -> v; Bellman-Ford from a
    // virtual source yields an integer solution or finds a negative cycle.
    struct Edge {
        std::size_t from, to;
        long long w;
    };
    const auto L = [&](std::size_t i) { return i; };
    const auto U = [&](std::size_t i) { return k + i; };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < k; ++i) edges.push_back({U(i), L(i), 0});
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            if (rel.related(i, j))
                edges.push_back({L(j), U(i), -1});
            else
                edges.push_back({U(i), L(j), 0});
        }
    }

    const std::size_t nv = 2 * k;
    std::vector<long long> dist(nv, 0); // virtual source at distance 0 to all
    for (std::size_t round = 0; round < nv; ++round) {
        bool changed = false;
        for (const auto& e : edges) {
            if (dist[e.from] + e.w < dist[e.to]) {
                dist[e.to] = dist[e.from] + e.w;
                changed = true;
            }
        }
        if (!changed) break;
        if (round + 1 == nv) return std::nullopt; // negative cycle: not an interval order
    }

    UtilityProfile profile;
    profile.alternatives = rel.ground();
    profile.intervals.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        profile.intervals[i].lower = static_cast<double>(dist[L(i)]);
        profile.intervals[i].upper = static_cast<double>(dist[U(i)]);
    }
    profile.validate();
    return profile;
}

std::size_t minmax_regret_choice(const UtilityProfile& profile) {
    profile.validate();
    if (profile.size() != 2) throw InvalidInput("minmax_regret_choice needs exactly 2 alternatives");
    const double s0 = profile.intervals[0].lower + profile.intervals[0].upper;
    const double s1 = profile.intervals[1].lower + profile.intervals[1].upper;
    if (s0 == s1) throw TieError("minmax regret tie");
    return s0 > s1 ? 0 : 1;
}

} // namespace setid::choice
