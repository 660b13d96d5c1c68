#include "setid/knightian.hpp"

#include "setid/errors.hpp"

#include <algorithm>

namespace setid::knightian {

void StateUtility::validate() const {
    if (states.empty()) throw InvalidInput("no states");
    if (alternatives.empty()) throw InvalidInput("no alternatives");
    if (utilities.size() != alternatives.size())
        throw InvalidInput("utility row count != alternative count");
    for (const auto& row : utilities)
        if (row.size() != states.size()) throw InvalidInput("utility vector length != state count");
}

void PriorSet::validate(std::size_t n_states) const {
    if (vertices.empty()) throw InvalidInput("prior set has no vertices");
    for (const auto& v : vertices) {
        if (v.size() != n_states) throw InvalidInput("prior vector length != state count");
        Rat sum(0);
        for (const auto& q : v) {
            if (q < 0) throw InvalidInput("negative prior probability");
            sum += q;
        }
        if (sum != 1) throw InvalidInput("prior does not sum to 1");
    }
}

PriorSet PriorSet::from_halfspaces(const geom::HalfspaceSystem& sys) {
    const std::size_t s = sys.dimension();
    if (s == 0 || s > 3)
        throw InvalidInput("halfspace prior sets supported only for 1..3 states");

    PriorSet out;
    if (s == 1) {
        if (!geom::contains(sys, {Rat(1)})) throw InfeasibleError("prior system excludes pi=1");
        out.vertices.push_back({Rat(1)});
        return out;
    }

    // Substitute pi_last = 1 - sum(others) and enumerate in the reduced space.
    auto reduce = [&](const std::vector<Rat>& coeffs, const Rat& rhs) {
        std::vector<Rat> red(s - 1);
        for (std::size_t i = 0; i + 1 < s; ++i) red[i] = coeffs[i] - coeffs[s - 1];
        return std::make_pair(red, rhs - coeffs[s - 1]);
    };

    if (s == 2) {
        // one free coordinate pi_0 in [0,1]
        geom::HalfspaceSystem red(1);
        for (const auto& h : sys.inequalities()) {
            auto [c, b] = reduce(h.coeffs, h.bound);
            red.add_inequality(std::move(c), b);
        }
        for (const auto& e : sys.equalities()) {
            auto [c, b] = reduce(e.coeffs, e.value);
            red.add_equality(std::move(c), b);
        }
        red.add_inequality({Rat(-1)}, Rat(0));
        red.add_inequality({Rat(1)}, Rat(1));
        const Rat hi = geom::support(red, {Rat(1)});
        const Rat lo = -geom::support(red, {Rat(-1)});
        out.vertices.push_back({lo, Rat(1) - lo});
        if (hi != lo) out.vertices.push_back({hi, Rat(1) - hi});
        return out;
    }

    geom::HalfspaceSystem red(2);
    for (const auto& h : sys.inequalities()) {
        auto [c, b] = reduce(h.coeffs, h.bound);
        red.add_inequality(std::move(c), b);
    }
    for (const auto& e : sys.equalities()) {
        auto [c, b] = reduce(e.coeffs, e.value);
        red.add_equality(std::move(c), b);
    }
    red.add_inequality({Rat(-1), Rat(0)}, Rat(0));
    red.add_inequality({Rat(0), Rat(-1)}, Rat(0));
    red.add_inequality({Rat(1), Rat(1)}, Rat(1));
    const auto region = geom::vertices_2d(red);
    for (const auto& v : region.vertices())
        out.vertices.push_back({v.x, v.y, Rat(1) - v.x - v.y});
    return out;
}

Comparison bewley_prefers(std::size_t x, std::size_t y, const StateUtility& su,
                          const PriorSet& priors) {
    su.validate();
    priors.validate(su.states.size());
    if (x >= su.alternatives.size() || y >= su.alternatives.size())
        throw InvalidInput("alternative index out of range");

    bool x_always_above = true, y_always_above = true;
    for (const auto& pi : priors.vertices) {
        Rat diff(0);
        for (std::size_t s = 0; s < pi.size(); ++s)
            diff += pi[s] * (su.utilities[x][s] - su.utilities[y][s]);
        if (diff <= 0) x_always_above = false;
        if (diff >= 0) y_always_above = false;
    }
    if (x_always_above) return Comparison::XOverY;
    if (y_always_above) return Comparison::YOverX;
    return Comparison::Incomparable;
}

std::vector<std::size_t> knightian_nondominated(const StateUtility& su, const PriorSet& priors) {
    su.validate();
    priors.validate(su.states.size());
    std::vector<std::size_t> keep;
    for (std::size_t a = 0; a < su.alternatives.size(); ++a) {
        bool dominated = false;
        for (std::size_t b = 0; b < su.alternatives.size() && !dominated; ++b) {
            if (b == a) continue;
            dominated = bewley_prefers(b, a, su, priors) == Comparison::XOverY;
        }
        if (!dominated) keep.push_back(a);
    }
    return keep;
}

} // namespace setid::knightian
