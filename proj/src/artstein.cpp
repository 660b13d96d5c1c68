#include "setid/artstein.hpp"

#include "setid/errors.hpp"

#include <bit>
#include <deque>
#include <sstream>

namespace setid::artstein {

namespace {

constexpr std::size_t kMaxAlternatives = 16;
constexpr std::size_t kMaxOracleAlternatives = 12;

void check_n(std::size_t n) {
    if (n == 0) throw InvalidInput("need at least one alternative");
    if (n > kMaxAlternatives) throw InvalidInput("more than 16 alternatives");
}

Rat subset_prob(const ChoiceFrequencies& p, Mask mask) {
    Rat sum(0);
    for (std::size_t a = 0; a < p.n; ++a)
        if (mask & (Mask(1) << a)) sum += p.probs[a];
    return sum;
}

void add_simplex(geom::HalfspaceSystem& sys, std::size_t n) {
    const std::size_t dim = (std::size_t(1) << n) - 1;
    for (Mask m = 1; m <= dim; ++m) {
        std::vector<Rat> coeffs(dim, Rat(0));
        coeffs[m - 1] = -1;
        sys.add_inequality(std::move(coeffs), Rat(0), "theta_" + subset_label(m, n) + " >= 0");
    }
    sys.add_equality(std::vector<Rat>(dim, Rat(1)), Rat(1), "total mass = 1");
}

} // namespace

std::string subset_label(Mask mask, std::size_t n) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (std::size_t a = 0; a < n; ++a) {
        if (!(mask & (Mask(1) << a))) continue;
        if (!first) os << ',';
        os << 'a' << a;
        first = false;
    }
    os << '}';
    return os.str();
}

Mask mask_from_label(const std::string& label, std::size_t n) {
    std::string body = label;
    if (!body.empty() && body.front() == '{') body = body.substr(1, body.size() - 2);
    Mask mask = 0;
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
        while (!tok.empty() && tok.back() == ' ') tok.pop_back();
        if (tok.size() < 2 || tok.front() != 'a') throw ParseError("bad subset element: " + tok);
        std::size_t idx = std::stoul(tok.substr(1));
        if (idx >= n) throw ParseError("subset element out of range: " + tok);
        mask |= Mask(1) << idx;
    }
    if (mask == 0) throw ParseError("empty subset label: " + label);
    return mask;
}

void ChoiceParamVector::validate() const {
    check_n(n);
    if (masses.size() != (std::size_t(1) << n) - 1)
        throw InvalidInput("theta mass count != 2^n - 1");
    Rat sum(0);
    for (const auto& m : masses) {
        if (m < 0) throw InvalidInput("negative subset mass");
        sum += m;
    }
    if (sum != 1) throw InvalidInput("subset masses must sum to 1, got " + rat_str(sum));
}

ChoiceParamVector ChoiceParamVector::zeros(std::size_t n) {
    check_n(n);
    return {n, std::vector<Rat>((std::size_t(1) << n) - 1, Rat(0))};
}

void ChoiceFrequencies::validate_sums_to_one() const {
    check_n(n);
    if (probs.size() != n) throw InvalidInput("probability count != n");
    Rat sum(0);
    for (const auto& q : probs) {
        if (q < 0) throw InvalidInput("negative choice probability");
        sum += q;
    }
    if (sum != 1)
        throw InvalidInput("choice probabilities must sum to 1, got " + rat_str(sum));
}

Rat containment_functional(const ChoiceParamVector& theta, Mask target) {
    if (target == 0 || target >= (Mask(1) << theta.n))
        throw InvalidInput("subset mask out of range");
    Rat sum(0);
    for (Mask sub = target; sub != 0; sub = (sub - 1) & target) sum += theta.mass(sub);
    return sum;
}

geom::HalfspaceSystem build_sharp_region(const ChoiceFrequencies& p) {
    p.validate_sums_to_one();
    const std::size_t dim = (std::size_t(1) << p.n) - 1;
    geom::HalfspaceSystem sys(dim);
    for (Mask target = 1; target <= dim; ++target) {
        std::vector<Rat> coeffs(dim, Rat(0));
        for (Mask sub = target; sub != 0; sub = (sub - 1) & target) coeffs[sub - 1] = 1;
        sys.add_inequality(std::move(coeffs), subset_prob(p, target),
                           "sum over nonempty subsets of " + subset_label(target, p.n) +
                               " <= " + rat_str(subset_prob(p, target)));
    }
    add_simplex(sys, p.n);
    return sys;
}

geom::HalfspaceSystem build_theta1_region(const ChoiceFrequencies& p) {
    p.validate_sums_to_one();
    const std::size_t dim = (std::size_t(1) << p.n) - 1;
    geom::HalfspaceSystem sys(dim);
    for (std::size_t a = 0; a < p.n; ++a) {
        const Mask m = Mask(1) << a;
        std::vector<Rat> coeffs(dim, Rat(0));
        coeffs[m - 1] = 1;
        sys.add_inequality(std::move(coeffs), p.probs[a],
                           "theta_" + subset_label(m, p.n) + " <= " + rat_str(p.probs[a]));
    }
    add_simplex(sys, p.n);
    return sys;
}

namespace {

// Exact max-flow (Edmonds-Karp) on an adjacency-list residual graph.
class MaxFlow {
  public:
    explicit MaxFlow(std::size_t nodes) : head_(nodes, -1) {}

    void add_edge(std::size_t from, std::size_t to, Rat cap) {
        edges_.push_back({to, head_[from], std::move(cap)});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], Rat(0)});
        head_[to] = static_cast<int>(edges_.size()) - 1;
    }

    Rat run(std::size_t s, std::size_t t) {
        Rat total(0);
        for (;;) {
            std::vector<int> pred_edge(head_.size(), -1);
            std::deque<std::size_t> queue{s};
            pred_edge[s] = -2;
            while (!queue.empty() && pred_edge[t] == -1) {
                std::size_t u = queue.front();
                queue.pop_front();
                for (int e = head_[u]; e != -1; e = edges_[e].next) {
                    if (edges_[e].cap > 0 && pred_edge[edges_[e].to] == -1) {
                        pred_edge[edges_[e].to] = e;
                        queue.push_back(edges_[e].to);
                    }
                }
            }
            if (pred_edge[t] == -1) return total;
            // bottleneck along the path
            Rat bottleneck;
            bool first = true;
            for (std::size_t v = t; v != s;) {
                const auto& e = edges_[pred_edge[v]];
                if (first || e.cap < bottleneck) bottleneck = e.cap;
                first = false;
                v = edges_[pred_edge[v] ^ 1].to;
            }
            for (std::size_t v = t; v != s;) {
                int ei = pred_edge[v];
                edges_[ei].cap -= bottleneck;
                edges_[ei ^ 1].cap += bottleneck;
                v = edges_[ei ^ 1].to;
            }
            total += bottleneck;
        }
    }

    // flow pushed through edge index (in insertion order, forward edges only)
    Rat flow_on(std::size_t forward_index) const { return edges_[2 * forward_index + 1].cap; }

  private:
    struct Edge {
        std::size_t to;
        int next;
        Rat cap;
    };
    std::vector<int> head_;
    std::vector<Edge> edges_;
};

} // namespace

FeasibilityResult selection_feasible(const ChoiceParamVector& theta, const ChoiceFrequencies& p) {
    theta.validate();
    p.validate_sums_to_one();
    if (theta.n != p.n) throw InvalidInput("theta and p have different alternative counts");
    if (theta.n > kMaxOracleAlternatives)
        throw InvalidInput("selection oracle supports at most 12 alternatives");

    const std::size_t nsubsets = (std::size_t(1) << theta.n) - 1;
    std::vector<Mask> active;
    for (Mask m = 1; m <= nsubsets; ++m)
        if (theta.mass(m) > 0) active.push_back(m);

    // source 0, subsets 1..S, alternatives S+1..S+n, sink S+n+1
    const std::size_t S = active.size();
    const std::size_t sink = S + theta.n + 1;
    MaxFlow mf(sink + 1);
    std::size_t edge_count = 0;
    std::vector<std::tuple<Mask, std::size_t, std::size_t>> middle; // subset, alt, edge index
    for (std::size_t i = 0; i < S; ++i) {
        mf.add_edge(0, 1 + i, theta.mass(active[i]));
        ++edge_count;
    }
    for (std::size_t i = 0; i < S; ++i) {
        for (std::size_t a = 0; a < theta.n; ++a) {
            if (active[i] & (Mask(1) << a)) {
                middle.emplace_back(active[i], a, edge_count);
                mf.add_edge(1 + i, S + 1 + a, theta.mass(active[i]));
                ++edge_count;
            }
        }
    }
    for (std::size_t a = 0; a < theta.n; ++a) {
        mf.add_edge(S + 1 + a, sink, p.probs[a]);
        ++edge_count;
    }

    FeasibilityResult out;
    const Rat flow = mf.run(0, sink);
    out.feasible = (flow == 1);
    if (out.feasible) {
        for (const auto& [mask, alt, idx] : middle) {
            Rat q = mf.flow_on(idx);
            if (q > 0) out.flow.push_back({mask, alt, q});
        }
    } else {
        // name a violated containment inequality (one exists by Artstein)
        for (Mask target = 1; target <= nsubsets; ++target) {
            Rat c = containment_functional(theta, target);
            Rat rhs = subset_prob(p, target);
            if (c > rhs) {
                out.violated = "sum over nonempty subsets of " + subset_label(target, theta.n) +
                               " = " + rat_str(c) + " > " + rat_str(rhs);
                break;
            }
        }
    }
    return out;
}

std::optional<ChoiceParamVector> strict_inclusion_witness(const ChoiceFrequencies& p,
                                                          Mask pair_mask) {
    p.validate_sums_to_one();
    if (p.n < 2) throw InvalidInput("strict inclusion witness needs n >= 2");
    if (pair_mask == 0 || pair_mask >= (Mask(1) << p.n) || std::popcount(pair_mask) < 2)
        throw InvalidInput("pair mask must name a subset with at least 2 alternatives");

    const auto theta1 = build_theta1_region(p);
    const auto direction = subset_sum_direction(p.n, pair_mask);
    auto res = geom::support_point(theta1, direction);
    if (res.status != lp::Status::Optimal)
        throw InfeasibleError("Theta^1 is empty or unbounded"); // cannot happen for valid p
    if (res.value <= subset_prob(p, pair_mask)) return std::nullopt;

    ChoiceParamVector witness{p.n, std::move(res.point)};
    witness.validate();
    return witness;
}

std::vector<Rat> subset_sum_direction(std::size_t n, Mask mask) {
    check_n(n);
    const std::size_t dim = (std::size_t(1) << n) - 1;
    std::vector<Rat> dir(dim, Rat(0));
    for (Mask sub = mask; sub != 0; sub = (sub - 1) & mask) dir[sub - 1] = 1;
    return dir;
}

} // namespace setid::artstein
