#pragma once

#include "setid/choice.hpp"
#include "setid/distributions.hpp"
#include "setid/rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace setid::sim {

enum class SelectionRule {
    UniformOverM,
    FirstOnList,
    MinmaxRegret,
    AbstainWhenUndecided,
    // validation hook: picks the alternative with the smallest upper utility,
    // deliberately breaking the rationality assumption
    AdversarialDominated,
};

SelectionRule rule_from_name(const std::string& name);
const char* rule_name(SelectionRule rule);

struct InstrumentValue {
    std::string label;
    std::vector<std::size_t> order;   // list order used by first-on-list
    std::vector<double> utility_shift; // per-alternative midpoint shift (imperfect IV)
};

struct PopulationSpec {
    std::vector<std::string> alternatives;
    std::vector<dist::SampleFamily> midpoint;   // per alternative
    std::vector<dist::SampleFamily> half_width; // per alternative, nonnegative support
    SelectionRule rule = SelectionRule::UniformOverM;
    double abstain_prob = 0; // used by abstain-when-undecided
    std::vector<InstrumentValue> instrument; // empty: no instrument
    std::uint64_t size = 0;
    std::optional<std::uint64_t> seed;

    void validate() const;
    static PopulationSpec from_json(const nlohmann::ordered_json& j);
    nlohmann::ordered_json to_json() const;
    bool instrument_shifts_utilities() const;
};

// Everything about one simulated agent. Draw order per agent: instrument
// value, then per alternative midpoint and half-width, then the selection
// draw(s). Pure function of (spec, seed, index).
struct AgentDraw {
    std::vector<choice::UtilityInterval> intervals;
    std::uint32_t m_mask = 0;   // nondominated set
    int chosen = -1;            // alternative index, -1 = abstained
    std::size_t z_index = 0;    // 0 when no instrument
    bool violates_rationality = false;
};

AgentDraw draw_agent(const PopulationSpec& spec, std::uint64_t seed, std::uint64_t index);

struct ArtsteinSlack {
    std::uint32_t subset = 0;
    double slack = 0; // P(y in A) - C_M(A), among observed choices
    double se = 0;
    bool pass = false; // slack >= -3 se
};

class SimulationReport {
  public:
    SimulationReport(std::vector<std::string> alternatives, std::vector<std::string> z_labels,
                     bool shifts_utilities);

    // aggregation (exact integer tallies; merge order cannot matter)
    void add(std::uint32_t m_mask, int chosen, std::size_t z_index, bool violates);
    void merge(const SimulationReport& other);

    std::uint64_t agents() const { return agents_; }
    std::size_t n_alternatives() const { return alternatives_.size(); }
    const std::vector<std::string>& alternatives() const { return alternatives_; }
    const std::vector<std::string>& z_labels() const { return z_labels_; }
    std::uint64_t abstained() const { return abstained_; }
    std::uint64_t selection_violations() const { return violations_; }

    std::uint64_t m_count(std::uint32_t mask) const;
    std::uint64_t m_count_voted(std::uint32_t mask) const;
    std::uint64_t choice_count(std::size_t alt) const;
    std::uint64_t z_total(std::size_t z) const;
    std::uint64_t m_count_z(std::size_t z, std::uint32_t mask) const;
    std::uint64_t choice_count_z(std::size_t z, std::size_t alt) const;

    Rat theta_hat(std::uint32_t mask) const; // over all agents
    Rat p_hat(std::size_t alt) const;        // among observed choices
    Rat gamma_hat() const;

    // instrument summaries (throw without an instrument)
    Rat p_hat_z(std::size_t z, std::size_t alt) const;
    Rat theta_hat_z(std::size_t z, std::uint32_t mask) const;
    double delta0_hat() const; // sup_z p0|z - inf_z p0|z
    // delta_j = theta_j - inf_z theta_j|z; exactly 0 when the spec shifts no
    // utilities (a perfect instrument by construction)
    double delta_hat(std::size_t alt) const;

    std::vector<ArtsteinSlack> artstein_slacks() const;

    nlohmann::ordered_json to_json() const;

    bool operator==(const SimulationReport& other) const;

  private:
    std::vector<std::string> alternatives_;
    std::vector<std::string> z_labels_;
    bool shifts_utilities_ = false;
    std::uint64_t agents_ = 0, abstained_ = 0, violations_ = 0;
    std::vector<std::uint64_t> m_counts_, m_counts_voted_, choice_counts_;
    std::vector<std::vector<std::uint64_t>> m_counts_z_, choice_counts_z_;
    std::vector<std::uint64_t> z_totals_, z_abstained_;
};

// OpenMP over agents; counter-based per-agent streams keep the result
// identical for any worker count.
SimulationReport simulate(const PopulationSpec& spec, std::uint64_t seed);

// Single-threaded reference implementation kept for testing and benchmarks;
// must produce a bit-identical report.
SimulationReport simulate_serial(const PopulationSpec& spec, std::uint64_t seed);

struct ArtsteinCheck {
    std::vector<ArtsteinSlack> slacks;
    bool all_pass = false;
};

// Flags every subset whose empirical Artstein slack is below -3 standard
// errors. A valid selection rule cannot fail this; the adversarial hook does.
ArtsteinCheck verify_artstein(const SimulationReport& report);

struct IvExperiment {
    double delta0_hat = 0;
    double theta01_hat = 0; // mass of the all-incomparable set {a0,a1}
    double delta_hat0 = 0, delta_hat1 = 0;
    double se = 0;
    double bound = 0; // delta0 - (delta_hat0 + delta_hat1) - 3 se
    bool bound_holds = false;
};

// Theorem-3/4 check on a binary instrumented report.
IvExperiment iv_experiment(const SimulationReport& report);

} // namespace setid::sim
