#include "setid/popsim.hpp"

#include "setid/artstein.hpp"
#include "setid/errors.hpp"
#include "setid/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace setid::sim {

SelectionRule rule_from_name(const std::string& name) {
    if (name == "uniform-over-m") return SelectionRule::UniformOverM;
    if (name == "first-on-list") return SelectionRule::FirstOnList;
    if (name == "minmax-regret") return SelectionRule::MinmaxRegret;
    if (name == "abstain-when-undecided") return SelectionRule::AbstainWhenUndecided;
    if (name == "adversarial-dominated") return SelectionRule::AdversarialDominated;
    throw ParseError("unknown selection rule '" + name + "'");
}

const char* rule_name(SelectionRule rule) {
    switch (rule) {
        case SelectionRule::UniformOverM: return "uniform-over-m";
        case SelectionRule::FirstOnList: return "first-on-list";
        case SelectionRule::MinmaxRegret: return "minmax-regret";
        case SelectionRule::AbstainWhenUndecided: return "abstain-when-undecided";
        case SelectionRule::AdversarialDominated: return "adversarial-dominated";
    }
    return "?";
}

void PopulationSpec::validate() const {
    const std::size_t n = alternatives.size();
    if (n == 0) throw InvalidInput("spec has no alternatives");
    if (n > 16) throw InvalidInput("spec has more than 16 alternatives");
    if (midpoint.size() != n || half_width.size() != n)
        throw InvalidInput("per-alternative distribution count mismatch");
    for (const auto& f : midpoint) f.validate();
    for (const auto& f : half_width) {
        f.validate();
        if (!f.nonnegative()) throw InvalidInput("half-width family must have nonnegative support");
    }
    if (rule == SelectionRule::MinmaxRegret && n != 2)
        throw InvalidInput("minmax-regret rule is defined for binary choice only");
    if (abstain_prob < 0 || abstain_prob > 1) throw InvalidInput("abstain probability outside [0,1]");
    for (const auto& z : instrument) {
        if (z.order.size() != n) throw InvalidInput("instrument order is not a permutation");
        std::vector<bool> seen(n, false);
        for (auto idx : z.order) {
            if (idx >= n || seen[idx]) throw InvalidInput("instrument order is not a permutation");
            seen[idx] = true;
        }
        if (!z.utility_shift.empty() && z.utility_shift.size() != n)
            throw InvalidInput("utility shift length != alternative count");
        for (double s : z.utility_shift)
            if (!std::isfinite(s)) throw InvalidInput("non-finite utility shift");
    }
    if (size == 0) throw InvalidInput("population size must be >= 1");
}

bool PopulationSpec::instrument_shifts_utilities() const {
    for (const auto& z : instrument)
        for (double s : z.utility_shift)
            if (s != 0.0) return true;
    return false;
}

PopulationSpec PopulationSpec::from_json(const nlohmann::ordered_json& j) {
    PopulationSpec spec;
    for (const auto& a : j.at("alternatives")) spec.alternatives.push_back(a.get<std::string>());
    for (const auto& f : j.at("midpoint")) spec.midpoint.push_back(dist::SampleFamily::from_json(f));
    for (const auto& f : j.at("half_width"))
        spec.half_width.push_back(dist::SampleFamily::from_json(f));
    spec.rule = rule_from_name(j.value("selection_rule", std::string("uniform-over-m")));
    spec.abstain_prob = j.value("abstain_prob", 0.0);
    if (j.contains("instrument")) {
        for (const auto& z : j.at("instrument")) {
            InstrumentValue iv;
            iv.label = z.at("label").get<std::string>();
            for (const auto& o : z.at("order")) iv.order.push_back(o.get<std::size_t>());
            if (z.contains("utility_shift"))
                for (const auto& s : z.at("utility_shift")) iv.utility_shift.push_back(s.get<double>());
            spec.instrument.push_back(std::move(iv));
        }
    }
    spec.size = j.at("size").get<std::uint64_t>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    spec.validate();
    return spec;
}

nlohmann::ordered_json PopulationSpec::to_json() const {
    nlohmann::ordered_json j;
    j["alternatives"] = alternatives;
    auto mids = nlohmann::ordered_json::array();
    for (const auto& f : midpoint) mids.push_back(f.to_json());
    j["midpoint"] = mids;
    auto widths = nlohmann::ordered_json::array();
    for (const auto& f : half_width) widths.push_back(f.to_json());
    j["half_width"] = widths;
    j["selection_rule"] = rule_name(rule);
    if (rule == SelectionRule::AbstainWhenUndecided) j["abstain_prob"] = abstain_prob;
    if (!instrument.empty()) {
        auto zs = nlohmann::ordered_json::array();
        for (const auto& z : instrument) {
            nlohmann::ordered_json jz;
            jz["label"] = z.label;
            jz["order"] = z.order;
            if (!z.utility_shift.empty()) jz["utility_shift"] = z.utility_shift;
            zs.push_back(jz);
        }
        j["instrument"] = zs;
    }
    j["size"] = size;
    if (seed) j["seed"] = *seed;
    return j;
}

AgentDraw draw_agent(const PopulationSpec& spec, std::uint64_t seed, std::uint64_t index) {
    const std::size_t n = spec.alternatives.size();
    CounterRng rng(seed, index);

    AgentDraw draw;
    if (!spec.instrument.empty()) {
        const double u = rng.next_uniform();
        draw.z_index = std::min(spec.instrument.size() - 1,
                                static_cast<std::size_t>(u * spec.instrument.size()));
    }

    choice::UtilityProfile profile;
    profile.alternatives = spec.alternatives;
    profile.intervals.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        double mid = spec.midpoint[a].sample(rng.next_uniform());
        const double width = spec.half_width[a].sample(rng.next_uniform());
        if (!spec.instrument.empty() && !spec.instrument[draw.z_index].utility_shift.empty())
            mid += spec.instrument[draw.z_index].utility_shift[a];
        profile.intervals[a] = {mid - width, mid + width};
    }
    draw.intervals = profile.intervals;

    const auto m = choice::nondominated_set(profile);
    for (auto a : m) draw.m_mask |= std::uint32_t(1) << a;

    switch (spec.rule) {
        case SelectionRule::UniformOverM: {
            const double u = rng.next_uniform();
            draw.chosen = static_cast<int>(m[std::min(m.size() - 1, static_cast<std::size_t>(u * m.size()))]);
            break;
        }
        case SelectionRule::FirstOnList: {
            const auto& order = spec.instrument.empty() ? std::vector<std::size_t>{}
                                                        : spec.instrument[draw.z_index].order;
            if (order.empty()) {
                draw.chosen = static_cast<int>(m.front());
            } else {
                for (auto a : order) {
                    if (draw.m_mask & (std::uint32_t(1) << a)) {
                        draw.chosen = static_cast<int>(a);
                        break;
                    }
                }
            }
            break;
        }
        case SelectionRule::MinmaxRegret: {
            if (m.size() == 1) {
                draw.chosen = static_cast<int>(m.front());
            } else {
                draw.chosen = static_cast<int>(choice::minmax_regret_choice(profile));
            }
            break;
        }
        case SelectionRule::AbstainWhenUndecided: {
            if (m.size() == 1) {
                draw.chosen = static_cast<int>(m.front());
            } else if (rng.next_uniform() < spec.abstain_prob) {
                draw.chosen = -1;
            } else {
                const double u = rng.next_uniform();
                draw.chosen =
                    static_cast<int>(m[std::min(m.size() - 1, static_cast<std::size_t>(u * m.size()))]);
            }
            break;
        }
        case SelectionRule::AdversarialDominated: {
            std::size_t worst = 0;
            for (std::size_t a = 1; a < n; ++a)
                if (profile.intervals[a].upper < profile.intervals[worst].upper) worst = a;
            draw.chosen = static_cast<int>(worst);
            break;
        }
    }

    if (draw.chosen >= 0 && !(draw.m_mask & (std::uint32_t(1) << draw.chosen)))
        draw.violates_rationality = true;
    if (draw.violates_rationality && spec.rule != SelectionRule::AdversarialDominated)
        throw Error("selection rule produced a dominated choice"); // cannot happen
    return draw;
}

SimulationReport::SimulationReport(std::vector<std::string> alternatives,
                                   std::vector<std::string> z_labels, bool shifts_utilities)
    : alternatives_(std::move(alternatives)),
      z_labels_(std::move(z_labels)),
      shifts_utilities_(shifts_utilities) {
    const std::size_t n = alternatives_.size();
    const std::size_t nmasks = (std::size_t(1) << n) - 1;
    m_counts_.assign(nmasks, 0);
    m_counts_voted_.assign(nmasks, 0);
    choice_counts_.assign(n, 0);
    const std::size_t nz = z_labels_.size();
    m_counts_z_.assign(nz, std::vector<std::uint64_t>(nmasks, 0));
    choice_counts_z_.assign(nz, std::vector<std::uint64_t>(n, 0));
    z_totals_.assign(nz, 0);
    z_abstained_.assign(nz, 0);
}

void SimulationReport::add(std::uint32_t m_mask, int chosen, std::size_t z_index, bool violates) {
    ++agents_;
    m_counts_[m_mask - 1] += 1;
    if (violates) ++violations_;
    if (chosen >= 0) {
        m_counts_voted_[m_mask - 1] += 1;
        choice_counts_[static_cast<std::size_t>(chosen)] += 1;
    } else {
        ++abstained_;
    }
    if (!z_labels_.empty()) {
        z_totals_[z_index] += 1;
        m_counts_z_[z_index][m_mask - 1] += 1;
        if (chosen >= 0)
            choice_counts_z_[z_index][static_cast<std::size_t>(chosen)] += 1;
        else
            z_abstained_[z_index] += 1;
    }
}

void SimulationReport::merge(const SimulationReport& other) {
    agents_ += other.agents_;
    abstained_ += other.abstained_;
    violations_ += other.violations_;
    for (std::size_t i = 0; i < m_counts_.size(); ++i) {
        m_counts_[i] += other.m_counts_[i];
        m_counts_voted_[i] += other.m_counts_voted_[i];
    }
    for (std::size_t a = 0; a < choice_counts_.size(); ++a)
        choice_counts_[a] += other.choice_counts_[a];
    for (std::size_t z = 0; z < z_totals_.size(); ++z) {
        z_totals_[z] += other.z_totals_[z];
        z_abstained_[z] += other.z_abstained_[z];
        for (std::size_t i = 0; i < m_counts_.size(); ++i)
            m_counts_z_[z][i] += other.m_counts_z_[z][i];
        for (std::size_t a = 0; a < choice_counts_.size(); ++a)
            choice_counts_z_[z][a] += other.choice_counts_z_[z][a];
    }
}

std::uint64_t SimulationReport::m_count(std::uint32_t mask) const { return m_counts_.at(mask - 1); }
std::uint64_t SimulationReport::m_count_voted(std::uint32_t mask) const {
    return m_counts_voted_.at(mask - 1);
}
std::uint64_t SimulationReport::choice_count(std::size_t alt) const { return choice_counts_.at(alt); }
std::uint64_t SimulationReport::z_total(std::size_t z) const { return z_totals_.at(z); }
std::uint64_t SimulationReport::m_count_z(std::size_t z, std::uint32_t mask) const {
    return m_counts_z_.at(z).at(mask - 1);
}
std::uint64_t SimulationReport::choice_count_z(std::size_t z, std::size_t alt) const {
    return choice_counts_z_.at(z).at(alt);
}

Rat SimulationReport::theta_hat(std::uint32_t mask) const {
    Rat q(static_cast<long>(m_count(mask)), static_cast<long>(agents_));
    q.canonicalize();
    return q;
}

Rat SimulationReport::p_hat(std::size_t alt) const {
    const std::uint64_t voted = agents_ - abstained_;
    if (voted == 0) throw InvalidInput("no observed choices");
    Rat q(static_cast<long>(choice_count(alt)), static_cast<long>(voted));
    q.canonicalize();
    return q;
}

Rat SimulationReport::gamma_hat() const {
    Rat q(static_cast<long>(abstained_), static_cast<long>(agents_));
    q.canonicalize();
    return q;
}

Rat SimulationReport::p_hat_z(std::size_t z, std::size_t alt) const {
    const std::uint64_t voted = z_totals_.at(z) - z_abstained_.at(z);
    if (voted == 0) throw InvalidInput("no observed choices for this instrument value");
    Rat q(static_cast<long>(choice_count_z(z, alt)), static_cast<long>(voted));
    q.canonicalize();
    return q;
}

Rat SimulationReport::theta_hat_z(std::size_t z, std::uint32_t mask) const {
    if (z_totals_.at(z) == 0) throw InvalidInput("empty instrument cell");
    Rat q(static_cast<long>(m_count_z(z, mask)), static_cast<long>(z_totals_.at(z)));
    q.canonicalize();
    return q;
}

double SimulationReport::delta0_hat() const {
    if (z_labels_.empty()) throw InvalidInput("report has no instrument");
    double lo = 1, hi = 0;
    for (std::size_t z = 0; z < z_labels_.size(); ++z) {
        const double p0 = rat_double(p_hat_z(z, 0));
        lo = std::min(lo, p0);
        hi = std::max(hi, p0);
    }
    return hi - lo;
}

double SimulationReport::delta_hat(std::size_t alt) const {
    if (z_labels_.empty()) throw InvalidInput("report has no instrument");
    if (!shifts_utilities_) return 0.0; // perfect by construction
    const std::uint32_t mask = std::uint32_t(1) << alt;
    double inf_z = 1;
    for (std::size_t z = 0; z < z_labels_.size(); ++z)
        inf_z = std::min(inf_z, rat_double(theta_hat_z(z, mask)));
    const double overall = rat_double(theta_hat(mask));
    return std::max(0.0, overall - inf_z);
}

std::vector<ArtsteinSlack> SimulationReport::artstein_slacks() const {
    const std::size_t n = alternatives_.size();
    const std::uint64_t voted = agents_ - abstained_;
    std::vector<ArtsteinSlack> out;
    if (voted == 0) return out;
    const std::uint32_t full = (std::uint32_t(1) << n) - 1;
    for (std::uint32_t target = 1; target <= full; ++target) {
        std::uint64_t y_in = 0;
        for (std::size_t a = 0; a < n; ++a)
            if (target & (std::uint32_t(1) << a)) y_in += choice_counts_[a];
        std::uint64_t contained = 0;
        for (std::uint32_t sub = target; sub != 0; sub = (sub - 1) & target)
            contained += m_counts_voted_[sub - 1];
        const double py = static_cast<double>(y_in) / static_cast<double>(voted);
        const double cm = static_cast<double>(contained) / static_cast<double>(voted);
        ArtsteinSlack s;
        s.subset = target;
        s.slack = py - cm;
        // binomial approximation for the two proportions
        s.se = std::sqrt((py * (1 - py) + cm * (1 - cm)) / static_cast<double>(voted));
        s.pass = s.slack >= -3.0 * s.se;
        out.push_back(s);
    }
    return out;
}

bool SimulationReport::operator==(const SimulationReport& other) const {
    return alternatives_ == other.alternatives_ && z_labels_ == other.z_labels_ &&
           agents_ == other.agents_ && abstained_ == other.abstained_ &&
           violations_ == other.violations_ && m_counts_ == other.m_counts_ &&
           m_counts_voted_ == other.m_counts_voted_ && choice_counts_ == other.choice_counts_ &&
           m_counts_z_ == other.m_counts_z_ && choice_counts_z_ == other.choice_counts_z_ &&
           z_totals_ == other.z_totals_ && z_abstained_ == other.z_abstained_;
}

nlohmann::ordered_json SimulationReport::to_json() const {
    nlohmann::ordered_json j;
    const std::size_t n = alternatives_.size();
    j["agents"] = agents_;
    j["alternatives"] = alternatives_;
    j["abstained"] = abstained_;
    j["gamma_hat"] = rat_str(gamma_hat());
    j["selection_violations"] = violations_;

    nlohmann::ordered_json theta;
    const std::uint32_t full = (std::uint32_t(1) << n) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        theta[artstein::subset_label(mask, n)] = {{"count", m_count(mask)},
                                                  {"frequency", rat_str(theta_hat(mask))}};
    }
    j["theta"] = theta;

    nlohmann::ordered_json p;
    for (std::size_t a = 0; a < n; ++a)
        p[alternatives_[a]] = {{"count", choice_count(a)},
                               {"frequency", rat_str(p_hat(a))}};
    j["p"] = p;

    if (!z_labels_.empty()) {
        nlohmann::ordered_json zs;
        bool all_cells_observed = true;
        for (std::size_t z = 0; z < z_labels_.size(); ++z) {
            nlohmann::ordered_json jz;
            jz["agents"] = z_totals_[z];
            if (z_totals_[z] - z_abstained_[z] == 0) {
                all_cells_observed = false;
                zs[z_labels_[z]] = jz;
                continue;
            }
            nlohmann::ordered_json pz;
            for (std::size_t a = 0; a < n; ++a)
                pz[alternatives_[a]] = rat_str(p_hat_z(z, a));
            jz["p"] = pz;
            nlohmann::ordered_json tz;
            for (std::uint32_t mask = 1; mask <= full; ++mask)
                tz[artstein::subset_label(mask, n)] = rat_str(theta_hat_z(z, mask));
            jz["theta"] = tz;
            zs[z_labels_[z]] = jz;
        }
        j["by_instrument"] = zs;
        if (all_cells_observed) {
            j["delta0_hat"] = delta0_hat();
            j["delta_hat"] = {delta_hat(0), n > 1 ? delta_hat(1) : 0.0};
        }
    }

    auto slacks = nlohmann::ordered_json::array();
    for (const auto& s : artstein_slacks()) {
        slacks.push_back({{"subset", artstein::subset_label(s.subset, n)},
                          {"slack", s.slack},
                          {"se", s.se},
                          {"pass", s.pass}});
    }
    j["artstein_slacks"] = slacks;
    return j;
}

namespace {

SimulationReport make_report(const PopulationSpec& spec) {
    std::vector<std::string> z_labels;
    for (const auto& z : spec.instrument) z_labels.push_back(z.label);
    return SimulationReport(spec.alternatives, z_labels, spec.instrument_shifts_utilities());
}

} // namespace

SimulationReport simulate(const PopulationSpec& spec, std::uint64_t seed) {
    spec.validate();
    SimulationReport report = make_report(spec);
    const std::int64_t n = static_cast<std::int64_t>(spec.size);
#pragma omp parallel
    {
        SimulationReport local = make_report(spec);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const AgentDraw d = draw_agent(spec, seed, static_cast<std::uint64_t>(i));
            local.add(d.m_mask, d.chosen, d.z_index, d.violates_rationality);
        }
#pragma omp critical
        report.merge(local);
    }
    return report;
}

SimulationReport simulate_serial(const PopulationSpec& spec, std::uint64_t seed) {
    spec.validate();
    SimulationReport report = make_report(spec);
    for (std::uint64_t i = 0; i < spec.size; ++i) {
        const AgentDraw d = draw_agent(spec, seed, i);
        report.add(d.m_mask, d.chosen, d.z_index, d.violates_rationality);
    }
    return report;
}

ArtsteinCheck verify_artstein(const SimulationReport& report) {
    ArtsteinCheck check;
    check.slacks = report.artstein_slacks();
    check.all_pass = true;
    for (const auto& s : check.slacks) check.all_pass = check.all_pass && s.pass;
    return check;
}

IvExperiment iv_experiment(const SimulationReport& report) {
    if (report.z_labels().empty()) throw InvalidInput("iv_experiment needs an instrument");
    if (report.n_alternatives() != 2) throw InvalidInput("iv_experiment is binary");

    IvExperiment out;
    out.delta0_hat = report.delta0_hat();
    out.theta01_hat = rat_double(report.theta_hat(0b11));
    out.delta_hat0 = report.delta_hat(0);
    out.delta_hat1 = report.delta_hat(1);

    // binomial pieces: theta01 over all agents plus the two extreme
    // conditional cells behind delta0
    double var = out.theta01_hat * (1 - out.theta01_hat) / static_cast<double>(report.agents());
    double lo = 1, hi = 0;
    std::size_t z_lo = 0, z_hi = 0;
    for (std::size_t z = 0; z < report.z_labels().size(); ++z) {
        const double p0 = rat_double(report.p_hat_z(z, 0));
        if (p0 < lo) {
            lo = p0;
            z_lo = z;
        }
        if (p0 > hi) {
            hi = p0;
            z_hi = z;
        }
    }
    var += lo * (1 - lo) / static_cast<double>(report.z_total(z_lo));
    var += hi * (1 - hi) / static_cast<double>(report.z_total(z_hi));
    out.se = std::sqrt(var);
    out.bound = out.delta0_hat - (out.delta_hat0 + out.delta_hat1) - 3.0 * out.se;
    out.bound_holds = out.theta01_hat >= out.bound;
    return out;
}

} // namespace setid::sim
