// setid: identification regions for discrete choice with incomplete
// preferences, plus the simulation and election pipelines behind them.

#include "setid/artstein.hpp"
#include "setid/binary_bounds.hpp"
#include "setid/elections.hpp"
#include "setid/errors.hpp"
#include "setid/knightian.hpp"
#include "setid/parametric.hpp"
#include "setid/polytope.hpp"
#include "setid/popsim.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using nlohmann::ordered_json;
using namespace setid;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << text;
}

void emit_json(const ordered_json& doc, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text);
}

ordered_json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("bad json in '" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------- region ---

struct RegionBinaryArgs {
    std::string p0, p1, nu, gamma, pi0, pi1;
    std::string iv_path, mode = "agnostic";
    std::string out, svg_prefix;
};

int run_region_binary(const RegionBinaryArgs& args) {
    binary::BinaryObservation obs;
    Rat p0 = parse_rat(args.p0);
    Rat p1 = parse_rat(args.p1);
    binary::FigureOptions options;
    ordered_json inputs;
    inputs["p0"] = rat_str(p0);
    inputs["p1"] = rat_str(p1);

    if (!args.gamma.empty()) {
        const Rat gamma = parse_rat(args.gamma);
        inputs["gamma"] = rat_str(gamma);
        // Unconditional shares with p0+p1+gamma = 1 are normalized to the
        // conditional-on-observed scale the regions are built on.
        if (p0 + p1 + gamma == 1 && gamma > 0) {
            p0 = p0 / (1 - gamma);
            p1 = p1 / (1 - gamma);
            inputs["normalized_p0"] = rat_str(p0);
            inputs["normalized_p1"] = rat_str(p1);
        } else if (p0 + p1 != 1) {
            throw InvalidInput("p0 + p1 must equal 1 or 1 - gamma");
        }
        obs.gamma = gamma;
        options.unobserved_mode = binary::unobserved_mode_from_name(args.mode);
    }
    obs.p0 = p0;
    obs.p1 = p1;

    if (!args.nu.empty()) options.nu = parse_rat(args.nu);
    if (!args.iv_path.empty()) {
        options.use_iv = true;
        const auto table = load_json(args.iv_path);
        for (const auto& [z, pz] : table.items())
            options.iv_overrides[z] = {parse_rat(pz.at("p0").get<std::string>()),
                                       parse_rat(pz.at("p1").get<std::string>())};
    }
    if (!args.pi0.empty() || !args.pi1.empty()) {
        options.pi0 = parse_rat(args.pi0.empty() ? "0" : args.pi0);
        options.pi1 = parse_rat(args.pi1.empty() ? "0" : args.pi1);
    }

    auto figset = binary::build_figures(obs, options, "theta1", "theta0");
    ordered_json doc;
    doc["inputs"] = inputs;
    for (auto& [key, value] : figset.document.items()) doc[key] = value;
    emit_json(doc, args.out);
    if (!args.svg_prefix.empty())
        for (const auto& [name, text] : figset.svgs)
            write_text(args.svg_prefix + "_" + name + ".svg", text);
    return 0;
}

artstein::ChoiceFrequencies load_probs(const std::string& path) {
    const auto j = load_json(path);
    artstein::ChoiceFrequencies p;
    for (const auto& q : j.at("p")) p.probs.push_back(parse_rat(q.get<std::string>()));
    p.n = p.probs.size();
    p.validate_sums_to_one();
    return p;
}

int run_region_multi(const std::string& probs_path, std::size_t n_expected,
                     const std::string& out) {
    const auto p = load_probs(probs_path);
    if (n_expected != 0 && n_expected != p.n)
        throw InvalidInput("--n disagrees with the probability vector length");

    const auto sharp = artstein::build_sharp_region(p);
    const auto theta1 = artstein::build_theta1_region(p);

    ordered_json doc;
    doc["n"] = p.n;
    ordered_json probs = ordered_json::array();
    for (const auto& q : p.probs) probs.push_back(rat_str(q));
    doc["p"] = probs;
    doc["sharp_region"] = geom::to_json(sharp);
    doc["theta1_region"] = geom::to_json(theta1);

    // support table: largest feasible mass of every subset over the sharp region
    auto table = ordered_json::array();
    const std::uint32_t full = (std::uint32_t(1) << p.n) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::vector<Rat> dir((std::size_t(1) << p.n) - 1, Rat(0));
        dir[mask - 1] = 1;
        table.push_back({{"subset", artstein::subset_label(mask, p.n)},
                         {"max_mass", rat_str(geom::support(sharp, dir))}});
    }
    doc["support_table"] = table;
    emit_json(doc, out);
    return 0;
}

int run_oracle(const std::string& theta_path, const std::string& probs_path,
               const std::string& out) {
    const auto jt = load_json(theta_path);
    const auto p = load_probs(probs_path);

    auto theta = artstein::ChoiceParamVector::zeros(jt.value("n", p.n));
    for (const auto& [label, mass] : jt.at("masses").items())
        theta.mass(artstein::mask_from_label(label, theta.n)) =
            parse_rat(mass.get<std::string>());
    theta.validate();

    const auto result = artstein::selection_feasible(theta, p);
    ordered_json doc;
    doc["feasible"] = result.feasible;
    if (result.feasible) {
        auto flow = ordered_json::array();
        for (const auto& f : result.flow)
            flow.push_back({{"subset", artstein::subset_label(f.subset, theta.n)},
                            {"alternative", "a" + std::to_string(f.alternative)},
                            {"mass", rat_str(f.amount)}});
        doc["flow"] = flow;
    } else {
        doc["violated"] = result.violated;
    }
    emit_json(doc, out);
    if (!result.feasible) {
        std::cerr << "infeasible: " << result.violated << "\n";
        return 3;
    }
    return 0;
}

int run_simulate(const std::string& spec_path, std::optional<std::uint64_t> seed_flag,
                 const std::string& out) {
    const auto spec = sim::PopulationSpec::from_json(load_json(spec_path));
    std::optional<std::uint64_t> seed = seed_flag;
    if (!seed) seed = spec.seed;
    if (!seed) {
        if (const char* env = std::getenv("SETID_SEED")) seed = std::strtoull(env, nullptr, 10);
    }
    if (!seed) throw InvalidInput("no seed: pass --seed, set it in the spec, or export SETID_SEED");

    const auto report = sim::simulate(spec, *seed);
    ordered_json doc;
    doc["spec"] = spec.to_json();
    doc["seed"] = *seed;
    doc["report"] = report.to_json();
    const auto check = sim::verify_artstein(report);
    doc["artstein_all_pass"] = check.all_pass;
    emit_json(doc, out);
    return 0;
}

int run_policy(double p1, double sigma, double delta, const std::string& cdf_name,
               const std::string& nonparametric_path, const std::string& out) {
    const auto kind = dist::cdf_from_name(cdf_name);
    ordered_json doc;
    doc["cdf"] = cdf_name;
    doc["p1"] = p1;
    doc["sigma"] = sigma;
    doc["delta"] = delta;

    const auto wedge = param::parametric_region(p1, kind);
    doc["wedge"] = {{"quantile_p1", wedge.q_lo},
                    {"description", "sigma >= 0 and beta - sigma <= F^-1(p1) <= beta + sigma"},
                    {"apex", {{"beta", wedge.q_lo}, {"sigma", 0.0}}},
                    {"system", geom::to_json(wedge.system)}};

    doc["complete_prediction"] = param::policy_complete(p1, delta, kind);
    const auto interval = param::policy_incomplete_interval(p1, sigma, delta, kind);
    doc["p1_delta_interval"] = {interval.p_lo, interval.p_hi};
    doc["effect_interval"] = {interval.effect_lo, interval.effect_hi};
    doc["effect_sign"] = param::effect_sign_name(interval.sign);

    // band of predicted probabilities against the policy size, for plots
    auto band = ordered_json::array();
    const double dmax = 2 * std::max(delta, 2 * sigma);
    for (int i = 1; i <= 40; ++i) {
        const double d = dmax * i / 40.0;
        const auto iv = param::policy_incomplete_interval(p1, sigma, d, kind);
        band.push_back({{"delta", d}, {"p_lo", iv.p_lo}, {"p_hi", iv.p_hi}});
    }
    doc["band"] = band;

    if (!nonparametric_path.empty()) {
        std::ifstream in(nonparametric_path);
        if (!in) throw DataError("cannot open '" + nonparametric_path + "'");
        std::vector<std::pair<double, double>> samples;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            std::string xs, fs;
            if (!std::getline(ls, xs, ',') || !std::getline(ls, fs))
                throw DataError("bad cdf row '" + line + "'");
            samples.emplace_back(std::stod(xs), std::stod(fs));
        }
        const param::StepCdf F(std::move(samples));
        const auto np = param::nonparametric_policy_bounds(p1, delta, F);
        doc["nonparametric"] = {{"effect_interval", {np.effect_lo, np.effect_hi}},
                                {"contains_zero", np.contains_zero},
                                {"F_delta", F(delta)}};
    }
    emit_json(doc, out);
    return 0;
}

int run_election(const std::string& data_path, const std::string& race,
                 const std::string& config_path, bool figures, const std::string& turnout_race,
                 const std::string& out, const std::string& svg_prefix) {
    const auto records = elections::ingest_file(data_path);
    const auto summary = elections::summarize(records, race, turnout_race);

    binary::FigureOptions options;
    if (!config_path.empty()) {
        auto config = load_json(config_path);
        if (config.contains("races") && config.at("races").contains(race))
            options = binary::FigureOptions::from_json(config.at("races").at(race));
        else if (!config.contains("races"))
            options = binary::FigureOptions::from_json(config);
    }

    if (!figures) {
        ordered_json doc;
        doc["race"] = summary.race;
        doc["candidates"] = summary.candidates;
        ordered_json votes;
        for (std::size_t i = 0; i < summary.candidates.size(); ++i)
            votes[summary.candidates[i]] = summary.votes[i];
        doc["votes"] = votes;
        doc["total_votes"] = summary.total_votes;
        ordered_json probs = ordered_json::array();
        for (const auto& q : summary.p) probs.push_back(rat_str(q));
        doc["p"] = probs;
        if (summary.turnout_total) doc["turnout"] = *summary.turnout_total;
        if (summary.gamma) doc["gamma"] = rat_str(*summary.gamma);
        ordered_json raw;
        for (const auto& [z, shares] : summary.p_by_first) {
            ordered_json zz = ordered_json::array();
            for (const auto& q : shares) zz.push_back(rat_str(q));
            raw[z] = zz;
        }
        doc["conditional_frequencies"] = raw;
        if (summary.reg_dem_share) doc["reg_dem_share"] = rat_str(*summary.reg_dem_share);
        if (summary.reg_rep_share) doc["reg_rep_share"] = rat_str(*summary.reg_rep_share);
        doc["warnings"] = summary.warnings;
        emit_json(doc, out);
        return 0;
    }

    const auto figset = elections::figure_pipeline(summary, options);
    emit_json(figset.document, out);
    if (!svg_prefix.empty())
        for (const auto& [name, text] : figset.svgs)
            write_text(svg_prefix + "_" + name + ".svg", text);
    return 0;
}

int run_knightian(const std::string& model_path, const std::string& out) {
    const auto j = load_json(model_path);
    knightian::StateUtility su;
    for (const auto& s : j.at("states")) su.states.push_back(s.get<std::string>());
    for (const auto& alt : j.at("alternatives")) {
        su.alternatives.push_back(alt.at("name").get<std::string>());
        std::vector<Rat> u;
        for (const auto& v : alt.at("utilities")) u.push_back(parse_rat(v.get<std::string>()));
        su.utilities.push_back(std::move(u));
    }
    su.validate();

    knightian::PriorSet priors;
    const auto& jp = j.at("priors");
    if (jp.contains("vertices")) {
        for (const auto& v : jp.at("vertices")) {
            std::vector<Rat> pi;
            for (const auto& q : v) pi.push_back(parse_rat(q.get<std::string>()));
            priors.vertices.push_back(std::move(pi));
        }
    } else if (jp.contains("halfspaces")) {
        priors = knightian::PriorSet::from_halfspaces(
            geom::halfspace_system_from_json(jp.at("halfspaces")));
    } else {
        throw InvalidInput("priors need either vertices or halfspaces");
    }
    priors.validate(su.states.size());

    ordered_json doc;
    auto verts = ordered_json::array();
    for (const auto& v : priors.vertices) {
        auto row = ordered_json::array();
        for (const auto& q : v) row.push_back(rat_str(q));
        verts.push_back(row);
    }
    doc["prior_vertices"] = verts;

    auto comparisons = ordered_json::array();
    for (std::size_t x = 0; x < su.alternatives.size(); ++x) {
        for (std::size_t y = x + 1; y < su.alternatives.size(); ++y) {
            const auto cmp = knightian::bewley_prefers(x, y, su, priors);
            const char* verdict = cmp == knightian::Comparison::XOverY   ? "x-over-y"
                                  : cmp == knightian::Comparison::YOverX ? "y-over-x"
                                                                         : "incomparable";
            comparisons.push_back(
                {{"x", su.alternatives[x]}, {"y", su.alternatives[y]}, {"result", verdict}});
        }
    }
    doc["comparisons"] = comparisons;

    auto kept = ordered_json::array();
    for (auto idx : knightian::knightian_nondominated(su, priors))
        kept.push_back(su.alternatives[idx]);
    doc["nondominated"] = kept;
    emit_json(doc, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"identification regions for discrete choice with incomplete preferences"};
    app.require_subcommand(1);

    // region
    auto* region = app.add_subcommand("region", "identification regions");
    region->require_subcommand(1);
    RegionBinaryArgs rb;
    auto* region_binary = region->add_subcommand("binary", "binary-choice regions, Figures 2-9 style");
    region_binary->add_option("--p0", rb.p0, "choice probability of a0")->required();
    region_binary->add_option("--p1", rb.p1, "choice probability of a1")->required();
    region_binary->add_option("--nu", rb.nu, "minimal incomparable share");
    region_binary->add_option("--iv", rb.iv_path, "json table z -> {p0, p1}");
    region_binary->add_option("--gamma", rb.gamma, "unobserved-choice share");
    region_binary->add_option("--unobserved-mode", rb.mode,
                              "all-incomparable | agnostic | missing-at-random");
    region_binary->add_option("--pi0", rb.pi0, "consideration share for a0");
    region_binary->add_option("--pi1", rb.pi1, "consideration share for a1");
    region_binary->add_option("--out", rb.out, "output json path (default stdout)");
    region_binary->add_option("--svg", rb.svg_prefix, "svg path prefix");

    std::string rm_probs, rm_out;
    std::size_t rm_n = 0;
    auto* region_multi = region->add_subcommand("multi", "sharp region for any alternative count");
    region_multi->add_option("--p", rm_probs, "json file with probability vector")->required();
    region_multi->add_option("--n", rm_n, "expected alternative count");
    region_multi->add_option("--out", rm_out, "output json path");

    // oracle
    std::string or_theta, or_probs, or_out;
    auto* oracle = app.add_subcommand("oracle", "selection-feasibility check for a theta vector");
    oracle->add_option("--theta", or_theta, "json file with subset masses")->required();
    oracle->add_option("--p", or_probs, "json file with probability vector")->required();
    oracle->add_option("--out", or_out, "output json path");

    // simulate
    std::string sim_spec, sim_out;
    std::optional<std::uint64_t> sim_seed;
    auto* simulate = app.add_subcommand("simulate", "population simulation from a spec file");
    simulate->add_option("--spec", sim_spec, "population spec json")->required();
    simulate->add_option("--seed", sim_seed, "seed override");
    simulate->add_option("--out", sim_out, "output json path");

    // policy
    double po_p1 = 0, po_sigma = 0, po_delta = 0;
    std::string po_cdf = "probit", po_np, po_out;
    auto* policy = app.add_subcommand("policy", "policy-intervention predictions");
    policy->add_option("--p1", po_p1, "observed choice probability of a1")->required();
    policy->add_option("--sigma", po_sigma, "vagueness half-width")->required();
    policy->add_option("--delta", po_delta, "utility increment")->required();
    policy->add_option("--cdf", po_cdf, "probit | logit");
    policy->add_option("--nonparametric", po_np, "csv of (x, F(x)) samples for claim-2 bounds");
    policy->add_option("--out", po_out, "output json path");

    // election
    std::string el_data, el_race, el_config, el_turnout = elections::kTurnoutRace, el_out,
                el_svg;
    bool el_figures = false;
    auto* election = app.add_subcommand("election", "precinct csv ingestion and figures");
    election->add_option("--data", el_data, "precinct csv")->required();
    election->add_option("--race", el_race, "race id")->required();
    election->add_option("--config", el_config, "figure options / overrides json");
    election->add_flag("--figures", el_figures, "emit the full region pipeline");
    election->add_option("--turnout-race", el_turnout, "race id holding turnout counts");
    election->add_option("--out", el_out, "output json path");
    election->add_option("--svg", el_svg, "svg path prefix");

    // knightian
    std::string kn_model, kn_out;
    auto* knightian_cmd = app.add_subcommand("knightian", "Bewley comparisons over a prior set");
    knightian_cmd->add_option("--model", kn_model, "model json")->required();
    knightian_cmd->add_option("--out", kn_out, "output json path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // usage error
    }

    try {
        if (region_binary->parsed()) return run_region_binary(rb);
        if (region_multi->parsed()) return run_region_multi(rm_probs, rm_n, rm_out);
        if (oracle->parsed()) return run_oracle(or_theta, or_probs, or_out);
        if (simulate->parsed()) return run_simulate(sim_spec, sim_seed, sim_out);
        if (policy->parsed()) return run_policy(po_p1, po_sigma, po_delta, po_cdf, po_np, po_out);
        if (election->parsed())
            return run_election(el_data, el_race, el_config, el_figures, el_turnout, el_out,
                                el_svg);
        if (knightian_cmd->parsed()) return run_knightian(kn_model, kn_out);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const CoherenceError& e) {
        std::cerr << "coherence error: " << e.what() << "\n";
        return 3;
    } catch (const TieError& e) {
        std::cerr << "tie: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
