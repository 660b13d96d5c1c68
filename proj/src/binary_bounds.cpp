#include "setid/binary_bounds.hpp"

#include "setid/errors.hpp"
#include "setid/svg.hpp"

namespace setid::binary {

namespace {

void check_prob(const Rat& q, const std::string& what) {
    if (q < 0 || q > 1) throw InvalidInput(what + " outside [0,1]: " + rat_str(q));
}

geom::ConvexRegion2D rectangle(const Rat& x_max, const Rat& y_max) {
    return geom::ConvexRegion2D::from_points(
        {{Rat(0), Rat(0)}, {x_max, Rat(0)}, {x_max, y_max}, {Rat(0), y_max}});
}

} // namespace

UnobservedMode unobserved_mode_from_name(const std::string& name) {
    if (name == "all-incomparable") return UnobservedMode::AllIncomparable;
    if (name == "agnostic") return UnobservedMode::Agnostic;
    if (name == "missing-at-random") return UnobservedMode::MissingAtRandom;
    throw InvalidInput("unknown unobserved mode '" + name + "'");
}

const char* unobserved_mode_name(UnobservedMode mode) {
    switch (mode) {
        case UnobservedMode::AllIncomparable: return "all-incomparable";
        case UnobservedMode::Agnostic: return "agnostic";
        case UnobservedMode::MissingAtRandom: return "missing-at-random";
    }
    return "?";
}

void BinaryObservation::validate() const {
    check_prob(p0, "p0");
    check_prob(p1, "p1");
    if (p0 + p1 != 1)
        throw InvalidInput("p0 + p1 must equal 1, got " + rat_str(p0 + p1));
    for (const auto& [z, pz] : per_z) {
        check_prob(pz.first, "p0|" + z);
        check_prob(pz.second, "p1|" + z);
        if (pz.first + pz.second != 1)
            throw InvalidInput("conditional probabilities for z=" + z + " must sum to 1");
    }
    if (gamma && (*gamma < 0 || *gamma >= 1)) throw InvalidInput("gamma outside [0,1)");
    if (nu) check_prob(*nu, "nu");
    if (pi0) check_prob(*pi0, "pi0");
    if (pi1) check_prob(*pi1, "pi1");
}

geom::ConvexRegion2D no_assumption_region(const BinaryObservation& obs) {
    obs.validate();
    return rectangle(obs.p1, obs.p0);
}

geom::ConvexRegion2D min_vagueness_region(const BinaryObservation& obs) {
    obs.validate();
    if (!obs.nu) throw InvalidInput("minimal-vagueness region needs nu");
    return geom::intersect_halfplane(rectangle(obs.p1, obs.p0), Rat(1), Rat(1), Rat(1) - *obs.nu);
}

IvRegion iv_region(const BinaryObservation& obs) {
    obs.validate();
    if (obs.per_z.empty()) throw InvalidInput("iv region needs at least one instrument value");
    IvRegion out;
    bool first = true;
    for (const auto& [z, pz] : obs.per_z) {
        if (first) {
            out.inf_p0 = out.sup_p0 = pz.first;
            out.inf_p1 = out.sup_p1 = pz.second;
            first = false;
            continue;
        }
        if (pz.first < out.inf_p0) out.inf_p0 = pz.first;
        if (pz.first > out.sup_p0) out.sup_p0 = pz.first;
        if (pz.second < out.inf_p1) out.inf_p1 = pz.second;
        if (pz.second > out.sup_p1) out.sup_p1 = pz.second;
    }
    out.delta0 = out.sup_p0 - out.inf_p0;
    out.theta01_lower = out.delta0;
    out.region = rectangle(out.inf_p1, out.inf_p0);
    return out;
}

Rat imperfect_iv_bound(const Rat& delta0, const Rat& d0, const Rat& d1) {
    if (delta0 < 0 || d0 < 0 || d1 < 0) throw InvalidInput("imperfect IV inputs must be >= 0");
    Rat bound = delta0 - d0 - d1;
    return bound > 0 ? bound : Rat(0);
}

geom::ConvexRegion2D full_triangle() {
    return geom::ConvexRegion2D::from_points({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
}

geom::ConvexRegion2D abstention_region(const geom::ConvexRegion2D& observed, const Rat& gamma,
                                       UnobservedMode mode) {
    if (gamma < 0 || gamma >= 1) throw InvalidInput("gamma outside [0,1)");
    if (observed.empty()) throw InvalidInput("abstention composition over empty region");
    const geom::ConvexRegion2D scaled = geom::scale(observed, Rat(1) - gamma);
    switch (mode) {
        case UnobservedMode::AllIncomparable:
            return scaled; // Theta^U = {(0,0)}
        case UnobservedMode::Agnostic:
            return geom::minkowski_sum(scaled, geom::scale(full_triangle(), gamma));
        case UnobservedMode::MissingAtRandom:
            // (1-g) C ⊕ g C = C for convex C
            return geom::minkowski_sum(scaled, geom::scale(observed, gamma));
    }
    throw InvalidInput("bad unobserved mode");
}

geom::ConvexRegion2D consideration_region(const geom::ConvexRegion2D& region, const Rat& pi0,
                                          const Rat& pi1) {
    check_prob(pi0, "pi0");
    check_prob(pi1, "pi1");
    if (region.empty()) throw InvalidInput("consideration cut of empty region");
    if (pi0 > region.max_y())
        throw CoherenceError("pi0 = " + rat_str(pi0) + " exceeds the largest feasible theta0 " +
                             rat_str(region.max_y()));
    if (pi1 > region.max_x())
        throw CoherenceError("pi1 = " + rat_str(pi1) + " exceeds the largest feasible theta1 " +
                             rat_str(region.max_x()));
    // theta0 >= pi0 and theta1 >= pi1
    auto cut = geom::intersect_halfplane(region, Rat(0), Rat(-1), -pi0);
    cut = geom::intersect_halfplane(cut, Rat(-1), Rat(0), -pi1);
    if (cut.empty())
        throw CoherenceError("consideration shares are jointly incompatible with the region");
    return cut;
}

FigureOptions FigureOptions::from_json(const nlohmann::ordered_json& j) {
    FigureOptions opt;
    opt.use_iv = j.value("use_iv", false);
    if (j.contains("iv_overrides")) {
        opt.use_iv = true;
        for (const auto& [z, pz] : j.at("iv_overrides").items()) {
            opt.iv_overrides[z] = {parse_rat(pz.at("p0").get<std::string>()),
                                   parse_rat(pz.at("p1").get<std::string>())};
        }
    }
    if (j.contains("gamma")) opt.gamma_override = parse_rat(j.at("gamma").get<std::string>());
    if (j.contains("unobserved_mode"))
        opt.unobserved_mode = unobserved_mode_from_name(j.at("unobserved_mode").get<std::string>());
    if (j.contains("pi0")) opt.pi0 = parse_rat(j.at("pi0").get<std::string>());
    if (j.contains("pi1")) opt.pi1 = parse_rat(j.at("pi1").get<std::string>());
    if (j.contains("nu")) opt.nu = parse_rat(j.at("nu").get<std::string>());
    if (j.contains("printed"))
        for (const auto& [key, val] : j.at("printed").items())
            opt.printed_reference[key] = parse_rat(val.get<std::string>());
    return opt;
}

nlohmann::ordered_json region_entry(const geom::ConvexRegion2D& region) {
    nlohmann::ordered_json j;
    j["axes"] = {{"x", "theta1"}, {"y", "theta0"}};
    j["vertices"] = geom::to_json(region)["vertices"];
    if (!region.empty()) {
        j["max_theta1"] = rat_str(region.max_x());
        j["max_theta0"] = rat_str(region.max_y());
    }
    return j;
}

FigureSet build_figures(const BinaryObservation& obs, const FigureOptions& options,
                        const std::string& x_label, const std::string& y_label) {
    BinaryObservation work = obs;
    if (options.gamma_override) work.gamma = options.gamma_override;
    if (!options.iv_overrides.empty()) work.per_z = options.iv_overrides;
    if (options.nu) work.nu = options.nu;
    if (options.pi0) work.pi0 = options.pi0;
    if (options.pi1) work.pi1 = options.pi1;
    work.validate();

    FigureSet out;
    nlohmann::ordered_json figures;

    const auto base = no_assumption_region(work);
    figures["no_assumption"] = region_entry(base);
    {
        svg::Figure fig(x_label, y_label);
        fig.add_region(base, "black", 0.9);
        fig.add_corner_guides(base);
        out.svgs["no_assumption"] = fig.render();
    }
    geom::ConvexRegion2D current = base;

    if (work.nu) {
        const auto nu_region = min_vagueness_region(work);
        figures["min_vagueness"] = region_entry(nu_region);
        svg::Figure fig(x_label, y_label);
        fig.add_region(nu_region, "black", 0.9);
        fig.add_corner_guides(nu_region);
        out.svgs["min_vagueness"] = fig.render();
    }

    if (options.use_iv) {
        const auto iv = iv_region(work);
        auto entry = region_entry(iv.region);
        entry["delta0"] = rat_str(iv.delta0);
        entry["theta01_lower_bound"] = rat_str(iv.theta01_lower);
        entry["inf_p0"] = rat_str(iv.inf_p0);
        entry["sup_p0"] = rat_str(iv.sup_p0);
        entry["inf_p1"] = rat_str(iv.inf_p1);
        entry["sup_p1"] = rat_str(iv.sup_p1);
        figures["iv"] = entry;
        svg::Figure fig(x_label, y_label);
        // gray conditional envelopes first, dark intersection on top
        fig.add_region(geom::ConvexRegion2D::from_points({{Rat(0), Rat(0)},
                                                          {iv.sup_p1, Rat(0)},
                                                          {iv.sup_p1, iv.inf_p0},
                                                          {Rat(0), iv.inf_p0}}),
                       "gray", 0.5);
        fig.add_region(geom::ConvexRegion2D::from_points({{Rat(0), Rat(0)},
                                                          {iv.inf_p1, Rat(0)},
                                                          {iv.inf_p1, iv.sup_p0},
                                                          {Rat(0), iv.sup_p0}}),
                       "gray", 0.5);
        fig.add_region(iv.region, "black", 0.9);
        fig.add_corner_guides(iv.region);
        out.svgs["iv"] = fig.render();
        current = iv.region;
    }

    if (options.unobserved_mode) {
        if (!work.gamma)
            throw InvalidInput("abstention composition requested but gamma is unknown");
        current = abstention_region(current, *work.gamma, *options.unobserved_mode);
        auto entry = region_entry(current);
        entry["mode"] = unobserved_mode_name(*options.unobserved_mode);
        entry["gamma"] = rat_str(*work.gamma);
        figures["abstention"] = entry;
        svg::Figure fig(x_label, y_label);
        fig.add_region(current, "orange", 0.6);
        fig.add_corner_guides(current);
        out.svgs["abstention"] = fig.render();
    }

    if (work.pi0 || work.pi1) {
        const Rat pi0 = work.pi0.value_or(Rat(0));
        const Rat pi1 = work.pi1.value_or(Rat(0));
        current = consideration_region(current, pi0, pi1);
        auto entry = region_entry(current);
        entry["pi0"] = rat_str(pi0);
        entry["pi1"] = rat_str(pi1);
        if (!current.empty()) {
            entry["min_theta1"] = rat_str(pi1);
            entry["min_theta0"] = rat_str(pi0);
        }
        figures["consideration"] = entry;
        svg::Figure fig(x_label, y_label);
        fig.add_region(current, "black", 0.95);
        fig.add_corner_guides(current);
        out.svgs["consideration"] = fig.render();
    }

    out.document["figures"] = figures;

    // computed-vs-printed comparison for constants the paper prints with
    // small mismatches against its own formulas
    if (!options.printed_reference.empty()) {
        auto table = nlohmann::ordered_json::array();
        for (const auto& [key, printed] : options.printed_reference) {
            nlohmann::ordered_json row;
            row["quantity"] = key;
            row["printed"] = rat_str(printed);
            const auto dot = key.find('.');
            std::optional<Rat> computed;
            if (dot != std::string::npos) {
                const std::string fig = key.substr(0, dot);
                const std::string field = key.substr(dot + 1);
                if (figures.contains(fig) && figures[fig].contains(field))
                    computed = parse_rat(figures[fig][field].get<std::string>());
            }
            if (computed) {
                row["computed"] = rat_str(*computed);
                const Rat diff = *computed >= printed ? *computed - printed : printed - *computed;
                row["abs_diff"] = rat_double(diff);
            } else {
                row["computed"] = nullptr;
            }
            table.push_back(row);
        }
        out.document["printed_reference"] = table;
    }
    return out;
}

} // namespace setid::binary
