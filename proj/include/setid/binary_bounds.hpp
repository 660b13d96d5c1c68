#pragma once

#include "setid/polytope.hpp"
#include "setid/rational.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace setid::binary {

// What the analyst assumes about decision makers whose choice is unobserved.
enum class UnobservedMode { AllIncomparable, Agnostic, MissingAtRandom };

UnobservedMode unobserved_mode_from_name(const std::string& name);
const char* unobserved_mode_name(UnobservedMode mode);

// Binary observables. p0 and p1 are conditional on a choice being observed
// (they sum to 1); gamma is the separate unobserved share.
// All regions live in the (x, y) = (theta1, theta0) plane used by the figures.
struct BinaryObservation {
    Rat p0, p1;
    std::map<std::string, std::pair<Rat, Rat>> per_z; // z -> (p0|z, p1|z)
    std::optional<Rat> gamma;                         // unobserved share, [0,1)
    std::optional<Rat> nu;                            // minimal incomparable share
    std::optional<Rat> pi0, pi1;                      // consideration-set shares

    void validate() const;
};

// Rectangle [0,p1] x [0,p0].
geom::ConvexRegion2D no_assumption_region(const BinaryObservation& obs);

// Rectangle cut by theta0 + theta1 <= 1 - nu.
geom::ConvexRegion2D min_vagueness_region(const BinaryObservation& obs);

struct IvRegion {
    geom::ConvexRegion2D region; // [0, inf p1|z] x [0, inf p0|z]
    Rat inf_p0, sup_p0, inf_p1, sup_p1;
    Rat delta0;        // sup p0|z - inf p0|z
    Rat theta01_lower; // >= delta0
};

IvRegion iv_region(const BinaryObservation& obs);

// Theorem-4 bound max(0, delta0 - d0 - d1) on the incomparable mass.
Rat imperfect_iv_bound(const Rat& delta0, const Rat& d0, const Rat& d1);

// (1-gamma) * observed  ⊕  gamma * Theta^U(mode), where Theta^U is {(0,0)},
// the full triangle, or the observed region itself.
geom::ConvexRegion2D abstention_region(const geom::ConvexRegion2D& observed, const Rat& gamma,
                                       UnobservedMode mode);

// region ∩ {theta0 >= pi0} ∩ {theta1 >= pi1}; incoherent shares throw.
geom::ConvexRegion2D consideration_region(const geom::ConvexRegion2D& region, const Rat& pi0,
                                          const Rat& pi1);

// the triangle {theta0 + theta1 <= 1} in the first quadrant
geom::ConvexRegion2D full_triangle();

// Options for the region chain no-assumption -> (min-vagueness) -> (IV) ->
// (abstention) -> (consideration). Each enabled step shrinks the previous
// region except min-vagueness, which is reported standalone.
struct FigureOptions {
    bool use_iv = false;
    std::map<std::string, std::pair<Rat, Rat>> iv_overrides; // z -> (p0|z, p1|z)
    std::optional<Rat> gamma_override;
    std::optional<UnobservedMode> unobserved_mode;
    std::optional<Rat> pi0, pi1;
    std::optional<Rat> nu;
    std::map<std::string, Rat> printed_reference; // "figure.field" -> printed value

    static FigureOptions from_json(const nlohmann::ordered_json& j);
};

struct FigureSet {
    nlohmann::ordered_json document;
    std::map<std::string, std::string> svgs; // figure name -> svg text
};

// Region JSON entry with explicit axis labels (x = theta1, y = theta0).
nlohmann::ordered_json region_entry(const geom::ConvexRegion2D& region);

FigureSet build_figures(const BinaryObservation& obs, const FigureOptions& options,
                        const std::string& x_label, const std::string& y_label);

} // namespace setid::binary
