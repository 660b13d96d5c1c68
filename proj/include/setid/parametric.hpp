#pragma once

#include "setid/distributions.hpp"
#include "setid/polytope.hpp"

#include <map>
#include <string>
#include <vector>

namespace setid::param {

// Identified set for (beta, sigma) in the linear interval-utility model:
//   { (beta, sigma) : sigma >= 0, beta - sigma <= q_lo, q_hi <= beta + sigma }
// Without an instrument q_lo == q_hi == F^{-1}(p1) and the wedge apex is
// (F^{-1}(p1), 0): completeness is not excluded.
struct ParametricRegion {
    dist::CdfKind cdf;
    double q_lo = 0;
    double q_hi = 0;
    geom::HalfspaceSystem system{2}; // coordinates (beta, sigma)

    double sigma_lower() const { return 0.5 * (q_hi - q_lo); }
    bool contains(double beta, double sigma) const;
};

ParametricRegion parametric_region(double p1, dist::CdfKind cdf);

// Instrumented variant over the conditional probabilities p1|z. With at least
// two distinct values the sigma lower bound is positive, rejecting sigma = 0.
ParametricRegion parametric_region_iv(const std::map<std::string, double>& p1_by_z,
                                      dist::CdfKind cdf);

// Complete-preference prediction F(F^{-1}(p1) + delta); strictly above p1.
double policy_complete(double p1, double delta, dist::CdfKind cdf);

enum class EffectSign {
    Positive,     // delta > 2*sigma: whole effect interval above 0
    ZeroAtLower,  // delta == 2*sigma: effect interval starts exactly at 0
    Ambiguous     // delta < 2*sigma: negative effects cannot be excluded
};

struct PolicyInterval {
    double p_lo = 0, p_hi = 0;           // post-policy choice probability
    double effect_lo = 0, effect_hi = 0; // minus the observed p1
    EffectSign sign = EffectSign::Positive;
};

// Union over beta in [F^{-1}(p1)-sigma, F^{-1}(p1)+sigma] of the predicted
// band: p1^delta in [F(q - 2 sigma + delta), F(q + 2 sigma + delta)].
PolicyInterval policy_incomplete_interval(double p1, double sigma, double delta,
                                          dist::CdfKind cdf);

// Piecewise-linear CDF supplied as (x, F(x)) samples; x strictly increasing,
// F nondecreasing within [0,1]. Evaluation clamps outside the sampled range.
class StepCdf {
  public:
    explicit StepCdf(std::vector<std::pair<double, double>> samples);
    double operator()(double x) const;

  private:
    std::vector<std::pair<double, double>> samples_;
};

struct NonparametricBounds {
    double effect_lo = 0, effect_hi = 0;
    bool contains_zero = false;
};

// Effect bounds [F(delta) - p1, 1 - p1] for user-supplied F of lower_u0 -
// upper_u1; zero is attainable exactly when F(delta) <= p1.
NonparametricBounds nonparametric_policy_bounds(double p1, double delta, const StepCdf& F);

const char* effect_sign_name(EffectSign sign);

} // namespace setid::param
