#include "setid/parametric.hpp"

#include "setid/errors.hpp"

#include <algorithm>
#include <cmath>

namespace setid::param {

namespace {

geom::HalfspaceSystem wedge_system(double q_lo, double q_hi) {
    geom::HalfspaceSystem sys(2);
    // beta - sigma <= q_lo
    sys.add_inequality({Rat(1), Rat(-1)}, Rat(q_lo), "beta - sigma <= F^-1(inf p1|z)");
    // q_hi <= beta + sigma
    sys.add_inequality({Rat(-1), Rat(-1)}, Rat(-q_hi), "F^-1(sup p1|z) <= beta + sigma");
    // sigma >= 0
    sys.add_inequality({Rat(0), Rat(-1)}, Rat(0), "sigma >= 0");
    return sys;
}

} // namespace

bool ParametricRegion::contains(double beta, double sigma) const {
    return sigma >= 0 && beta - sigma <= q_lo && q_hi <= beta + sigma;
}

ParametricRegion parametric_region(double p1, dist::CdfKind cdf) {
    if (!(p1 > 0.0 && p1 < 1.0)) throw InvalidInput("parametric region needs 0 < p1 < 1");
    const double q = dist::quantile(cdf, p1);
    return {cdf, q, q, wedge_system(q, q)};
}

ParametricRegion parametric_region_iv(const std::map<std::string, double>& p1_by_z,
                                      dist::CdfKind cdf) {
    if (p1_by_z.empty()) throw InvalidInput("instrument table is empty");
    double q_lo = 0, q_hi = 0;
    bool first = true;
    for (const auto& [z, p1] : p1_by_z) {
        if (!(p1 > 0.0 && p1 < 1.0))
            throw InvalidInput("conditional probability for z=" + z + " outside (0,1)");
        const double q = dist::quantile(cdf, p1);
        if (first) {
            q_lo = q_hi = q;
            first = false;
        } else {
            q_lo = std::min(q_lo, q);
            q_hi = std::max(q_hi, q);
        }
    }
    return {cdf, q_lo, q_hi, wedge_system(q_lo, q_hi)};
}

double policy_complete(double p1, double delta, dist::CdfKind cdf) {
    if (!(p1 > 0.0 && p1 < 1.0)) throw InvalidInput("policy prediction needs 0 < p1 < 1");
    if (!(delta > 0.0)) throw InvalidInput("policy increment must be positive");
    return dist::cdf(cdf, dist::quantile(cdf, p1) + delta);
}

PolicyInterval policy_incomplete_interval(double p1, double sigma, double delta,
                                          dist::CdfKind cdf) {
    if (!(p1 > 0.0 && p1 < 1.0)) throw InvalidInput("policy prediction needs 0 < p1 < 1");
    if (sigma < 0) throw InvalidInput("sigma must be nonnegative");
    if (!(delta > 0.0)) throw InvalidInput("policy increment must be positive");
    const double q = dist::quantile(cdf, p1);
    PolicyInterval out;
    out.p_lo = dist::cdf(cdf, q - 2 * sigma + delta);
    out.p_hi = dist::cdf(cdf, q + 2 * sigma + delta);
    out.effect_lo = out.p_lo - p1;
    out.effect_hi = out.p_hi - p1;
    if (delta > 2 * sigma)
        out.sign = EffectSign::Positive;
    else if (delta == 2 * sigma)
        out.sign = EffectSign::ZeroAtLower;
    else
        out.sign = EffectSign::Ambiguous;
    return out;
}

StepCdf::StepCdf(std::vector<std::pair<double, double>> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2) throw InvalidInput("cdf table needs at least 2 samples");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& [x, f] = samples_[i];
        if (!std::isfinite(x) || !std::isfinite(f)) throw InvalidInput("non-finite cdf sample");
        if (f < 0.0 || f > 1.0) throw InvalidInput("cdf value outside [0,1]");
        if (i > 0) {
            if (x <= samples_[i - 1].first) throw InvalidInput("cdf x values must increase");
            if (f < samples_[i - 1].second) throw InvalidInput("cdf sample not monotone");
        }
    }
}

double StepCdf::operator()(double x) const {
    if (x <= samples_.front().first) return samples_.front().second;
    if (x >= samples_.back().first) return samples_.back().second;
    auto it = std::upper_bound(samples_.begin(), samples_.end(), x,
                               [](double v, const auto& s) { return v < s.first; });
    const auto& [x1, f1] = *it;
    const auto& [x0, f0] = *(it - 1);
    const double t = (x - x0) / (x1 - x0);
    return f0 + t * (f1 - f0);
}

NonparametricBounds nonparametric_policy_bounds(double p1, double delta, const StepCdf& F) {
    if (!(p1 > 0.0 && p1 <= 1.0)) throw InvalidInput("needs 0 < p1 <= 1");
    if (!(delta > 0.0)) throw InvalidInput("policy increment must be positive");
    NonparametricBounds out;
    out.effect_lo = F(delta) - p1;
    out.effect_hi = 1.0 - p1;
    out.contains_zero = out.effect_lo <= 0.0;
    return out;
}

const char* effect_sign_name(EffectSign sign) {
    switch (sign) {
        case EffectSign::Positive: return "positive";
        case EffectSign::ZeroAtLower: return "zero-at-lower-endpoint";
        case EffectSign::Ambiguous: return "ambiguous";
    }
    return "?";
}

} // namespace setid::param
