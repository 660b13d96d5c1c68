#include "setid/errors.hpp"
#include "setid/parametric.hpp"

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace setid;
using namespace setid::param;

TEST_CASE("wedge apex is the quantile, completeness never excluded") {
    const auto region = parametric_region(0.5, dist::CdfKind::Probit);
    CHECK(region.q_lo == 0.0);
    CHECK(region.sigma_lower() == 0.0);
    CHECK(region.contains(0.0, 0.0));

    for (double p1 = 0.05; p1 < 1.0; p1 += 0.05) {
        const auto r = parametric_region(p1, dist::CdfKind::Probit);
        const double q = static_cast<double>(oracles::normal_quantile(p1));
        CHECK(std::fabs(r.q_lo - q) <= 1e-10);
        CHECK(r.contains(r.q_lo, 0.0)); // sigma = 0 never rejected without an instrument
        CHECK(r.contains(r.q_lo + 0.25, 0.3)); // strictly interior
        CHECK_FALSE(r.contains(r.q_lo + 0.3, 0.1));
        // the halfspace system agrees with the closed-form membership
        CHECK(geom::contains(r.system, {Rat(r.q_lo), Rat(0)}));
        CHECK(geom::contains(r.system, {Rat(r.q_lo + 0.25), Rat(0.3)}));
        CHECK_FALSE(geom::contains(r.system, {Rat(r.q_lo + 0.3), Rat(0.1)}));
    }
    CHECK_THROWS_AS(parametric_region(0.0, dist::CdfKind::Probit), InvalidInput);
    CHECK_THROWS_AS(parametric_region(1.0, dist::CdfKind::Probit), InvalidInput);
}

TEST_CASE("apex at one standard deviation") {
    const double p1 = static_cast<double>(oracles::normal_cdf(1.0L)); // 0.84134...
    const auto r = parametric_region(p1, dist::CdfKind::Probit);
    CHECK(std::fabs(r.q_lo - 1.0) <= 1e-10);
}

TEST_CASE("instrumented wedge rejects sigma zero") {
    const auto r = parametric_region_iv({{"z0", 0.649}, {"z1", 0.675}}, dist::CdfKind::Probit);
    const double expected =
        0.5 * static_cast<double>(oracles::normal_quantile(0.675L) - oracles::normal_quantile(0.649L));
    CHECK(std::fabs(r.sigma_lower() - expected) <= 1e-10);
    CHECK(r.sigma_lower() > 0.03);
    CHECK_FALSE(r.contains(r.q_lo, 0.0));

    const auto flat = parametric_region_iv({{"z0", 0.4}, {"z1", 0.4}}, dist::CdfKind::Probit);
    CHECK(flat.sigma_lower() == 0.0);

    const auto logit = parametric_region_iv({{"z0", 0.4}, {"z1", 0.6}}, dist::CdfKind::Logit);
    CHECK(std::fabs(logit.sigma_lower() - std::log(1.5)) <= 1e-12);

    CHECK_THROWS_AS(parametric_region_iv({}, dist::CdfKind::Probit), InvalidInput);
}

TEST_CASE("complete-preference policy prediction") {
    const double got = policy_complete(0.5, 1.0, dist::CdfKind::Probit);
    CHECK(std::fabs(got - static_cast<double>(oracles::normal_cdf(1.0L))) <= 1e-10);

    CHECK(std::fabs(policy_complete(0.5, 1.0, dist::CdfKind::Logit) - 1.0 / (1.0 + std::exp(-1.0))) <=
          1e-12);

    // strictly increasing in delta and p1, and above p1 (claim 1)
    double prev = 0.5;
    for (double delta = 0.1; delta <= 2.0; delta += 0.1) {
        const double v = policy_complete(0.5, delta, dist::CdfKind::Probit);
        CHECK(v > prev);
        prev = v;
    }
    prev = 0.0;
    for (double p1 = 0.05; p1 < 0.99; p1 += 0.05) {
        const double v = policy_complete(p1, 0.5, dist::CdfKind::Probit);
        CHECK(v > p1);
        CHECK(v > prev);
        prev = v;
        const double expected =
            static_cast<double>(oracles::normal_cdf(oracles::normal_quantile(p1) + 0.5L));
        CHECK(std::fabs(v - expected) <= 1e-10);
    }
    // continuity toward delta -> 0+
    CHECK(std::fabs(policy_complete(0.5, 1e-9, dist::CdfKind::Probit) - 0.5) <= 1e-8);
    CHECK_THROWS_AS(policy_complete(0.5, 0.0, dist::CdfKind::Probit), InvalidInput);
}

TEST_CASE("incomplete-preference policy interval") {
    // sigma = 0 collapses to the complete prediction
    const auto collapsed = policy_incomplete_interval(0.5, 0.0, 1.0, dist::CdfKind::Probit);
    CHECK(collapsed.p_lo == collapsed.p_hi);
    CHECK(std::fabs(collapsed.p_lo - policy_complete(0.5, 1.0, dist::CdfKind::Probit)) <= 1e-15);
    CHECK(collapsed.sign == EffectSign::Positive);

    // delta == 2 sigma: the effect interval starts exactly at zero
    const auto boundary = policy_incomplete_interval(0.5, 0.5, 1.0, dist::CdfKind::Probit);
    CHECK(boundary.sign == EffectSign::ZeroAtLower);
    CHECK(std::fabs(boundary.effect_lo) <= 1e-12);
    const double hi = static_cast<double>(oracles::normal_cdf(2.0L)) - 0.5;
    CHECK(std::fabs(boundary.effect_hi - hi) <= 1e-10);

    // spec example: p1=0.5, sigma=1, delta=1 -> [Phi(-1), Phi(3)]
    const auto wide = policy_incomplete_interval(0.5, 1.0, 1.0, dist::CdfKind::Probit);
    CHECK(std::fabs(wide.p_lo - static_cast<double>(oracles::normal_cdf(-1.0L))) <= 1e-10);
    CHECK(std::fabs(wide.p_hi - static_cast<double>(oracles::normal_cdf(3.0L))) <= 1e-10);
    CHECK(wide.sign == EffectSign::Ambiguous);
    CHECK(wide.effect_lo < 0.0);
}

TEST_CASE("effect-sign trichotomy over a sigma-delta grid") {
    for (int i = 1; i <= 20; ++i) {
        for (int j = 1; j <= 20; ++j) {
            const double sigma = 0.1 * i;
            const double delta = 0.1 * j;
            const auto interval = policy_incomplete_interval(0.55, sigma, delta, dist::CdfKind::Probit);
            if (delta > 2 * sigma) {
                CHECK(interval.sign == EffectSign::Positive);
                CHECK(interval.effect_lo > 0.0);
            } else if (delta == 2 * sigma) {
                CHECK(interval.sign == EffectSign::ZeroAtLower);
                CHECK(std::fabs(interval.effect_lo) <= 1e-12);
            } else {
                CHECK(interval.sign == EffectSign::Ambiguous);
                CHECK(interval.effect_lo < 0.0);
            }
        }
    }
}

TEST_CASE("wedge boundary maps onto the binary rectangle boundary") {
    // (beta, sigma) -> (theta0, theta1) = (1 - F(beta+sigma), F(beta-sigma))
    const double p1 = 0.62;
    const auto r = parametric_region(p1, dist::CdfKind::Probit);
    for (double sigma = 0.0; sigma <= 2.0; sigma += 0.25) {
        // lower boundary: beta - sigma = q  =>  theta1 = p1
        const double beta_lo = r.q_lo + sigma;
        CHECK(std::fabs(dist::normal_cdf(beta_lo - sigma) - p1) <= 1e-12);
        // upper boundary: beta + sigma = q  =>  theta0 = 1 - p1 = p0
        const double beta_hi = r.q_lo - sigma;
        CHECK(std::fabs((1.0 - dist::normal_cdf(beta_hi + sigma)) - (1.0 - p1)) <= 1e-12);
    }
}

TEST_CASE("nonparametric policy bounds") {
    // piecewise-linear F through (0, 0.2), (1, 0.4), (2, 0.8)
    const StepCdf F({{0.0, 0.2}, {1.0, 0.4}, {2.0, 0.8}});
    CHECK(F(1.0) == 0.4);
    CHECK(F(0.5) == doctest::Approx(0.3));
    CHECK(F(-5.0) == 0.2);
    CHECK(F(9.0) == 0.8);

    // F(delta) = p1: zero sits on the boundary
    const auto edge = nonparametric_policy_bounds(0.4, 1.0, F);
    CHECK(edge.effect_lo == 0.0);
    CHECK(edge.effect_hi == doctest::Approx(0.6));
    CHECK(edge.contains_zero);

    // spec case: p1 = 0.6, F(delta) = 0.4 -> [-0.2, 0.4], contains zero
    const auto mid = nonparametric_policy_bounds(0.6, 1.0, F);
    CHECK(mid.effect_lo == doctest::Approx(-0.2));
    CHECK(mid.effect_hi == doctest::Approx(0.4));
    CHECK(mid.contains_zero);

    // p1 -> 1 collapses toward nonpositive effects
    const auto top = nonparametric_policy_bounds(1.0, 1.0, F);
    CHECK(top.effect_hi == 0.0);
    CHECK(top.effect_lo == doctest::Approx(-0.6));

    CHECK_THROWS_AS(StepCdf({{0.0, 0.5}, {1.0, 0.4}}), InvalidInput); // not monotone
    CHECK_THROWS_AS(StepCdf({{0.0, 0.5}, {0.0, 0.6}}), InvalidInput); // repeated x
    CHECK_THROWS_AS(StepCdf({{0.0, -0.1}, {1.0, 0.4}}), InvalidInput);
}
