#include "setid/distributions.hpp"

#include "setid/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace setid::dist {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
} // namespace

double normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double normal_quantile(double q) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidInput("normal quantile needs q in (0,1)");

    // expanding bracket
    double lo = -1, hi = 1;
    while (normal_cdf(lo) > q) lo *= 2;
    while (normal_cdf(hi) < q) hi *= 2;

    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = normal_cdf(x) - q;
        if (f == 0.0) break;
        if (f > 0)
            hi = x;
        else
            lo = x;
        const double dens = normal_pdf(x);
        double next = dens > 0 ? x - f / dens : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi); // bisection fallback
        if (next == x) break;
        x = next;
        if (hi - lo < 1e-16 * (1.0 + std::fabs(x))) break;
    }
    return x;
}

double logistic_cdf(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double logistic_quantile(double q) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidInput("logistic quantile needs q in (0,1)");
    return std::log(q) - std::log1p(-q);
}

CdfKind cdf_from_name(const std::string& name) {
    if (name == "probit") return CdfKind::Probit;
    if (name == "logit") return CdfKind::Logit;
    throw InvalidInput("unknown cdf '" + name + "' (expected probit or logit)");
}

const char* cdf_name(CdfKind kind) {
    return kind == CdfKind::Probit ? "probit" : "logit";
}

double cdf(CdfKind kind, double x) {
    return kind == CdfKind::Probit ? normal_cdf(x) : logistic_cdf(x);
}

double quantile(CdfKind kind, double q) {
    return kind == CdfKind::Probit ? normal_quantile(q) : logistic_quantile(q);
}

SampleFamily SampleFamily::point(double value) {
    return {Kind::Point, value, 0};
}
SampleFamily SampleFamily::normal(double mean, double sd) {
    return {Kind::Normal, mean, sd};
}
SampleFamily SampleFamily::uniform(double lo, double hi) {
    return {Kind::Uniform, lo, hi};
}
SampleFamily SampleFamily::exponential(double rate) {
    return {Kind::Exponential, 0, rate};
}

double SampleFamily::sample(double u) const {
    switch (kind) {
        case Kind::Point: return a;
        case Kind::Normal: return a + b * normal_quantile(u);
        case Kind::Uniform: return a + u * (b - a);
        case Kind::Exponential: return -std::log1p(-u) / b;
    }
    throw InvalidInput("bad sample family");
}

bool SampleFamily::nonnegative() const {
    switch (kind) {
        case Kind::Point: return a >= 0;
        case Kind::Normal: return false;
        case Kind::Uniform: return a >= 0 && b >= 0;
        case Kind::Exponential: return true;
    }
    return false;
}

void SampleFamily::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidInput("non-finite family parameter");
    if (kind == Kind::Normal && b <= 0) throw InvalidInput("normal sd must be positive");
    if (kind == Kind::Uniform && b < a) throw InvalidInput("uniform upper bound below lower");
    if (kind == Kind::Exponential && b <= 0) throw InvalidInput("exponential rate must be positive");
}

SampleFamily SampleFamily::from_json(const nlohmann::ordered_json& j) {
    const std::string family = j.at("family").get<std::string>();
    SampleFamily f;
    if (family == "point")
        f = point(j.at("value").get<double>());
    else if (family == "normal")
        f = normal(j.at("mean").get<double>(), j.at("sd").get<double>());
    else if (family == "uniform")
        f = uniform(j.at("lo").get<double>(), j.at("hi").get<double>());
    else if (family == "exponential")
        f = exponential(j.at("rate").get<double>());
    else
        throw ParseError("unknown distribution family '" + family + "'");
    f.validate();
    return f;
}

nlohmann::ordered_json SampleFamily::to_json() const {
    nlohmann::ordered_json j;
    switch (kind) {
        case Kind::Point:
            j["family"] = "point";
            j["value"] = a;
            break;
        case Kind::Normal:
            j["family"] = "normal";
            j["mean"] = a;
            j["sd"] = b;
            break;
        case Kind::Uniform:
            j["family"] = "uniform";
            j["lo"] = a;
            j["hi"] = b;
            break;
        case Kind::Exponential:
            j["family"] = "exponential";
            j["rate"] = b;
            break;
    }
    return j;
}

} // namespace setid::dist
