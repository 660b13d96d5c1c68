#pragma once

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace setid::dist {

double normal_pdf(double x);
double normal_cdf(double x);
// Bracketed Newton on normal_cdf; |cdf(quantile(q)) - q| <= 1e-12 on (0,1).
double normal_quantile(double q);

double logistic_cdf(double x);
double logistic_quantile(double q);

enum class CdfKind { Probit, Logit };

CdfKind cdf_from_name(const std::string& name); // "probit" | "logit"
const char* cdf_name(CdfKind kind);
double cdf(CdfKind kind, double x);
double quantile(CdfKind kind, double q);

// Scalar sampling families for the population simulator, drawn by inverse
// transform from a single uniform.
struct SampleFamily {
    enum class Kind { Point, Normal, Uniform, Exponential };
    Kind kind = Kind::Point;
    double a = 0; // point value / mean / lower bound / unused
    double b = 0; // sd / upper bound / rate in b for exponential

    static SampleFamily point(double value);
    static SampleFamily normal(double mean, double sd);
    static SampleFamily uniform(double lo, double hi);
    static SampleFamily exponential(double rate);

    double sample(double u01) const;
    bool nonnegative() const; // support within [0, inf)
    void validate() const;

    static SampleFamily from_json(const nlohmann::ordered_json& j);
    nlohmann::ordered_json to_json() const;
};

} // namespace setid::dist
