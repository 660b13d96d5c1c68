#pragma once

#include <gmpxx.h>

#include <string>

namespace setid {

// Exact rational number. All identification-region geometry runs on these;
// probabilities entered as decimals are converted exactly at parse time.
using Rat = mpq_class;

// Accepts plain integers ("3", "-2"), fractions ("29564/87525") and decimal
// strings ("0.338"). Throws ParseError on anything else.
Rat parse_rat(const std::string& text);

// Canonical string form, "num/den" when the denominator is not 1.
std::string rat_str(const Rat& q);

double rat_double(const Rat& q);

// Exact rounding of q*10^decimals to the nearest integer (ties away from
// zero), returned as a rational with denominator 10^decimals.
Rat rat_round(const Rat& q, int decimals);

} // namespace setid
