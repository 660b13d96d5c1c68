#pragma once

#include "setid/binary_bounds.hpp"
#include "setid/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace setid::elections {

struct PrecinctRecord {
    std::string precinct;
    std::string race;
    std::string candidate;
    std::int64_t votes = 0;
    int ballot_position = 0;
    std::optional<std::int64_t> turnout;
    std::optional<std::int64_t> reg_dem, reg_rep;
    std::size_t source_row = 0; // 1-based csv row, for error messages
};

// Reserved race id carrying per-precinct turnout in its votes column.
inline constexpr const char* kTurnoutRace = "TURNOUT";

// CSV columns: precinct_id,race_id,candidate,votes,ballot_position,turnout,
// reg_dem,reg_rep (the last three may be blank). Hard error, with the row
// number, on malformed rows or invariant violations.
std::vector<PrecinctRecord> ingest(std::istream& in);
std::vector<PrecinctRecord> ingest_file(const std::string& path);

struct RaceSummary {
    std::string race;
    std::vector<std::string> candidates; // sorted by name; index 0 is a0
    std::vector<std::int64_t> votes;
    std::int64_t total_votes = 0;
    std::optional<std::int64_t> turnout_total;
    std::vector<Rat> p;                       // vote shares, sum to 1
    std::optional<Rat> gamma;                 // 1 - total_votes / turnout
    // z label "first=<candidate>" -> per-candidate vote shares
    std::map<std::string, std::vector<Rat>> p_by_first;
    std::optional<Rat> reg_dem_share, reg_rep_share; // of turnout
    std::vector<std::string> warnings;        // rotation-sanity findings
};

RaceSummary summarize(const std::vector<PrecinctRecord>& records, const std::string& race_id,
                      const std::string& turnout_race = kTurnoutRace);

// Race metadata plus the binary-bounds region chain. Conditional
// probabilities may be overridden through the options to reproduce published
// figures whose regression-based inputs are not derivable from the raw data.
binary::FigureSet figure_pipeline(const RaceSummary& summary,
                                  const binary::FigureOptions& options);

} // namespace setid::elections
