#include "setid/elections.hpp"

#include "setid/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace setid::elections {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::int64_t parse_count(const std::string& s, std::size_t row, const char* what) {
    if (s.empty()) throw DataError("row " + std::to_string(row) + ": empty " + what);
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw DataError("row " + std::to_string(row) + ": bad " + what + " '" + s + "'");
    return std::stoll(s);
}

Rat count_ratio(std::int64_t num, std::int64_t den) {
    Rat q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

} // namespace

std::vector<PrecinctRecord> ingest(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty csv stream");
    const auto header = split_csv_line(line);
    const std::vector<std::string> expected = {"precinct_id", "race_id",  "candidate",
                                               "votes",       "ballot_position", "turnout",
                                               "reg_dem",     "reg_rep"};
    if (header.size() < 5) throw DataError("csv header must name at least the first 5 columns");
    for (std::size_t i = 0; i < header.size() && i < expected.size(); ++i)
        if (header[i] != expected[i])
            throw DataError("csv column " + std::to_string(i + 1) + " must be '" + expected[i] +
                            "', got '" + header[i] + "'");

    std::vector<PrecinctRecord> records;
    std::set<std::tuple<std::string, std::string, std::string>> keys;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < 5 || fields.size() > 8)
            throw DataError("row " + std::to_string(row) + ": expected 5..8 fields, got " +
                            std::to_string(fields.size()));
        PrecinctRecord rec;
        rec.precinct = fields[0];
        rec.race = fields[1];
        rec.candidate = fields[2];
        if (rec.precinct.empty() || rec.race.empty() || rec.candidate.empty())
            throw DataError("row " + std::to_string(row) + ": empty key field");
        rec.votes = parse_count(fields[3], row, "votes");
        rec.ballot_position = static_cast<int>(parse_count(fields[4], row, "ballot_position"));
        if (fields.size() > 5 && !fields[5].empty())
            rec.turnout = parse_count(fields[5], row, "turnout");
        if (fields.size() > 6 && !fields[6].empty())
            rec.reg_dem = parse_count(fields[6], row, "reg_dem");
        if (fields.size() > 7 && !fields[7].empty())
            rec.reg_rep = parse_count(fields[7], row, "reg_rep");
        rec.source_row = row;
        if (!keys.insert({rec.precinct, rec.race, rec.candidate}).second)
            throw DataError("row " + std::to_string(row) + ": duplicate (precinct, race, candidate)");
        records.push_back(std::move(rec));
    }

    // per (precinct, race): positions form a permutation of 1..k and votes
    // stay within the precinct turnout when one is given
    std::map<std::pair<std::string, std::string>, std::vector<const PrecinctRecord*>> groups;
    for (const auto& r : records) groups[{r.precinct, r.race}].push_back(&r);
    for (const auto& [key, rows] : groups) {
        std::set<int> positions;
        std::int64_t votes = 0;
        std::optional<std::int64_t> turnout;
        std::size_t first_row = rows.front()->source_row, last_row = first_row;
        for (const auto* r : rows) {
            positions.insert(r->ballot_position);
            votes += r->votes;
            if (r->turnout) turnout = turnout ? std::max(*turnout, *r->turnout) : *r->turnout;
            first_row = std::min(first_row, r->source_row);
            last_row = std::max(last_row, r->source_row);
        }
        const std::string where = "rows " + std::to_string(first_row) + ".." +
                                  std::to_string(last_row) + " (precinct " + key.first +
                                  ", race " + key.second + ")";
        if (positions.size() != rows.size() || *positions.begin() != 1 ||
            *positions.rbegin() != static_cast<int>(rows.size()))
            throw DataError(where + ": ballot positions are not a permutation of 1.." +
                            std::to_string(rows.size()));
        if (turnout && votes > *turnout) throw DataError(where + ": votes exceed turnout");
    }
    return records;
}

std::vector<PrecinctRecord> ingest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return ingest(in);
}

RaceSummary summarize(const std::vector<PrecinctRecord>& records, const std::string& race_id,
                      const std::string& turnout_race) {
    RaceSummary s;
    s.race = race_id;

    std::map<std::string, std::int64_t> vote_totals;
    std::map<std::string, std::vector<const PrecinctRecord*>> by_precinct;
    for (const auto& r : records) {
        if (r.race != race_id) continue;
        vote_totals[r.candidate] += r.votes;
        by_precinct[r.precinct].push_back(&r);
    }
    if (vote_totals.empty()) throw DataError("no records for race '" + race_id + "'");

    for (const auto& [name, votes] : vote_totals) {
        s.candidates.push_back(name);
        s.votes.push_back(votes);
        s.total_votes += votes;
    }
    if (s.total_votes == 0) throw DataError("race '" + race_id + "' has zero votes");
    for (auto v : s.votes) s.p.push_back(count_ratio(v, s.total_votes));

    std::int64_t turnout = 0;
    bool have_turnout = false;
    std::int64_t reg_dem = 0, reg_rep = 0;
    bool have_dem = false, have_rep = false;
    for (const auto& r : records) {
        if (r.race == turnout_race) {
            turnout += r.votes;
            have_turnout = true;
        }
        if (r.reg_dem) {
            reg_dem += *r.reg_dem;
            have_dem = true;
        }
        if (r.reg_rep) {
            reg_rep += *r.reg_rep;
            have_rep = true;
        }
    }
    if (have_turnout) {
        if (s.total_votes > turnout)
            throw DataError("race '" + race_id + "' votes exceed county turnout");
        s.turnout_total = turnout;
        s.gamma = count_ratio(turnout - s.total_votes, turnout);
        if (have_dem) s.reg_dem_share = count_ratio(reg_dem, turnout);
        if (have_rep) s.reg_rep_share = count_ratio(reg_rep, turnout);
    }

    // conditional shares grouped by the first-listed candidate
    std::map<std::string, std::vector<std::int64_t>> votes_by_first;
    std::map<std::string, std::size_t> first_counts;
    for (const auto& [precinct, rows] : by_precinct) {
        std::string first;
        for (const auto* r : rows)
            if (r->ballot_position == 1) first = r->candidate;
        first_counts[first] += 1;
        auto& acc = votes_by_first[first];
        acc.resize(s.candidates.size(), 0);
        for (const auto* r : rows) {
            const auto it = std::find(s.candidates.begin(), s.candidates.end(), r->candidate);
            acc[static_cast<std::size_t>(it - s.candidates.begin())] += r->votes;
        }
    }
    for (const auto& [first, acc] : votes_by_first) {
        std::int64_t total = 0;
        for (auto v : acc) total += v;
        if (total == 0) continue;
        std::vector<Rat> shares;
        for (auto v : acc) shares.push_back(count_ratio(v, total));
        s.p_by_first["first=" + first] = shares;
    }

    // rotation sanity: each candidate leads the ballot about equally often
    if (!first_counts.empty()) {
        std::size_t lo = first_counts.begin()->second, hi = lo;
        for (const auto& [name, c] : first_counts) {
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        if (first_counts.size() < s.candidates.size() || hi - lo > 1) {
            std::ostringstream os;
            os << "ballot rotation looks uneven for race " << race_id << ":";
            for (const auto& [name, c] : first_counts) os << ' ' << name << " first in " << c;
            os << " precinct(s)";
            s.warnings.push_back(os.str());
        }
    }
    return s;
}

binary::FigureSet figure_pipeline(const RaceSummary& summary,
                                  const binary::FigureOptions& options) {
    if (summary.candidates.size() != 2)
        throw InvalidInput("figure pipeline handles binary races; race '" + summary.race +
                           "' has " + std::to_string(summary.candidates.size()) + " candidates");

    binary::BinaryObservation obs;
    obs.p0 = summary.p[0];
    obs.p1 = summary.p[1];
    obs.gamma = summary.gamma;
    if (options.use_iv && options.iv_overrides.empty()) {
        // a single ballot-order group still works: the IV rectangle then
        // reduces to the no-assumption rectangle of that group
        if (summary.p_by_first.empty())
            throw InvalidInput("race '" + summary.race +
                               "' has no ballot-order groups for the IV step");
        for (const auto& [z, shares] : summary.p_by_first) obs.per_z[z] = {shares[0], shares[1]};
    }

    const std::string x_label = "theta1: P(" + summary.candidates[1] + " preferred)";
    const std::string y_label = "theta0: P(" + summary.candidates[0] + " preferred)";
    binary::FigureSet out = binary::build_figures(obs, options, x_label, y_label);

    nlohmann::ordered_json doc;
    doc["race"] = summary.race;
    doc["candidates"] = summary.candidates;
    nlohmann::ordered_json votes;
    for (std::size_t i = 0; i < summary.candidates.size(); ++i)
        votes[summary.candidates[i]] = summary.votes[i];
    doc["votes"] = votes;
    doc["p"] = {{"p0", rat_str(summary.p[0])}, {"p1", rat_str(summary.p[1])}};
    if (summary.gamma) doc["gamma"] = rat_str(*summary.gamma);
    if (summary.turnout_total) doc["turnout"] = *summary.turnout_total;
    nlohmann::ordered_json raw;
    for (const auto& [z, shares] : summary.p_by_first)
        raw[z] = {{"p0", rat_str(shares[0])}, {"p1", rat_str(shares[1])}};
    doc["conditional_frequencies"] = raw;
    if (summary.reg_dem_share) doc["reg_dem_share"] = rat_str(*summary.reg_dem_share);
    if (summary.reg_rep_share) doc["reg_rep_share"] = rat_str(*summary.reg_rep_share);
    doc["warnings"] = summary.warnings;
    for (auto& [key, value] : out.document.items()) doc[key] = value;
    out.document = std::move(doc);
    return out;
}

} // namespace setid::elections
