#include "setid/elections.hpp"
#include "setid/errors.hpp"

#include <doctest.h>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace setid;
using namespace setid::elections;
using helpers::rq;

namespace {

const std::string kHeader =
    "precinct_id,race_id,candidate,votes,ballot_position,turnout,reg_dem,reg_rep\n";

std::vector<PrecinctRecord> ingest_text(const std::string& body) {
    std::istringstream in(kHeader + body);
    return ingest(in);
}

std::string fixture(const char* name) {
    return std::string(SETID_FIXTURES_DIR) + "/" + name;
}

} // namespace

TEST_CASE("a single valid row ingests") {
    const auto records = ingest_text("P1,race,Alice,10,1,,\n");
    REQUIRE(records.size() == 1);
    CHECK(records[0].precinct == "P1");
    CHECK(records[0].votes == 10);
    CHECK_FALSE(records[0].turnout.has_value());
}

TEST_CASE("ingest errors carry row numbers") {
    CHECK_THROWS_WITH_AS(ingest_text("P1,race,Alice,abc,1,,\n"),
                         doctest::Contains("row 2"), DataError);
    CHECK_THROWS_WITH_AS(ingest_text("P1,race,Alice,10,1,,\nP1,race,Alice,3,2,,\n"),
                         doctest::Contains("duplicate"), DataError);
    // votes above the precinct turnout
    CHECK_THROWS_WITH_AS(ingest_text("P1,race,Alice,10,1,12,,\nP1,race,Bob,5,2,12,,\n"),
                         doctest::Contains("votes exceed turnout"), DataError);
    // ballot positions must form a permutation
    CHECK_THROWS_WITH_AS(ingest_text("P1,race,Alice,1,1,,\nP1,race,Bob,1,3,,\n"),
                         doctest::Contains("permutation"), DataError);
    // malformed header
    std::istringstream in("precinct,race_id\nx\n");
    CHECK_THROWS_AS(ingest(in), DataError);
}

TEST_CASE("lorain fixture reproduces the published totals") {
    const auto records = ingest_file(fixture("lorain.csv"));
    const auto race1 = summarize(records, "supreme_court_1");
    REQUIRE(race1.candidates == std::vector<std::string>{"Baldwin", "Donnelly"});
    CHECK(race1.votes == std::vector<std::int64_t>{29564, 57961});
    CHECK(race1.total_votes == 87525);
    CHECK(race1.p[0] + race1.p[1] == Rat(1));
    CHECK(rat_round(race1.p[0], 3) == rq(338, 1000));
    CHECK(rat_round(race1.p[1], 3) == rq(662, 1000));
    REQUIRE(race1.gamma.has_value());
    CHECK(*race1.gamma == rq(28706, 116231));
    CHECK(rat_round(*race1.gamma, 4) == rq(2470, 10000));
    CHECK(race1.warnings.empty()); // rotation is balanced in the fixture
    CHECK(race1.p_by_first.size() == 2);

    const auto race2 = summarize(records, "supreme_court_2");
    CHECK(race2.votes == std::vector<std::int64_t>{37282, 48190});
    CHECK(rat_round(race2.p[1], 3) == rq(564, 1000));
    CHECK(rat_round(*race2.gamma, 4) == rq(2646, 10000));
}

TEST_CASE("summarize needs data and flags uneven rotation") {
    const auto records = ingest_text(
        "P1,r,Alice,5,1,,\nP1,r,Bob,3,2,,\n"
        "P2,r,Alice,4,1,,\nP2,r,Bob,2,2,,\n"
        "P3,r,Alice,6,1,,\nP3,r,Bob,2,2,,\n");
    const auto s = summarize(records, "r");
    CHECK(s.total_votes == 22);
    CHECK_FALSE(s.gamma.has_value()); // no TURNOUT rows
    REQUIRE(s.warnings.size() == 1);  // Alice first everywhere
    CHECK(s.warnings[0].find("rotation") != std::string::npos);

    CHECK_THROWS_AS(summarize(records, "missing-race"), DataError);
}

TEST_CASE("zero-vote race is rejected") {
    const auto records = ingest_text("P1,r,Alice,0,1,,\nP1,r,Bob,0,2,,\n");
    CHECK_THROWS_AS(summarize(records, "r"), DataError);
}

TEST_CASE("conditional frequencies group by the first-listed candidate") {
    const auto records = ingest_text(
        "P1,r,Alice,30,1,,\nP1,r,Bob,70,2,,\n"
        "P2,r,Alice,60,2,,\nP2,r,Bob,40,1,,\n");
    const auto s = summarize(records, "r");
    REQUIRE(s.p_by_first.count("first=Alice") == 1);
    REQUIRE(s.p_by_first.count("first=Bob") == 1);
    CHECK(s.p_by_first.at("first=Alice")[0] == rq(3, 10));
    CHECK(s.p_by_first.at("first=Bob")[0] == rq(3, 5));
}

TEST_CASE("figure pipeline, no options: the Table 2 rectangle") {
    const auto records = ingest_file(fixture("lorain.csv"));
    const auto figset = figure_pipeline(summarize(records, "supreme_court_1"), {});
    const auto& entry = figset.document.at("figures").at("no_assumption");
    CHECK(rat_round(parse_rat(entry.at("max_theta1").get<std::string>()), 3) == rq(662, 1000));
    CHECK(rat_round(parse_rat(entry.at("max_theta0").get<std::string>()), 3) == rq(338, 1000));
    CHECK(figset.svgs.count("no_assumption") == 1);
}

TEST_CASE("figure pipeline with the published overrides") {
    const auto records = ingest_file(fixture("lorain.csv"));
    const auto summary = summarize(records, "supreme_court_1");

    std::ifstream cfg(fixture("lorain_overrides.json"));
    REQUIRE(cfg.good());
    const auto config = nlohmann::ordered_json::parse(cfg);
    const auto options =
        binary::FigureOptions::from_json(config.at("races").at("supreme_court_1"));

    const auto figset = figure_pipeline(summary, options);
    const auto& figs = figset.document.at("figures");
    CHECK(figs.at("iv").at("max_theta1") == "649/1000");
    CHECK(figs.at("iv").at("max_theta0") == "13/40"); // 0.325
    CHECK(figs.at("iv").at("delta0") == "13/500");    // 0.026

    // consideration corners: (1 - gamma) * (0.649, 0.325) with the 0.207 cut
    const Rat scale = Rat(1) - *summary.gamma;
    CHECK(parse_rat(figs.at("consideration").at("max_theta1").get<std::string>()) ==
          scale * rq(649, 1000));
    CHECK(parse_rat(figs.at("consideration").at("min_theta0").get<std::string>()) ==
          rq(207, 1000));

    // printed constants differ from the formulas by less than 0.01, reported
    REQUIRE(figset.document.contains("printed_reference"));
    for (const auto& row : figset.document.at("printed_reference")) {
        REQUIRE_FALSE(row.at("computed").is_null());
        CHECK(row.at("abs_diff").get<double>() <= 0.01);
    }
}

TEST_CASE("the region chain only ever shrinks") {
    const auto records = ingest_file(fixture("lorain.csv"));
    const auto summary = summarize(records, "supreme_court_2");
    std::ifstream cfg(fixture("lorain_overrides.json"));
    const auto config = nlohmann::ordered_json::parse(cfg);
    const auto options =
        binary::FigureOptions::from_json(config.at("races").at("supreme_court_2"));
    const auto figset = figure_pipeline(summary, options);
    const auto& figs = figset.document.at("figures");

    const char* chain[] = {"no_assumption", "iv", "abstention", "consideration"};
    geom::ConvexRegion2D prev;
    for (const char* name : chain) {
        REQUIRE(figs.contains(name));
        const auto region = geom::region_from_json(figs.at(name));
        if (!prev.empty())
            for (const auto& v : region.vertices()) CHECK(prev.contains_point(v));
        prev = region;
    }
}

TEST_CASE("iv step without order variation fails loudly") {
    const auto records = ingest_text(
        "P1,r,Alice,30,1,,\nP1,r,Bob,70,2,,\n"
        "P2,r,Alice,60,1,,\nP2,r,Bob,40,2,,\n");
    binary::FigureOptions options;
    options.use_iv = true;
    CHECK_THROWS_AS(figure_pipeline(summarize(records, "r"), options), InvalidInput);
}
