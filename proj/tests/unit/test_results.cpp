// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "beamsynth/errors.hpp"
#include "beamsynth/results.hpp"

using namespace beamsynth;
using namespace beamsynth::scenario;

namespace {

ResultsTable sample_table() {
  ResultRow a;
  a.scenario = "s1";
  a.lat_deg = 39.3;
  a.lon_deg = -5.3;
  a.bw_az_deg = 0.897123456;
  a.bw_el_deg = 0.9012;
  a.sll_db = 17.319;
  a.eirp_dbw = 62.204;
  a.active_chains = 484;
  a.active_elements = 7744;
  a.cost = 0.0123;
  a.generations = 150;
  ResultRow b = a;
  b.scenario = "s2";
  b.sll_db = std::numeric_limits<double>::infinity();
  b.wall_s = 12.5;
  b.status = BeamStatus::sll_below_min;
  ResultRow c;
  c.scenario = "s3";
  c.lat_deg = 85.0;
  c.lon_deg = 13.0;
  c.status = BeamStatus::error;
  return {a, b, c};
}

}  // namespace

TEST_CASE("results CSV layout") {
  const std::string csv = results_to_csv(sample_table());
  CHECK(csv.rfind("scenario,lat_deg,lon_deg,bw_az_deg,bw_el_deg,sll_db,eirp_dbw,active_chains,"
                  "active_elements,cost,generations,wall_s,status\n",
                  0) == 0);
  CHECK(csv.find("s1,39.300000000,-5.300000000,0.897123456,") != std::string::npos);
  CHECK(csv.find(",inf,") != std::string::npos);
  CHECK(csv.find("s3,85.000000000,13.000000000,,,,,,,,,,error\n") != std::string::npos);
}

TEST_CASE("results CSV round trip") {
  const ResultsTable table = sample_table();
  const ResultsTable back = results_from_csv(results_to_csv(table));
  REQUIRE(back.size() == table.size());
  CHECK(results_to_csv(back) == results_to_csv(table));
  CHECK(back[0].bw_az_deg == table[0].bw_az_deg);
  CHECK(std::isinf(back[1].sll_db));
  CHECK(back[1].wall_s.has_value());
  CHECK(back[1].status == BeamStatus::sll_below_min);
  CHECK(back[2].status == BeamStatus::error);
}

TEST_CASE("malformed results are rejected") {
  CHECK_THROWS_AS(results_from_csv("nope\n"), ParseError);
  CHECK_THROWS_AS(results_from_csv(""), ParseError);
  std::string csv = results_to_csv(sample_table());
  csv.replace(csv.find("484"), 3, "4x4");
  CHECK_THROWS_AS(results_from_csv(csv), ParseError);
}

TEST_CASE("markdown report") {
  const std::string md = report(sample_table(), ReportFormat::markdown);
  CHECK(md.rfind("| Scenario | lat,lon | θ−3dB (°) | SLL (dB) | EIRP (dBW) | Active |\n", 0) == 0);
  CHECK(md.find("| s1 | 39.3,-5.3 | 0.901 | 17.319 | 62.204 | 484 |") != std::string::npos);
  CHECK(md.find("| s3 | 85,13 | error |") != std::string::npos);
}

TEST_CASE("empty tables render headers only") {
  const std::string md = report({}, ReportFormat::markdown);
  CHECK(std::count(md.begin(), md.end(), '\n') == 2);
  const std::string csv = report({}, ReportFormat::csv);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
  CHECK(results_from_csv(csv).empty());
}
