#include <doctest.h>

#include <set>
#include <sstream>

#include "crowdflow/catalog.hpp"
#include "crowdflow/csv.hpp"
#include "crowdflow/scenario.hpp"
#include "crowdflow/summary.hpp"
#include "crowdflow/svg.hpp"

using namespace crowdflow;
using namespace crowdflow::io;

TEST_CASE("config parsing: defaults, validation, errors") {
  const Scenario s = parse_config(
      "system.a_exp = -1.5\n"
      "system.rho_bar = 5\n"
      "initial.left_rho = 3\ninitial.left_u = -3\n"
      "initial.right_rho = 2\ninitial.right_u = -5\n");
  CHECK(s.params.a_exp == -1.5);
  CHECK(s.cfl == 0.45);
  CHECK(s.dx == 1.0);
  CHECK(s.blocks == 20);
  CHECK(s.params.source.is_zero());
  CHECK(s.outputs.count(OutputKind::Profiles) == 1);

  CHECK_THROWS_AS(parse_config(""), ParseError);
  CHECK_THROWS_AS(parse_config("   \n# only a comment\n"), ParseError);
  CHECK_THROWS_AS(parse_config("system.a_exp -1.5\n"), ParseError);
  CHECK_THROWS_AS(parse_config("nonsense.key = 3\n"), ParseError);
  CHECK_THROWS_AS(parse_config("system.a_exp = -1.5\nrun.cfl = 0.9\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("system.a_exp = 0\n"), ValidationError);

  const Scenario pieces = parse_config(
      "system.a_exp = -0.5\nsource.pieces = 0:0.1, 10:-0.2\n");
  CHECK(pieces.params.source.pieces.size() == 2);
  CHECK(pieces.params.integral(15.0) == doctest::Approx(0.0));
}

TEST_CASE("config round trip over the whole catalog") {
  for (const Scenario& s : catalog()) {
    const Scenario back = parse_config(render_config(s));
    CHECK(back == s);
  }
}

TEST_CASE("catalog: captioned panels present with the captioned states") {
  const auto entries = catalog();
  CHECK(entries.size() >= 30);

  const auto case04 = find_scenario("case04_region_IV");
  REQUIRE(case04.has_value());
  CHECK(case04->right == State{9.0, -8.0});
  CHECK(case04->params.a_exp == -1.5);
  CHECK(case04->params.source.is_zero());

  const auto case22 = find_scenario("case22_region_VI");
  REQUIRE(case22.has_value());
  CHECK(case22->right == State{4.0, -4.0});
  CHECK(case22->params.a_exp == 0.5);

  const auto case01 = find_scenario("case01_region_Ia");
  REQUIRE(case01.has_value());
  CHECK(case01->left == State{3.0, -3.0});
  CHECK(case01->right == State{2.0, -5.0});
  CHECK(case01->params.rho_bar == 5.0);

  CHECK(find_scenario("case18_scan").has_value());
  CHECK(find_scenario("case18_scan")->scan_times == std::vector<double>{0, 3, 6, 9});
  CHECK_FALSE(find_scenario("no_such_case").has_value());

  // Names are unique.
  std::set<std::string> names;
  for (const auto& e : entries) names.insert(e.name);
  CHECK(names.size() == entries.size());
}

TEST_CASE("csv emission is deterministic and re-parses") {
  delta::DeltaTrajectory traj;
  traj.times = {0.0, 0.5, 1.0};
  traj.x = {0.0, -2.1, -4.2};
  traj.zeta = {0.0, 3.25, 6.5};
  traj.eta = {-4.2, -4.2, -4.2};
  std::ostringstream a, b;
  write_trajectory_csv(a, traj);
  write_trajectory_csv(b, traj);
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, 15) == "t,x,zeta,eta\n0,");

  solver::Snapshot snap;
  snap.t = 2.0;
  snap.x = {-1.0, 0.0, 1.0};
  snap.rho = {3.0, 2.5, 2.0};
  snap.u_tilde = {-3.0, -4.0, -5.0};
  snap.u_phys = {-3.0, -4.0, -5.0};
  std::ostringstream profiles;
  write_profiles_csv(profiles, {snap});
  std::istringstream read_back(profiles.str());
  const auto rows = parse_profiles_csv(read_back);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].rho == 2.5);
  CHECK(rows[2].xt == doctest::Approx(0.5));

  // Re-parsing and re-rendering the SVG is byte-identical.
  const auto to_svg = [](const std::vector<ProfileRow>& rows) {
    svg::Axis axis;
    axis.x_label = "x/t";
    axis.y_label = "rho";
    svg::Series series;
    for (const auto& r : rows) series.points.push_back({r.xt, r.rho});
    axis.series.push_back(series);
    return svg::render({axis});
  };
  const std::string svg1 = to_svg(rows);
  std::istringstream read_again(profiles.str());
  const std::string svg2 = to_svg(parse_profiles_csv(read_again));
  CHECK(svg1 == svg2);
  CHECK(svg1.find("<svg") != std::string::npos);
  CHECK(svg1.find("viewBox=\"0 0 800 600\"") != std::string::npos);
}

TEST_CASE("run summary serializes the sequence comparison") {
  RunSummary summary;
  summary.scenario = "case01_region_Ia";
  summary.case_index = 1;
  summary.region_label = "I_a";
  summary.analytic_sequence = {"Sa", "C0"};
  summary.extracted_sequence = {"Sa", "C0"};
  summary.sequences_agree = true;
  summary.middle_states = {{1.5276, -3.0}};
  const std::string json = to_json(summary);
  CHECK(json.find("\"region\": \"I_a\"") != std::string::npos);
  CHECK(json.find("\"sequences_agree\": true") != std::string::npos);

  CHECK(wave_token(classify::WaveType::Vertical_C0) == "C0");
  CHECK(wave_token(solver::SegmentKind::DeltaCandidate) == "D");
}
