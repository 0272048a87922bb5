#include <doctest.h>

#include <cmath>

#include "qaction/scenario.hpp"

using namespace qaction;
using nlohmann::json;

namespace {

json small_pulse_signal() {
  return json{{"grid", {{"t_start", -0.1}, {"dt", 0.005}, {"n", 700}}},
              {"kind", "square"},
              {"amplitude", 0.5},
              {"t_on", 0.0},
              {"t_off", M_PI}};
}

}  // namespace

TEST_CASE("scenario parsing: kinds, names and validation errors") {
  CHECK_THROWS_AS(parse_scenarios(json{{"kind", "unknown"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenarios(json::array({json{{"name", "x"}}})), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenarios(json(3)), std::invalid_argument);

  json doc = json::array();
  doc.push_back(json{{"kind", "algebra"}});
  doc.push_back(json{{"kind", "algebra"}, {"name", "second"}});
  const auto scenarios = parse_scenarios(doc);
  REQUIRE(scenarios.size() == 2);
  CHECK(scenarios[0].name == "algebra");
  CHECK(scenarios[1].name == "second");

  json bad_output = json{{"kind", "algebra"}, {"output", {{"format", "xml"}}}};
  CHECK_THROWS_AS(parse_scenarios(bad_output), std::invalid_argument);
}

TEST_CASE("scenario: signal block validation") {
  json spec = small_pulse_signal();
  CHECK(signal_from_json(spec).size() == 700);
  spec["kind"] = "triangle";
  CHECK_THROWS_AS(signal_from_json(spec), std::invalid_argument);
  json missing = {{"grid", {{"t_start", 0.0}, {"dt", 0.01}, {"n", 32}}}, {"kind", "square"}};
  CHECK_THROWS_AS(signal_from_json(missing), std::invalid_argument);
}

TEST_CASE("oscillator scenario produces the poisson table and metrics") {
  Scenario s;
  s.kind = ScenarioKind::oscillator;
  s.name = "osc";
  s.params = json{{"kind", "oscillator"}, {"omega", 1.0}, {"signal", small_pulse_signal()},
                  {"n_max", 16}};
  const auto r = run_scenario(s);
  CHECK(r.metric("gamma_sq") == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.metric("p_0") == doctest::Approx(std::exp(-1.0)).epsilon(1e-4));
  REQUIRE(r.tables.size() == 1);
  CHECK(r.tables[0].rows.size() == 17);
  CHECK(r.artifact.contains("persistence"));
}

TEST_CASE("keldysh scenario emits the value/moment record") {
  Scenario s;
  s.kind = ScenarioKind::keldysh;
  s.name = "cycle";
  s.params = json{{"kind", "keldysh"},
                  {"omega", 1.0},
                  {"signal", small_pulse_signal()},
                  {"displacement_T", 0.0},
                  {"initial", {{"type", "vacuum"}}}};
  const auto r = run_scenario(s);
  CHECK(std::abs(r.metric("value_re") - 1.0) < 1e-10);
  CHECK(std::abs(r.metric("value_im")) < 1e-10);
  CHECK(r.metric("route_mismatch") < 1e-10);
  CHECK(r.artifact.contains("mean_n"));
  CHECK(r.artifact.contains("var_n"));
}

TEST_CASE("checks drive the pass/fail state and tolerance scaling") {
  Scenario s;
  s.kind = ScenarioKind::algebra;
  s.name = "alg";
  s.params = json{{"kind", "algebra"}};
  s.checks.push_back(CheckSpec{"must_fail", "all_pass", 0.0, 0.5});
  auto r = run_scenario(s);
  CHECK_FALSE(r.all_checks_passed);
  // a huge tolerance scale turns the same check green
  auto loose = run_scenario(s, 10.0);
  CHECK(loose.all_checks_passed);
  CHECK_THROWS_AS(r.metric("no_such_metric"), std::invalid_argument);
}

TEST_CASE("scatter and bound-state scenarios run end to end") {
  Scenario sc;
  sc.kind = ScenarioKind::scatter;
  sc.name = "delta";
  sc.params = json{{"kind", "scatter"},
                   {"potential", {{"kind", "delta"}, {"strength", 1.0}}},
                   {"mass", 1.0},
                   {"grid", {{"x_start", -1.0}, {"dx", 0.01}, {"n", 201}}},
                   {"energies", {0.5}}};
  const auto rs = run_scenario(sc);
  CHECK(rs.metric("t_mod_sq_first") == doctest::Approx(0.5).epsilon(1e-9));
  REQUIRE(rs.tables.size() == 1);
  CHECK(rs.tables[0].header.front() == "E");

  Scenario bs;
  bs.kind = ScenarioKind::bound_states;
  bs.name = "delta_well";
  bs.params = json{{"kind", "bound-states"},
                   {"potential", {{"kind", "delta"}, {"strength", -1.0}}},
                   {"mass", 1.0},
                   {"grid", {{"x_start", -30.0}, {"dx", 0.02}, {"n", 3001}}},
                   {"n_states", 2}};
  const auto rb = run_scenario(bs);
  CHECK(rb.metric("n_bound") == 1.0);
  CHECK(rb.metric("E_0") == doctest::Approx(-0.25).epsilon(0.05));
}

TEST_CASE("artifact writing is atomic and deterministic") {
  Scenario s;
  s.kind = ScenarioKind::oscillator;
  s.name = "det";
  s.params = json{{"kind", "oscillator"}, {"omega", 1.0}, {"signal", small_pulse_signal()},
                  {"n_max", 8}};
  s.output_format = "both";
  const auto r1 = run_scenario(s);
  const auto r2 = run_scenario(s);
  CHECK(r1.artifact.dump() == r2.artifact.dump());
  REQUIRE(r1.tables.size() == r2.tables.size());
  CHECK(r1.tables[0].to_string() == r2.tables[0].to_string());

  const auto dir = std::filesystem::temp_directory_path() / "qaction_scenario_test";
  std::filesystem::remove_all(dir);
  const auto written = write_artifacts(r1, dir, s.output_format);
  REQUIRE(written.size() == 2);
  for (const auto& p : written) {
    CHECK(std::filesystem::exists(p));
    CHECK_FALSE(std::filesystem::exists(p.string() + ".tmp"));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("comparison table renders for oracle-compare only") {
  Scenario s;
  s.kind = ScenarioKind::oracle_compare;
  s.name = "cmp";
  json sig = small_pulse_signal();
  sig["grid"] = json{{"t_start", -0.1}, {"dt", 0.01}, {"n", 340}};
  s.params = json{{"kind", "oracle-compare"}, {"omega", 1.0}, {"signal", sig},
                  {"n_trunc", 32}, {"n_compare", 4}};
  const auto r = run_scenario(s);
  const std::string table = comparison_table(r);
  CHECK(table.find("persistence") != std::string::npos);
  CHECK(table.find("leakage") != std::string::npos);

  Scenario alg;
  alg.kind = ScenarioKind::algebra;
  alg.name = "alg";
  alg.params = json{{"kind", "algebra"}};
  const auto ra = run_scenario(alg);
  CHECK_THROWS_AS(comparison_table(ra), std::invalid_argument);
}

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 2.163953413738653, -1e-17, 0.0}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}
