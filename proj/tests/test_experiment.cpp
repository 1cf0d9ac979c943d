#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polariton/errors.hpp"
#include "polariton/experiment.hpp"
#include "test_helpers.hpp"

using namespace polariton;
using namespace polariton::test;

namespace {

ObservableSeries tiny_series() {
  ObservableSeries s;
  s.site_count = 2;
  s.times = {0.0};
  s.omega_l = {7.8e10};
  s.kappa = {kKappaStart};
  s.J = {kJStart};
  s.gamma = {19730.82536079131};
  s.mean_n = {{1.0, 0.3333333333333333}};
  s.fluctuation = {{0.0, 0.2222222222222222}};
  s.trace = {1.0};
  s.purity = {0.9999999999999998};
  return s;
}

ExperimentConfig quick_ramp_config() {
  ExperimentConfig cfg = default_config();
  cfg.kind = ExperimentKind::kRamp;
  cfg.rtol = 1e-6;
  cfg.samples = 12;
  return cfg;
}

}  // namespace

TEST_CASE("empty config text reproduces the documented defaults") {
  ExperimentConfig cfg = parse_config("");
  CHECK(cfg.physical.g13 == 2.5e9);
  CHECK(cfg.physical.g24 == 2.5e9);
  CHECK(cfg.physical.n_atoms == 1000);
  CHECK(cfg.physical.delta_cap == -2.0e10);
  CHECK(cfg.physical.two_omega_alpha == 1.1e7);
  CHECK(cfg.physical.gamma_c == 0.4e5);
  CHECK(cfg.physical.gamma3 == 1.6e7);
  CHECK(cfg.physical.gamma4 == 1.6e7);
  CHECK(cfg.omega_l_start == 7.8e10);
  CHECK(cfg.omega_l_end == 1.1e12);
  CHECK(cfg.ramp_duration == 1e-6);
  CHECK(cfg.ramp_shape == RampShape::kExponential);
  CHECK(cfg.graph.site_count == 3);
  CHECK(cfg.graph.edges.size() == 3);
  CHECK(cfg.n_max == 3);
  CHECK(cfg.samples == 200);
  CHECK(cfg.physical.omega_l == cfg.omega_l_start);
}

TEST_CASE("config keys override the defaults") {
  ExperimentConfig cfg = parse_config(
      "# comment line\n"
      "delta_cap = 2.0e10   # sign flipped on purpose\n"
      "omega_l_start = 5e10\n"
      "ramp_shape = linear\n"
      "n_atoms = 50\n"
      "samples = 17\n");
  CHECK(cfg.physical.delta_cap == 2.0e10);
  CHECK(cfg.physical.n_atoms == 50);
  CHECK(cfg.ramp_shape == RampShape::kLinear);
  CHECK(cfg.samples == 17);
  CHECK(cfg.physical.omega_l == 5e10);
  // Flipped detuning passes through and turns the interaction attractive.
  CHECK(effective_parameters(cfg.physical).kappa < 0.0);
}

TEST_CASE("graph shorthand and explicit edge lists") {
  ExperimentConfig cyc = parse_config("graph = cycle:3\n");
  CHECK(cyc.graph.site_count == 3);
  REQUIRE(cyc.graph.edges.size() == 3);
  CHECK(cyc.graph.edges[0] == std::pair<int, int>{0, 1});
  CHECK(cyc.graph.edges[1] == std::pair<int, int>{1, 2});
  CHECK(cyc.graph.edges[2] == std::pair<int, int>{2, 0});

  ExperimentConfig chain = parse_config("graph = sites:4; 0-1, 1-2, 2-3\n");
  CHECK(chain.graph.site_count == 4);
  CHECK(chain.graph.edges.size() == 3);

  ExperimentConfig isolated = parse_config("graph = sites:2\n");
  CHECK(isolated.graph.edges.empty());
}

TEST_CASE("config errors carry line numbers") {
  try {
    parse_config("g13 = 1e9\nfrobnicate = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(err.line() == 2);
    CHECK(std::string(err.what()).find("unknown key") != std::string::npos);
  }
  try {
    parse_config("\n\ng24 = twelve\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(err.line() == 3);
    CHECK(std::string(err.what()).find("unparsable") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("g13\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("g13 =\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("= 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n_atoms = 3.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("graph = ring:3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("graph = sites:2; 0-0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("ramp_shape = smooth\n"), ConfigError);
}

TEST_CASE("presets") {
  ExperimentConfig tor = preset_config("toroidal-2005");
  EffectiveParams e = effective_parameters(tor.physical);
  CHECK(e.kappa / e.Gamma == doctest::Approx(3958.8231717204467).epsilon(1e-12));

  ExperimentConfig pbg = preset_config("pbg");
  EffectiveParams ep = effective_parameters(pbg.physical);
  CHECK(ep.kappa == doctest::Approx(e.kappa).epsilon(1e-14));  // same atomic set
  CHECK(ep.kappa / ep.Gamma == doctest::Approx(5.2).epsilon(1e-12));

  CHECK_THROWS_AS((void)preset_config("garnet"), std::invalid_argument);
}

TEST_CASE("csv serialization is exact under round-trip parsing") {
  ObservableSeries s = tiny_series();
  std::ostringstream out;
  write_series_csv(s, out);
  const std::string text = out.str();

  std::istringstream in(text);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,omega_l,kappa,j,gamma,n_1,n_2,f_1,f_2,trace,purity");

  std::string row;
  std::getline(in, row);
  std::vector<double> values;
  std::istringstream fields(row);
  std::string field;
  while (std::getline(fields, field, ',')) values.push_back(std::strtod(field.c_str(), nullptr));
  REQUIRE(values.size() == 11);
  CHECK(values[0] == 0.0);
  CHECK(values[1] == 7.8e10);
  CHECK(values[2] == kKappaStart);   // bit-for-bit
  CHECK(values[3] == kJStart);
  CHECK(values[5] == 1.0);
  CHECK(values[6] == 0.3333333333333333);
  CHECK(values[8] == 0.2222222222222222);
  CHECK(values[10] == 0.9999999999999998);

  std::getline(in, row);
  CHECK(in.eof());  // one sample, exactly two lines
}

TEST_CASE("json output mirrors the csv record names") {
  ObservableSeries s = tiny_series();
  std::ostringstream out;
  write_series_json(s, out);
  const nlohmann::json doc = nlohmann::json::parse(out.str());
  for (const char* key : {"t", "omega_l", "kappa", "j", "gamma", "n_1", "n_2", "f_1", "f_2",
                          "trace", "purity"}) {
    CHECK(doc.contains(key));
  }
  CHECK(doc["kappa"][0].get<double>() == kKappaStart);
  CHECK(doc["n_2"][0].get<double>() == 0.3333333333333333);
  CHECK(doc["purity"][0].get<double>() == 0.9999999999999998);
}

TEST_CASE("params experiment reports the headline numbers") {
  ExperimentConfig cfg = default_config();
  cfg.kind = ExperimentKind::kParams;
  std::ostringstream out, log;
  CHECK(run_experiment(cfg, out, log) == 0);
  const std::string report = out.str();
  CHECK(report.find("kappa               = 78110848.6354701") != std::string::npos);
  CHECK(report.find("J                   = 5425976.9742176095") != std::string::npos);
  CHECK(report.find("kappa/Gamma         = 3958.823171720448") != std::string::npos);
  CHECK(report.find("-> pass") != std::string::npos);
}

TEST_CASE("params experiment flags validity failures and gates strictly") {
  ExperimentConfig cfg = default_config();
  cfg.kind = ExperimentKind::kParams;
  cfg = parse_config("delta_cap = -2e13\n", cfg);
  std::ostringstream out, log;
  CHECK(run_experiment(cfg, out, log) == 0);  // warn-only by default
  CHECK(out.str().find("-> FAIL") != std::string::npos);
  CHECK(log.str().find("validity gate failed") != std::string::npos);

  cfg.strict_validity = true;
  std::ostringstream out2, log2;
  CHECK(run_experiment(cfg, out2, log2) == 2);
}

TEST_CASE("ramp experiment emits one row per sample and is deterministic") {
  ExperimentConfig cfg = quick_ramp_config();
  std::ostringstream first_run, second_run, log;
  CHECK(run_experiment(cfg, first_run, log) == 0);
  CHECK(run_experiment(cfg, second_run, log) == 0);
  CHECK(first_run.str() == second_run.str());

  int lines = 0;
  std::istringstream in(first_run.str());
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == cfg.samples + 1);  // header + rows

  // Every emitted row keeps unit trace and physical purity.
  std::istringstream again(first_run.str());
  std::getline(again, line);  // header
  while (std::getline(again, line)) {
    const auto last_comma = line.rfind(',');
    const auto prev_comma = line.rfind(',', last_comma - 1);
    const double trace = std::strtod(line.c_str() + prev_comma + 1, nullptr);
    const double purity = std::strtod(line.c_str() + last_comma + 1, nullptr);
    CHECK(trace > 1.0 - 1e-6);
    CHECK(trace < 1.0 + 1e-6);
    CHECK(purity <= 1.0 + 1e-10);
  }
}

TEST_CASE("ramp experiment in json format") {
  ExperimentConfig cfg = quick_ramp_config();
  cfg.format = "json";
  std::ostringstream out, log;
  CHECK(run_experiment(cfg, out, log) == 0);
  const nlohmann::json doc = nlohmann::json::parse(out.str());
  CHECK(doc["t"].size() == 12);
  CHECK(doc["n_3"].size() == 12);
}

TEST_CASE("ground scan emits the fluctuation staircase") {
  ExperimentConfig cfg = default_config();
  cfg.kind = ExperimentKind::kGroundScan;
  cfg.samples = 9;
  std::ostringstream out, log;
  CHECK(run_experiment(cfg, out, log) == 0);

  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "j_over_kappa,f_1,n_1");
  double prev_ratio = -1.0, prev_f = -1.0;
  int rows = 0;
  while (std::getline(in, line)) {
    double ratio = 0.0, f = 0.0, n = 0.0;
    CHECK(std::sscanf(line.c_str(), "%lf,%lf,%lf", &ratio, &f, &n) == 3);
    CHECK(ratio > prev_ratio);  // drive ramps up, hopping over repulsion grows
    CHECK(f > prev_f);          // and the on-site fluctuations with it
    CHECK(n == doctest::Approx(1.0).epsilon(1e-9));
    prev_ratio = ratio;
    prev_f = f;
    ++rows;
  }
  CHECK(rows == 9);
}

TEST_CASE("ground scan respects the thread cap env var") {
  ExperimentConfig cfg = default_config();
  cfg.kind = ExperimentKind::kGroundScan;
  cfg.samples = 7;

  std::ostringstream parallel, log;
  CHECK(run_experiment(cfg, parallel, log) == 0);

  setenv("POLARITON_BH_THREADS", "1", 1);
  std::ostringstream serial;
  CHECK(run_experiment(cfg, serial, log) == 0);
  unsetenv("POLARITON_BH_THREADS");
  CHECK(parallel.str() == serial.str());
}

TEST_CASE("validate-micro experiment reports agreement") {
  ExperimentConfig cfg = default_config();
  cfg.kind = ExperimentKind::kValidateMicro;
  std::ostringstream out, log;
  CHECK(run_experiment(cfg, out, log) == 0);
  const std::string report = out.str();
  CHECK(report.find("agreement within 10%: yes") != std::string::npos);
  CHECK(report.find("dark-branch overlap") != std::string::npos);
}

TEST_CASE("experiment kind parsing") {
  CHECK(experiment_kind_from_string("params") == ExperimentKind::kParams);
  CHECK(experiment_kind_from_string("ground-scan") == ExperimentKind::kGroundScan);
  CHECK(experiment_kind_from_string("ramp") == ExperimentKind::kRamp);
  CHECK(experiment_kind_from_string("validate-micro") == ExperimentKind::kValidateMicro);
  CHECK_THROWS_AS((void)experiment_kind_from_string("teleport"), std::invalid_argument);
}
