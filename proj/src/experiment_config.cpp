#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "polariton/errors.hpp"
#include "polariton/experiment.hpp"

namespace polariton {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view value, int line) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("unparsable number '" + std::string(value) + "'", line);
  }
  return out;
}

int parse_int(std::string_view value, int line) {
  int out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("unparsable integer '" + std::string(value) + "'", line);
  }
  return out;
}

RampShape parse_shape(std::string_view value, int line) {
  if (value == "linear") return RampShape::kLinear;
  if (value == "exponential") return RampShape::kExponential;
  throw ConfigError("ramp_shape must be 'linear' or 'exponential'", line);
}

// "cycle:M" or "sites:M" optionally followed by ";i-j,k-l,..." edges.
CavityGraph parse_graph(std::string_view value, int line) {
  CavityGraph g;
  const auto semi = value.find(';');
  const std::string_view head = trim(value.substr(0, semi));
  const auto colon = head.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("graph must be 'cycle:M' or 'sites:M[;i-j,...]'", line);
  }
  const std::string_view word = trim(head.substr(0, colon));
  const int count = parse_int(trim(head.substr(colon + 1)), line);
  if (word == "cycle") {
    if (semi != std::string_view::npos) {
      throw ConfigError("cycle graph takes no edge list", line);
    }
    return CavityGraph::cycle(count);
  }
  if (word != "sites") {
    throw ConfigError("graph must be 'cycle:M' or 'sites:M[;i-j,...]'", line);
  }
  g.site_count = count;
  std::string_view edges = semi == std::string_view::npos ? "" : value.substr(semi + 1);
  while (!edges.empty()) {
    const auto comma = edges.find(',');
    std::string_view item = trim(edges.substr(0, comma));
    edges = comma == std::string_view::npos ? "" : edges.substr(comma + 1);
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      throw ConfigError("edge must be 'i-j'", line);
    }
    g.edges.push_back({parse_int(trim(item.substr(0, dash)), line),
                       parse_int(trim(item.substr(dash + 1)), line)});
  }
  try {
    g.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what(), line);
  }
  return g;
}

void apply_key(ExperimentConfig& cfg, std::string_view key, std::string_view value, int line) {
  if (key == "g13") {
    cfg.physical.g13 = parse_double(value, line);
  } else if (key == "g24") {
    cfg.physical.g24 = parse_double(value, line);
  } else if (key == "omega_l_start") {
    cfg.omega_l_start = parse_double(value, line);
  } else if (key == "omega_l_end") {
    cfg.omega_l_end = parse_double(value, line);
  } else if (key == "ramp_duration") {
    cfg.ramp_duration = parse_double(value, line);
  } else if (key == "ramp_shape") {
    cfg.ramp_shape = parse_shape(value, line);
  } else if (key == "delta_cap") {
    cfg.physical.delta_cap = parse_double(value, line);
  } else if (key == "delta_small") {
    cfg.physical.delta_small = parse_double(value, line);
  } else if (key == "epsilon") {
    cfg.physical.epsilon = parse_double(value, line);
  } else if (key == "n_atoms") {
    cfg.physical.n_atoms = parse_int(value, line);
  } else if (key == "gamma_c") {
    cfg.physical.gamma_c = parse_double(value, line);
  } else if (key == "gamma3") {
    cfg.physical.gamma3 = parse_double(value, line);
  } else if (key == "gamma4") {
    cfg.physical.gamma4 = parse_double(value, line);
  } else if (key == "two_omega_alpha") {
    cfg.physical.two_omega_alpha = parse_double(value, line);
  } else if (key == "graph") {
    cfg.graph = parse_graph(value, line);
  } else if (key == "n_max") {
    cfg.n_max = parse_int(value, line);
  } else if (key == "rtol") {
    cfg.rtol = parse_double(value, line);
  } else if (key == "samples") {
    cfg.samples = parse_int(value, line);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'", line);
  }
}

}  // namespace

ExperimentKind experiment_kind_from_string(std::string_view name) {
  if (name == "params") return ExperimentKind::kParams;
  if (name == "ground-scan") return ExperimentKind::kGroundScan;
  if (name == "ramp") return ExperimentKind::kRamp;
  if (name == "validate-micro") return ExperimentKind::kValidateMicro;
  throw std::invalid_argument("unknown experiment kind '" + std::string(name) + "'");
}

RampSchedule ExperimentConfig::ramp() const {
  return RampSchedule(omega_l_start, omega_l_end, ramp_duration, ramp_shape);
}

ExperimentConfig preset_config(std::string_view name) {
  if (name != "toroidal-2005" && name != "pbg") {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }
  ExperimentConfig cfg;
  cfg.physical.g13 = 2.5e9;
  cfg.physical.g24 = 2.5e9;
  cfg.physical.n_atoms = 1000;
  cfg.physical.delta_cap = -2.0e10;
  // The 3 and 4 level detunings are free knobs of the driving scheme. A
  // small delta keeps the dark branch spectrally isolated from the
  // degenerate bright-pair combination at finite interaction strength;
  // it leaves kappa, J and Gamma untouched.
  cfg.physical.delta_small = -2.5e9;
  cfg.physical.epsilon = 0.0;
  cfg.physical.two_omega_alpha = 1.1e7;
  cfg.physical.gamma_c = 0.4e5;
  cfg.physical.gamma3 = 1.6e7;
  cfg.physical.gamma4 = 1.6e7;
  cfg.omega_l_start = 7.8e10;
  cfg.omega_l_end = 1.1e12;
  cfg.physical.omega_l = cfg.omega_l_start;
  cfg.ramp_duration = 1e-6;
  cfg.ramp_shape = RampShape::kExponential;
  cfg.graph = CavityGraph::cycle(3);
  cfg.n_max = 3;
  cfg.rtol = 1e-8;
  cfg.samples = 200;
  if (name == "pbg") {
    // Band-gap cavities: same atomic set, lossier cavity. Chosen to put
    // kappa/Gamma at 5.2 for the starting drive.
    cfg.physical.gamma_c = 30452485.93631113;
  }
  return cfg;
}

ExperimentConfig default_config() { return preset_config("toroidal-2005"); }

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  ExperimentConfig cfg = std::move(base);
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'key = value'", line_no);
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (value.empty()) {
      throw ConfigError("missing value for key '" + std::string(key) + "'", line_no);
    }
    apply_key(cfg, key, value, line_no);
  }
  cfg.physical.omega_l = cfg.omega_l_start;
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), std::move(base));
}

}  // namespace polariton
