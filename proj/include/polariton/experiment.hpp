#ifndef POLARITON_EXPERIMENT_HPP
#define POLARITON_EXPERIMENT_HPP

#include <iosfwd>
#include <string>
#include <string_view>

#include "polariton/fock_space.hpp"
#include "polariton/open_dynamics.hpp"
#include "polariton/polariton_params.hpp"

namespace polariton {

enum class ExperimentKind { kParams, kGroundScan, kRamp, kValidateMicro };

ExperimentKind experiment_kind_from_string(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kParams;
  PhysicalParams physical;  ///< omega_l is the ramp start value
  double omega_l_start = 0.0;
  double omega_l_end = 0.0;
  double ramp_duration = 0.0;
  RampShape ramp_shape = RampShape::kExponential;
  CavityGraph graph;
  int n_max = 0;  ///< basis truncation (total occupation)
  double rtol = 1e-8;
  int samples = 200;
  int max_polaritons = 2;  ///< occupancy scale used by the validity gate
  double validity_threshold = 0.25;
  bool strict_validity = false;
  std::string out_path;  ///< empty: stdout
  std::string format = "csv";

  RampSchedule ramp() const;
};

/// Baked-in parameter sets. "toroidal-2005" is the fiber-coupled toroidal
/// microcavity set; "pbg" differs only in the cavity decay rate, chosen so
/// the on-site repulsion to loss ratio comes out at the photonic-band-gap
/// value of 5.2.
ExperimentConfig preset_config(std::string_view name);
ExperimentConfig default_config();  ///< toroidal-2005

/// Parses line-oriented `key = value` text with `#` comments on top of the
/// given base configuration. Unknown keys, malformed lines and unparsable
/// numbers raise ConfigError with the 1-based line number.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = default_config());
ExperimentConfig parse_config_file(const std::string& path,
                                   ExperimentConfig base = default_config());

void write_series_csv(const ObservableSeries& series, std::ostream& out);
void write_series_json(const ObservableSeries& series, std::ostream& out);

/// Runs the configured experiment, writing data to `data_out` and
/// diagnostics to `log_out`. Returns 0 on success, 2 when the validity gate
/// fails in strict mode.
int run_experiment(const ExperimentConfig& config, std::ostream& data_out,
                   std::ostream& log_out);

/// Same, writing to config.out_path (stdout when empty) and std::cerr.
int run_experiment(const ExperimentConfig& config);

/// Shortest round-trip decimal form of a double, used for all emitted data.
std::string format_double(double value);

}  // namespace polariton

#endif
