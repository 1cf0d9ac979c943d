// Command-line front end for the polariton lattice simulator.
//
//   polariton_bh <params|ground-scan|ramp|validate-micro>
//                [--config PATH] [--out PATH] [--format csv|json]
//                [--preset toroidal-2005|pbg] [--strict-validity]

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "polariton/errors.hpp"
#include "polariton/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Driven atom-cavity array as an effective polariton lattice"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::string preset = "toroidal-2005";
  bool strict_validity = false;

  for (const char* kind : {"params", "ground-scan", "ramp", "validate-micro"}) {
    CLI::App* sub = app.add_subcommand(kind);
    sub->add_option("--config", config_path, "experiment config file (key = value lines)");
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--preset", preset, "parameter preset")
        ->check(CLI::IsMember({"toroidal-2005", "pbg"}));
    sub->add_flag("--strict-validity", strict_validity,
                  "exit with status 2 when the validity gate fails");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    polariton::ExperimentConfig cfg = polariton::preset_config(preset);
    if (!config_path.empty()) {
      cfg = polariton::parse_config_file(config_path, std::move(cfg));
    }
    cfg.kind = polariton::experiment_kind_from_string(app.get_subcommands().front()->get_name());
    cfg.out_path = out_path;
    cfg.format = format;
    cfg.strict_validity = strict_validity;
    return polariton::run_experiment(cfg);
  } catch (const polariton::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
