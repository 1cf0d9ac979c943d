#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <ostream>
#include <thread>
#include <vector>

#include "polariton/bh_model.hpp"
#include "polariton/errors.hpp"
#include "polariton/experiment.hpp"
#include "polariton/microscopic_validation.hpp"

namespace polariton {

namespace {

int scan_thread_count(int points) {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* env = std::getenv("POLARITON_BH_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) threads = std::min(threads, cap);
  }
  return std::min(threads, points);
}

void report_params(const ExperimentConfig& cfg, const ValidityReport& gate, std::ostream& out) {
  const EffectiveParams e = effective_parameters(cfg.physical);
  out << "drive omega_l       = " << format_double(cfg.physical.omega_l) << " 1/s\n";
  out << "collective g        = " << format_double(e.g) << " 1/s\n";
  out << "B                   = " << format_double(e.B) << " 1/s\n";
  out << "A                   = " << format_double(e.A) << " 1/s\n";
  out << "mu_plus             = " << format_double(e.mu_plus) << " 1/s\n";
  out << "mu_minus            = " << format_double(e.mu_minus) << " 1/s\n";
  out << "kappa               = " << format_double(e.kappa) << " 1/s\n";
  out << "J                   = " << format_double(e.J) << " 1/s\n";
  out << "Gamma               = " << format_double(e.Gamma) << " 1/s\n";
  out << "kappa/Gamma         = " << format_double(e.Gamma > 0 ? e.kappa / e.Gamma : 0.0)
      << "\n";
  out << "chemical shift      = " << format_double(e.chem_shift) << " 1/s\n";
  out << "dark atomic amp     = " << format_double(e.dark_atomic_amp) << "\n";
  out << "dark photonic amp   = " << format_double(e.dark_photonic_amp) << "\n";
  const RampSchedule ramp = cfg.ramp();
  out << "adiabatic margin    = "
      << format_double(adiabatic_margin(cfg.physical, ramp.slope_at(0.0))) << "\n";
  out << "validity            : " << gate.summary() << "\n";
}

void run_ground_scan(const ExperimentConfig& cfg, std::ostream& out) {
  const FockBasis basis(cfg.graph.site_count, cfg.n_max);
  const int filling = cfg.graph.site_count;  // one polariton per cavity
  if (filling > cfg.n_max) {
    throw std::invalid_argument("ground-scan: n_max below unit filling");
  }
  const int points = cfg.samples;
  if (points < 2) throw std::invalid_argument("ground-scan: need at least 2 samples");

  struct Row {
    double j_over_kappa, f_1, n_1;
  };
  std::vector<Row> rows(static_cast<size_t>(points));
  const double log_start = std::log(cfg.omega_l_start);
  const double log_end = std::log(cfg.omega_l_end);

  auto worker = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const double omega =
          std::exp(log_start + (log_end - log_start) * i / (points - 1.0));
      const EffectiveParams e = effective_parameters(cfg.physical.with_drive(omega));
      const SparseOperator h =
          build_bh_hamiltonian(basis, cfg.graph, {e.kappa, e.J, e.chem_shift});
      const GroundState gs = ground_state(h, basis, filling);
      const SiteStatistics stats = site_statistics(gs.vector, basis, 0);
      rows[static_cast<size_t>(i)] = {e.kappa != 0.0 ? e.J / e.kappa : 0.0, stats.fluctuation,
                                      stats.mean_n};
    }
  };

  const int threads = scan_thread_count(points);
  if (threads <= 1) {
    worker(0, points);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (points + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(points, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  out << "j_over_kappa,f_1,n_1\n";
  for (const Row& r : rows) {
    out << format_double(r.j_over_kappa) << ',' << format_double(r.f_1) << ','
        << format_double(r.n_1) << '\n';
  }
}

void run_ramp(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  const FockBasis basis(cfg.graph.site_count, cfg.n_max);
  std::vector<int> occ(static_cast<size_t>(cfg.graph.site_count), 1);
  const Eigen::MatrixXcd rho0 = initial_mott_state(basis, occ);
  IntegratorSettings settings;
  settings.rtol = cfg.rtol;
  settings.samples = cfg.samples;
  const ObservableSeries series =
      evolve(rho0, cfg.physical, cfg.ramp(), cfg.graph, basis, settings);
  for (const auto& w : series.warnings) log << "warning: " << w << "\n";
  if (cfg.format == "json") {
    write_series_json(series, out);
  } else {
    write_series_csv(series, out);
  }
}

void run_validate_micro(const ExperimentConfig& cfg, std::ostream& out) {
  const KappaShiftResult r = extract_kappa_shift(cfg.physical, cfg.max_polaritons);
  out << "polaritons          = " << cfg.max_polaritons << "\n";
  out << "measured shift      = " << format_double(r.measured_shift) << " 1/s\n";
  out << "predicted shift     = " << format_double(r.predicted_shift) << " 1/s\n";
  out << "relative error      = " << format_double(r.relative_error) << "\n";
  out << "dark-branch overlap = " << format_double(r.overlap) << "\n";
  out << "agreement within 10%: " << (r.relative_error <= 0.10 ? "yes" : "NO") << "\n";
}

}  // namespace

int run_experiment(const ExperimentConfig& config, std::ostream& data_out,
                   std::ostream& log_out) {
  const ValidityReport gate =
      validity_report(config.physical, config.max_polaritons, config.validity_threshold);
  if (!gate.pass()) {
    log_out << "warning: validity gate failed: " << gate.summary() << "\n";
    if (config.strict_validity && config.kind != ExperimentKind::kParams) return 2;
  }
  switch (config.kind) {
    case ExperimentKind::kParams:
      report_params(config, gate, data_out);
      return !gate.pass() && config.strict_validity ? 2 : 0;
    case ExperimentKind::kGroundScan:
      run_ground_scan(config, data_out);
      return 0;
    case ExperimentKind::kRamp:
      run_ramp(config, data_out, log_out);
      return 0;
    case ExperimentKind::kValidateMicro:
      run_validate_micro(config, data_out);
      return 0;
  }
  return 1;
}

int run_experiment(const ExperimentConfig& config) {
  if (config.out_path.empty()) {
    return run_experiment(config, std::cout, std::cerr);
  }
  std::ofstream out(config.out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << config.out_path << "'\n";
    return 1;
  }
  const int status = run_experiment(config, out, std::cerr);
  out.flush();
  if (!out) {
    std::cerr << "error: failed writing '" << config.out_path << "'\n";
    return 1;
  }
  return status;
}

}  // namespace polariton
