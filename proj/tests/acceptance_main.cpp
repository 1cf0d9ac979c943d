// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Expected values marked "frozen" were computed with
// independent evaluations of the closed forms and an independent
// diagonalization of the symmetric-sector Hamiltonian.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "polariton/bh_model.hpp"
#include "polariton/experiment.hpp"
#include "polariton/microscopic_validation.hpp"
#include "polariton/open_dynamics.hpp"
#include "polariton/polariton_params.hpp"

using namespace polariton;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %d. %-38s %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  if (!pass) ++failures;
}

PhysicalParams toroidal() {
  ExperimentConfig cfg = preset_config("toroidal-2005");
  return cfg.physical;
}

// 1. Effective parameters at both ramp endpoints against the frozen oracle
//    values of the closed forms, to 0.1%.
void criterion_effective_parameters() {
  const double kappa_start_expected = 78110848.63547008;
  const double j_start_expected = 5425976.9742176095;
  const double kappa_end_expected = 1597606.0731212413;
  const double j_end_expected = 10943473.792394655;

  PhysicalParams p = toroidal();
  EffectiveParams start = effective_parameters(p.with_drive(7.8e10));
  EffectiveParams end = effective_parameters(p.with_drive(1.1e12));

  auto close = [](double value, double expected) {
    return std::abs(value - expected) <= 1e-3 * std::abs(expected);
  };
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "kappa %.6e / %.6e, J %.6e / %.6e (start/end)", start.kappa, end.kappa,
                start.J, end.J);
  report(1, "effective-parameter reproduction",
         close(start.kappa, kappa_start_expected) && close(start.J, j_start_expected) &&
             close(end.kappa, kappa_end_expected) && close(end.J, j_end_expected),
         detail);
}

// 2. Along the default ramp kappa decreases, J increases, single crossing.
//    The drive starts marginally below the kappa maximum at Omega_L = g, so
//    the first sampled step may rise by about 2e-4; the check allows 1e-3.
void criterion_regime_crossing() {
  PhysicalParams p = toroidal();
  RampSchedule ramp(7.8e10, 1.1e12, 1e-6, RampShape::kExponential);
  const int samples = 200;
  bool kappa_falls = true, j_rises = true;
  int crossings = 0;
  double prev_kappa = 0.0, prev_j = 0.0;
  for (int i = 0; i < samples; ++i) {
    EffectiveParams e = params_at_time(p, ramp, 1e-6 * i / (samples - 1.0));
    if (i > 0) {
      if (e.kappa > prev_kappa * (1.0 + 1e-3)) kappa_falls = false;
      if (e.J <= prev_j) j_rises = false;
      if ((prev_kappa - prev_j) * (e.kappa - e.J) < 0.0) ++crossings;
    }
    prev_kappa = e.kappa;
    prev_j = e.J;
  }
  const bool overall_drop = prev_kappa < 0.05 * 78110848.63547008;
  char detail[120];
  std::snprintf(detail, sizeof(detail), "crossings=%d, kappa(T)/kappa(0)=%.3f", crossings,
                prev_kappa / 78110848.63547008);
  report(2, "regime crossing along the ramp",
         kappa_falls && j_rises && crossings == 1 && overall_drop, detail);
}

// 3. kappa/Gamma stays three orders of magnitude above one for weak drive.
void criterion_feasibility_ratio() {
  PhysicalParams p = toroidal();
  EffectiveParams weak = effective_parameters(p.with_drive(effective_parameters(p).g / 10.0));
  const double ratio = weak.kappa / weak.Gamma;
  char detail[80];
  std::snprintf(detail, sizeof(detail), "kappa/Gamma = %.1f at Omega_L = g/10", ratio);
  report(3, "feasibility ratio >= 1e3", ratio >= 1e3, detail);
}

// 4. The dissipative three-cavity ramp: occupation stays near unity while
//    on-site fluctuations grow by at least an order of magnitude.
void criterion_ramp_experiment() {
  const auto wall_start = std::chrono::steady_clock::now();
  FockBasis basis(3, 3);
  CavityGraph graph = CavityGraph::cycle(3);
  PhysicalParams p = toroidal();
  RampSchedule ramp(7.8e10, 1.1e12, 1e-6, RampShape::kExponential);
  const std::vector<int> occ{1, 1, 1};
  ObservableSeries series = evolve(initial_mott_state(basis, occ), p, ramp, graph, basis, {});

  double n_min = std::numeric_limits<double>::infinity(), n_max = 0.0;
  for (const auto& row : series.mean_n) {
    n_min = std::min(n_min, row[0]);
    n_max = std::max(n_max, row[0]);
  }
  const double growth =
      series.fluctuation.back()[0] / std::max(series.fluctuation.front()[0], 1e-6);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "n_1 in [%.4f, %.4f], F growth %.2e, trace drift %.1e, %.1fs", n_min, n_max,
                growth, series.max_trace_drift, seconds);
  report(4, "dissipative Mott-to-superfluid ramp",
         n_min >= 0.9 && n_max <= 1.02 && growth >= 10.0 && series.max_trace_drift < 1e-8 &&
             seconds < 60.0,
         detail);
}

// 5. Exact seven-state diagonalization reproduces the two-polariton shift
//    2 kappa within 10%, with monotone convergence toward the bosonic limit
//    (collective coupling held fixed while the atom number grows).
void criterion_microscopic_kappa() {
  PhysicalParams p = toroidal();
  const double g = effective_parameters(p).g;
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  double final_error = 0.0;
  for (int atoms : {10, 100, 1000}) {
    PhysicalParams q = p;
    q.n_atoms = atoms;
    q.g13 = g / std::sqrt(static_cast<double>(atoms));
    KappaShiftResult r = extract_kappa_shift(q, 2);
    if (r.relative_error >= prev) monotone = false;
    prev = r.relative_error;
    final_error = r.relative_error;
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail), "relative error %.4f at N=1000, monotone=%s",
                final_error, monotone ? "yes" : "no");
  report(5, "microscopic kappa validation", final_error < 0.10 && monotone, detail);
}

// 6. One-excitation spectrum of the microscopic Hamiltonian equals
//    {0, mu+, mu-} to 1e-10 of the spectral span.
void criterion_polariton_spectrum() {
  PhysicalParams p = toroidal();
  p.g24 = 0.0;
  double worst = 0.0;
  for (int atoms : {1, 10, 1000}) {
    p.n_atoms = atoms;
    const double g = std::sqrt(static_cast<double>(atoms)) * p.g13;
    for (double delta : {0.0, g / 2.0, -g / 2.0}) {
      p.delta_small = delta;
      EffectiveParams e = effective_parameters(p);
      SymBasis basis(atoms, 1);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_hi(basis, p),
                                                        Eigen::EigenvaluesOnly);
      std::vector<double> expected = {e.mu_plus, e.mu0, e.mu_minus};
      std::sort(expected.begin(), expected.end());
      for (int k = 0; k < 3; ++k) {
        worst = std::max(
            worst, std::abs(es.eigenvalues()[k] - expected[static_cast<size_t>(k)]) / e.A);
      }
    }
  }
  char detail[80];
  std::snprintf(detail, sizeof(detail), "max relative deviation %.2e", worst);
  report(6, "polariton spectrum from exact H", worst <= 1e-10, detail);
}

// 7. Open-system integrity: trace, Hermiticity and positivity on a decay
//    run, and the analytic exponential to 1e-6 relative.
void criterion_open_system_integrity() {
  FockBasis basis(1, 1);
  CavityGraph single;
  single.site_count = 1;
  PhysicalParams p = toroidal();
  p.g24 = 0.0;
  p.two_omega_alpha = 0.0;
  p.omega_l = effective_parameters(p).g;  // Gamma = gamma_c / 2
  const double rate = effective_parameters(p).Gamma;
  RampSchedule flat(p.omega_l, p.omega_l, 3.0 / rate, RampShape::kLinear);
  const std::vector<int> one{1};
  ObservableSeries series = evolve(initial_mott_state(basis, one), p, flat, single, basis, {});

  double worst_rel = 0.0;
  for (size_t i = 0; i < series.times.size(); ++i) {
    const double expected = std::exp(-rate * series.times[i]);
    worst_rel = std::max(worst_rel, std::abs(series.mean_n[i][0] - expected) / expected);
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "decay err %.1e, trace %.1e, herm %.1e, min eig %.1e", worst_rel,
                series.max_trace_drift, series.max_hermiticity_defect,
                series.min_eigenvalue_seen);
  report(7, "open-system integrity",
         worst_rel <= 1e-6 && series.max_trace_drift < 1e-8 &&
             series.max_hermiticity_defect < 1e-9 && series.min_eigenvalue_seen > -1e-8,
         detail);
}

// 8. Ground-state oracles: hand-diagonalized two-site values and the
//    fluctuation staircase on the three-cycle.
void criterion_ground_state_oracles() {
  FockBasis pair_basis(2, 2);
  CavityGraph pair;
  pair.site_count = 2;
  pair.edges = {{0, 1}};
  GroundState hopping_pair =
      ground_state(build_bh_hamiltonian(pair_basis, pair, {0.0, 1.0, 0.0}), pair_basis, 2);
  const double f_pair = site_statistics(hopping_pair.vector, pair_basis, 0).fluctuation;
  const bool two_site_ok = std::abs(hopping_pair.energy - (-2.0)) <= 1e-10 &&
                           std::abs(f_pair - 0.5) <= 1e-10;

  FockBasis tri_basis(3, 3);
  CavityGraph triangle = CavityGraph::cycle(3);
  GroundState mott =
      ground_state(build_bh_hamiltonian(tri_basis, triangle, {1.0, 0.0, 0.0}), tri_basis, 3);
  const double f_mott = site_statistics(mott.vector, tri_basis, 0).fluctuation;

  bool staircase = true;
  double prev = -1.0;
  for (double ratio = 1e-2; ratio < 10.5; ratio *= std::sqrt(10.0)) {
    GroundState gs = ground_state(
        build_bh_hamiltonian(tri_basis, triangle, {1.0, ratio, 0.0}), tri_basis, 3);
    const double f = site_statistics(gs.vector, tri_basis, 0).fluctuation;
    if (f <= prev) staircase = false;
    prev = f;
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail), "E=%.12f, F=%.12f, Mott F=%.1e, staircase=%s",
                hopping_pair.energy, f_pair, std::abs(f_mott), staircase ? "yes" : "no");
  report(8, "ground-state oracles",
         two_site_ok && std::abs(f_mott) <= 1e-10 && staircase, detail);
}

}  // namespace

int main() {
  criterion_effective_parameters();
  criterion_regime_crossing();
  criterion_feasibility_ratio();
  criterion_ramp_experiment();
  criterion_microscopic_kappa();
  criterion_polariton_spectrum();
  criterion_open_system_integrity();
  criterion_ground_state_oracles();
  std::printf("%s (%d criterion%s failed)\n", failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES",
              failures, failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 1;
}
