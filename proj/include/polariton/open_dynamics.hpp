#ifndef POLARITON_OPEN_DYNAMICS_HPP
#define POLARITON_OPEN_DYNAMICS_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polariton/fock_space.hpp"
#include "polariton/polariton_params.hpp"

namespace polariton {

/// Pure projector onto the given Fock state; trace one.
Eigen::MatrixXcd initial_mott_state(const FockBasis& basis, std::span<const int> occupation);

/// drho/dt = -i[H,rho] + sum_k rate_k (L rho L^dag - 1/2 {L^dag L, rho}).
Eigen::MatrixXcd lindblad_derivative(
    const Eigen::MatrixXcd& hamiltonian,
    const std::vector<std::pair<Eigen::MatrixXcd, double>>& jumps,
    const Eigen::MatrixXcd& rho);

Eigen::MatrixXcd lindblad_derivative(
    const SparseOperator& hamiltonian,
    const std::vector<std::pair<SparseOperator, double>>& jumps,
    const Eigen::MatrixXcd& rho);

// Density-matrix diagnostics.
double trace_error(const Eigen::MatrixXcd& rho);
double hermiticity_defect(const Eigen::MatrixXcd& rho);
double min_eigenvalue(const Eigen::MatrixXcd& rho);
double purity(const Eigen::MatrixXcd& rho);

struct IntegratorSettings {
  double rtol = 1e-8;
  double atol = 1e-12;
  double initial_step = 0.0;    ///< 0: automatic
  double max_step = 0.0;        ///< 0: unlimited
  double fixed_step = 0.0;      ///< > 0: fixed-step integration, no adaptivity
  int samples = 200;            ///< recorded points, endpoints included
  double positivity_tol = 1e-6; ///< abort when min eigenvalue < -positivity_tol
};

/// Recorded observables of one dissipative evolution. Vectors indexed by
/// sample; per-site quantities indexed [sample][site].
struct ObservableSeries {
  int site_count = 0;
  std::vector<double> times;
  std::vector<double> omega_l;
  std::vector<double> kappa;
  std::vector<double> J;
  std::vector<double> gamma;
  std::vector<std::vector<double>> mean_n;
  std::vector<std::vector<double>> fluctuation;
  std::vector<double> trace;
  std::vector<double> purity;

  // Aggregates over the whole run.
  double max_trace_drift = 0.0;
  double max_hermiticity_defect = 0.0;
  double min_eigenvalue_seen = 0.0;
  std::vector<std::string> warnings;
};

/// Integrates the master equation with H(t) built from the ramped drive and
/// one polariton-loss jump operator per site at rate Gamma(t). A failed
/// validity check at either ramp endpoint is recorded as a warning, not an
/// error.
ObservableSeries evolve(const Eigen::MatrixXcd& rho0, const PhysicalParams& params,
                        const RampSchedule& ramp, const CavityGraph& graph,
                        const FockBasis& basis, const IntegratorSettings& settings = {});

}  // namespace polariton

#endif
