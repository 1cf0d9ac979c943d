#ifndef POLARITON_POLARITON_PARAMS_HPP
#define POLARITON_POLARITON_PARAMS_HPP

#include <string>

namespace polariton {

/// Microscopic parameters of one driven cavity and its atomic ensemble.
/// All rates and detunings are angular frequencies in 1/s (hbar = 1).
struct PhysicalParams {
  double omega_c = 0.0;          ///< bare cavity frequency (photonic model only)
  double two_omega_alpha = 0.0;  ///< photon hopping prefactor 2*omega_c*alpha
  double g13 = 0.0;              ///< cavity coupling on the 1-3 transition
  double g24 = 0.0;              ///< cavity coupling on the 2-4 transition
  double omega_l = 0.0;          ///< classical drive Rabi frequency
  double delta_cap = 0.0;        ///< detuning of level 4 (Delta)
  double delta_small = 0.0;      ///< detuning of level 3 (delta)
  double epsilon = 0.0;          ///< two-photon detuning of level 2
  int n_atoms = 1;               ///< atoms per cavity
  double gamma_c = 0.0;          ///< cavity decay rate
  double gamma3 = 0.0;           ///< spontaneous emission rate of level 3
  double gamma4 = 0.0;           ///< spontaneous emission rate of level 4
  double gamma_dephase = 0.0;    ///< optional atomic dephasing of level 2

  void validate() const;
  PhysicalParams with_drive(double new_omega_l) const;
};

/// Parameters of the effective lattice model for the dark polariton, plus
/// the polariton frequencies of all three branches.
///
/// Conventions: g = sqrt(N) g13, B = sqrt(g^2 + Omega_L^2),
/// A = sqrt(4 B^2 + delta^2), mu_{+,-} = (delta -+ A)/2,
/// kappa = -(g24^2/Delta) g^2 Omega_L^2 / B^4,
/// J = two_omega_alpha * Omega_L^2 / B^2,
/// Gamma = (Omega_L^2/B^2) Gamma_C + (g^2/B^2) Gamma_dephase,
/// chem_shift = epsilon g^2 / B^2.
struct EffectiveParams {
  double g = 0.0;
  double B = 0.0;
  double A = 0.0;
  double mu0 = 0.0;
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  double kappa = 0.0;
  double J = 0.0;
  double Gamma = 0.0;
  double chem_shift = 0.0;
  double dark_atomic_amp = 0.0;    ///< g / B
  double dark_photonic_amp = 0.0;  ///< -Omega_L / B
};

EffectiveParams effective_parameters(const PhysicalParams& p);

/// Dimensionless ratios that must all be small for the effective lattice
/// model to describe the microscopic system.
struct ValidityReport {
  double species_ratio = 0.0;       ///< max(|g24|,|eps|,|Delta|) / min |mu_pm|
  double perturbation_ratio = 0.0;  ///< sqrt(n_p(n_p-1)) |g24| / |Delta|
  double hopping_ratio = 0.0;       ///< |2 omega_c alpha| / min |mu_pm|
  double threshold = 0.25;

  double worst() const;
  bool pass() const { return worst() < threshold; }
  std::string summary() const;
};

ValidityReport validity_report(const PhysicalParams& p, int max_polaritons,
                               double threshold = 0.25);

/// (g/B^2) |dOmega_L/dt| / min |mu_pm|; much less than one means the drive
/// switch-off preserves the polariton number in each cavity.
double adiabatic_margin(const PhysicalParams& p, double d_omega_dt);

enum class RampShape { kLinear, kExponential };

/// Time-dependent drive Omega_L(t) on [0, T]. The exponential shape is
/// log-linear in t, so equal time steps multiply Omega_L by equal factors.
class RampSchedule {
 public:
  RampSchedule(double omega_start, double omega_end, double duration, RampShape shape);

  double omega_at(double t) const;  ///< throws outside [0, duration]
  double slope_at(double t) const;  ///< dOmega_L/dt

  double omega_start() const { return omega_start_; }
  double omega_end() const { return omega_end_; }
  double duration() const { return duration_; }
  RampShape shape() const { return shape_; }

 private:
  double omega_start_;
  double omega_end_;
  double duration_;
  RampShape shape_;
};

RampSchedule make_ramp(double omega_start, double omega_end, double duration,
                       RampShape shape);

/// Effective parameters with Omega_L(t) substituted; everything else in `p`
/// is held constant.
EffectiveParams params_at_time(const PhysicalParams& p, const RampSchedule& ramp, double t);

}  // namespace polariton

#endif
