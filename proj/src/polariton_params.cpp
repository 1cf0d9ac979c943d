#include "polariton/polariton_params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "polariton/errors.hpp"

namespace polariton {

void PhysicalParams::validate() const {
  if (n_atoms < 1) throw std::invalid_argument("PhysicalParams: n_atoms must be >= 1");
  if (omega_l < 0.0) throw std::invalid_argument("PhysicalParams: omega_l must be >= 0");
  if (g13 < 0.0) throw std::invalid_argument("PhysicalParams: g13 must be >= 0");
  if (gamma_c < 0.0 || gamma3 < 0.0 || gamma4 < 0.0 || gamma_dephase < 0.0) {
    throw std::invalid_argument("PhysicalParams: decay rates must be >= 0");
  }
}

PhysicalParams PhysicalParams::with_drive(double new_omega_l) const {
  PhysicalParams q = *this;
  q.omega_l = new_omega_l;
  return q;
}

EffectiveParams effective_parameters(const PhysicalParams& p) {
  p.validate();
  if (p.delta_cap == 0.0 && p.g24 != 0.0) {
    throw SingularDetuningError(
        "effective_parameters: Delta = 0 with g24 != 0, level-4 elimination is singular");
  }
  EffectiveParams e;
  e.g = std::sqrt(static_cast<double>(p.n_atoms)) * p.g13;
  e.B = std::hypot(e.g, p.omega_l);
  if (e.B == 0.0) {
    throw DegenerateCouplingError(
        "effective_parameters: B = 0 (no coupling and no drive), polaritons undefined");
  }
  e.A = std::sqrt(4.0 * e.B * e.B + p.delta_small * p.delta_small);
  e.mu0 = 0.0;
  e.mu_plus = 0.5 * (p.delta_small - e.A);
  e.mu_minus = 0.5 * (p.delta_small + e.A);

  const double b2 = e.B * e.B;
  const double atomic_weight = e.g * e.g / b2;
  const double photonic_weight = p.omega_l * p.omega_l / b2;
  e.kappa = p.g24 == 0.0 ? 0.0
                         : -(p.g24 * p.g24 / p.delta_cap) * atomic_weight * photonic_weight;
  e.J = p.two_omega_alpha * photonic_weight;
  e.Gamma = photonic_weight * p.gamma_c + atomic_weight * p.gamma_dephase;
  e.chem_shift = p.epsilon * atomic_weight;
  e.dark_atomic_amp = e.g / e.B;
  e.dark_photonic_amp = -p.omega_l / e.B;
  return e;
}

double ValidityReport::worst() const {
  return std::max({species_ratio, perturbation_ratio, hopping_ratio});
}

std::string ValidityReport::summary() const {
  std::ostringstream os;
  os << "species_ratio=" << species_ratio << " perturbation_ratio=" << perturbation_ratio
     << " hopping_ratio=" << hopping_ratio << " threshold=" << threshold << " -> "
     << (pass() ? "pass" : "FAIL");
  return os.str();
}

ValidityReport validity_report(const PhysicalParams& p, int max_polaritons, double threshold) {
  if (max_polaritons < 0) {
    throw std::invalid_argument("validity_report: max_polaritons must be >= 0");
  }
  const EffectiveParams e = effective_parameters(p);
  const double gap = std::min(std::abs(e.mu_plus), std::abs(e.mu_minus));
  ValidityReport r;
  r.threshold = threshold;
  const double perturbations =
      std::max({std::abs(p.g24), std::abs(p.epsilon), std::abs(p.delta_cap)});
  r.species_ratio = perturbations == 0.0 ? 0.0 : perturbations / gap;
  const double pairs = static_cast<double>(max_polaritons) * (max_polaritons - 1);
  r.perturbation_ratio =
      max_polaritons < 2 || p.g24 == 0.0
          ? 0.0
          : std::sqrt(pairs) * std::abs(p.g24) / std::abs(p.delta_cap);
  r.hopping_ratio = p.two_omega_alpha == 0.0 ? 0.0 : std::abs(p.two_omega_alpha) / gap;
  return r;
}

double adiabatic_margin(const PhysicalParams& p, double d_omega_dt) {
  const EffectiveParams e = effective_parameters(p);
  const double gap = std::min(std::abs(e.mu_plus), std::abs(e.mu_minus));
  return (e.g / (e.B * e.B)) * std::abs(d_omega_dt) / gap;
}

RampSchedule::RampSchedule(double omega_start, double omega_end, double duration,
                           RampShape shape)
    : omega_start_(omega_start), omega_end_(omega_end), duration_(duration), shape_(shape) {
  if (duration <= 0.0) throw std::invalid_argument("RampSchedule: duration must be > 0");
  if (omega_start <= 0.0 || omega_end <= 0.0) {
    throw std::invalid_argument("RampSchedule: drive endpoints must be > 0");
  }
}

double RampSchedule::omega_at(double t) const {
  if (t < 0.0 || t > duration_) {
    throw std::out_of_range("RampSchedule: time outside [0, duration]");
  }
  const double x = t / duration_;
  switch (shape_) {
    case RampShape::kLinear:
      return omega_start_ + (omega_end_ - omega_start_) * x;
    case RampShape::kExponential:
      return omega_start_ * std::pow(omega_end_ / omega_start_, x);
  }
  throw std::logic_error("RampSchedule: unknown shape");
}

double RampSchedule::slope_at(double t) const {
  if (t < 0.0 || t > duration_) {
    throw std::out_of_range("RampSchedule: time outside [0, duration]");
  }
  switch (shape_) {
    case RampShape::kLinear:
      return (omega_end_ - omega_start_) / duration_;
    case RampShape::kExponential:
      return omega_at(t) * std::log(omega_end_ / omega_start_) / duration_;
  }
  throw std::logic_error("RampSchedule: unknown shape");
}

RampSchedule make_ramp(double omega_start, double omega_end, double duration,
                       RampShape shape) {
  return RampSchedule(omega_start, omega_end, duration, shape);
}

EffectiveParams params_at_time(const PhysicalParams& p, const RampSchedule& ramp, double t) {
  return effective_parameters(p.with_drive(ramp.omega_at(t)));
}

}  // namespace polariton
