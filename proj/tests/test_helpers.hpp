#ifndef POLARITON_TEST_HELPERS_HPP
#define POLARITON_TEST_HELPERS_HPP

#include "polariton/polariton_params.hpp"

namespace polariton::test {

// Toroidal-microcavity parameter set with both small detunings at zero;
// the drive sits at the hopping-suppressed (Mott) end of the ramp.
inline PhysicalParams toroidal_params() {
  PhysicalParams p;
  p.g13 = 2.5e9;
  p.g24 = 2.5e9;
  p.n_atoms = 1000;
  p.delta_cap = -2.0e10;
  p.delta_small = 0.0;
  p.epsilon = 0.0;
  p.two_omega_alpha = 1.1e7;
  p.gamma_c = 0.4e5;
  p.gamma3 = 1.6e7;
  p.gamma4 = 1.6e7;
  p.omega_l = 7.8e10;
  return p;
}

// Frozen values of the closed-form expressions at the two ramp endpoints,
// evaluated independently (see also the alternative route in the tests).
inline constexpr double kKappaStart = 78110848.63547008;
inline constexpr double kJStart = 5425976.9742176095;
inline constexpr double kKappaEnd = 1597606.0731212413;
inline constexpr double kJEnd = 10943473.792394655;

inline constexpr double kOmegaStart = 7.8e10;
inline constexpr double kOmegaEnd = 1.1e12;
inline constexpr double kRampDuration = 1e-6;

}  // namespace polariton::test

#endif
