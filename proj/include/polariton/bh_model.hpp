#ifndef POLARITON_BH_MODEL_HPP
#define POLARITON_BH_MODEL_HPP

#include <Eigen/Dense>

#include "polariton/fock_space.hpp"

namespace polariton {

/// Couplings of the effective lattice model, in 1/s. The interaction term
/// is kappa * n(n-1) per site, i.e. kappa multiplies (p^dag)^2 p^2 verbatim
/// (the standard-convention U equals 2 kappa). kappa < 0 (attractive) is
/// allowed. mu is an optional chemical potential from the two-photon shift.
struct BHParams {
  double kappa = 0.0;
  double J = 0.0;
  double mu = 0.0;
};

/// H = kappa sum_i n_i(n_i-1) + J sum_<ij> (p_i^dag p_j + h.c.) + mu sum_i n_i
SparseOperator build_bh_hamiltonian(const FockBasis& basis, const CavityGraph& graph,
                                    const BHParams& bh);

/// H = omega_c sum_i (a_i^dag a_i + 1/2) + 2 omega_c alpha sum_<ij> (a_i^dag a_j + h.c.)
/// including the M/2 zero-point constant on the diagonal.
SparseOperator build_photonic_hamiltonian(const FockBasis& basis, const CavityGraph& graph,
                                          double omega_c, double two_omega_alpha);

struct EigensolverSettings {
  int dense_threshold = 512;  ///< iterative solver above this block size
  double tolerance = 1e-10;   ///< residual tolerance of the iterative path
  int max_iterations = 400;
};

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXcd vector;  ///< full-basis coordinates, support on the sector
  double residual = 0.0;    ///< ||H v - E v||
};

/// Lowest eigenpair of a Hermitian operator restricted to the block of
/// states with the given total particle number. The phase is fixed by
/// making the first nonzero amplitude real positive.
GroundState ground_state(const SparseOperator& hamiltonian, const FockBasis& basis,
                         int sector_total, const EigensolverSettings& settings = {});

struct SiteStatistics {
  double mean_n = 0.0;
  double fluctuation = 0.0;  ///< <n^2> - <n>^2
};

/// Mean and variance of the site number operator in a normalized pure state.
SiteStatistics site_statistics(const Eigen::VectorXcd& state, const FockBasis& basis, int site);

/// Same for a unit-trace density matrix.
SiteStatistics site_statistics(const Eigen::MatrixXcd& rho, const FockBasis& basis, int site);

}  // namespace polariton

#endif
