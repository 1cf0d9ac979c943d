#ifndef POLARITON_MICROSCOPIC_VALIDATION_HPP
#define POLARITON_MICROSCOPIC_VALIDATION_HPP

#include <vector>

#include <Eigen/Dense>

#include "polariton/polariton_params.hpp"

namespace polariton {

/// Permutation-symmetric state of one cavity: `photons` cavity photons and
/// collective atomic occupations of levels 2, 3 and 4. Level 1 holds the
/// remaining n_atoms - n2 - n3 - n4 atoms. Levels 2 and 3 carry one
/// excitation each, level 4 two, so the conserved excitation number is
/// photons + n2 + n3 + 2 n4.
struct SymState {
  int photons = 0;
  int n2 = 0;
  int n3 = 0;
  int n4 = 0;

  bool operator==(const SymState&) const = default;
  int excitations() const { return photons + n2 + n3 + 2 * n4; }
};

/// Complete enumeration of the fixed-excitation symmetric sector. This is
/// exact on the permutation-symmetric subspace for any atom number; the
/// dimension is tiny (7 states for two excitations).
class SymBasis {
 public:
  SymBasis(int atom_count, int excitations);

  int atom_count() const { return atom_count_; }
  int excitation_number() const { return excitations_; }
  int dim() const { return static_cast<int>(states_.size()); }
  const SymState& state(int index) const { return states_[static_cast<size_t>(index)]; }
  int index_of(const SymState& s) const;  ///< -1 when absent

 private:
  int atom_count_;
  int excitations_;
  std::vector<SymState> states_;
};

/// Matrix of the one-cavity Hamiltonian on the symmetric sector, in the
/// rotating frame (the bare cavity frequency never enters). Collective
/// transition operators act as Schwinger bosons on the level occupations.
Eigen::MatrixXd build_hi(const SymBasis& basis, const PhysicalParams& p);

/// Normalized (p0^dag)^n |vac> expanded on the symmetric basis, with the
/// exact finite-N normalization of the collective raising operator.
Eigen::VectorXd dark_excitation_state(const SymBasis& basis, const PhysicalParams& p,
                                      int n_polaritons);

struct KappaShiftResult {
  double measured_shift = 0.0;   ///< eigenvalue of the dark-branch eigenvector
  double predicted_shift = 0.0;  ///< n_p(n_p-1) kappa + n_p eps g^2/B^2
  double overlap = 0.0;          ///< |<dark|eigenvector>|^2
  double relative_error = 0.0;
};

/// Diagonalizes the fixed-excitation sector with n_polaritons excitations
/// and returns the eigenvalue of the eigenvector closest to the dark state.
/// Throws RegimeError when the best overlap is below `overlap_threshold`,
/// i.e. when no eigenvector can be called the dark branch.
KappaShiftResult extract_kappa_shift(const PhysicalParams& p, int n_polaritons,
                                     double overlap_threshold = 0.5);

}  // namespace polariton

#endif
