#include "polariton/microscopic_validation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "polariton/errors.hpp"

namespace polariton {

namespace {

bool state_less(const SymState& a, const SymState& b) {
  if (a.photons != b.photons) return a.photons < b.photons;
  if (a.n2 != b.n2) return a.n2 < b.n2;
  if (a.n3 != b.n3) return a.n3 < b.n3;
  return a.n4 < b.n4;
}

}  // namespace

SymBasis::SymBasis(int atom_count, int excitations)
    : atom_count_(atom_count), excitations_(excitations) {
  if (atom_count < 1) throw std::invalid_argument("SymBasis: atom_count must be >= 1");
  if (excitations < 0) throw std::invalid_argument("SymBasis: excitations must be >= 0");
  for (int n4 = 0; 2 * n4 <= excitations; ++n4) {
    for (int n3 = 0; 2 * n4 + n3 <= excitations; ++n3) {
      for (int n2 = 0; 2 * n4 + n3 + n2 <= excitations; ++n2) {
        const int photons = excitations - 2 * n4 - n3 - n2;
        if (n2 + n3 + n4 <= atom_count) {
          states_.push_back({photons, n2, n3, n4});
        }
      }
    }
  }
  std::sort(states_.begin(), states_.end(), state_less);
}

int SymBasis::index_of(const SymState& s) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), s, state_less);
  if (it == states_.end() || !(*it == s)) return -1;
  return static_cast<int>(it - states_.begin());
}

Eigen::MatrixXd build_hi(const SymBasis& basis, const PhysicalParams& p) {
  p.validate();
  const int d = basis.dim();
  const double n_atoms = static_cast<double>(basis.atom_count());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);

  auto add_coupling = [&](int from, const SymState& to, double amp) {
    const int j = basis.index_of(to);
    if (j < 0) return;  // target outside the atom-count constraint
    h(j, from) += amp;
    h(from, j) += amp;
  };

  for (int i = 0; i < d; ++i) {
    const SymState s = basis.state(i);
    const double n1 = n_atoms - s.n2 - s.n3 - s.n4;
    h(i, i) = p.epsilon * s.n2 + p.delta_small * s.n3 + (p.delta_cap + p.epsilon) * s.n4;

    // Omega_L sigma_23: one atom moves 3 -> 2.
    if (s.n3 > 0) {
      add_coupling(i, {s.photons, s.n2 + 1, s.n3 - 1, s.n4},
                   p.omega_l * std::sqrt(s.n3 * (s.n2 + 1.0)));
    }
    // g13 sigma_13 a^dag: one atom moves 3 -> 1, one photon is created.
    if (s.n3 > 0) {
      add_coupling(i, {s.photons + 1, s.n2, s.n3 - 1, s.n4},
                   p.g13 * std::sqrt(s.n3 * (n1 + 1.0)) * std::sqrt(s.photons + 1.0));
    }
    // g24 sigma_24 a^dag: one atom moves 4 -> 2, one photon is created.
    if (s.n4 > 0) {
      add_coupling(i, {s.photons + 1, s.n2 + 1, s.n3, s.n4 - 1},
                   p.g24 * std::sqrt(s.n4 * (s.n2 + 1.0)) * std::sqrt(s.photons + 1.0));
    }
  }
  return h;
}

Eigen::VectorXd dark_excitation_state(const SymBasis& basis, const PhysicalParams& p,
                                      int n_polaritons) {
  p.validate();
  if (n_polaritons < 0 || n_polaritons > basis.excitation_number()) {
    throw std::invalid_argument("dark_excitation_state: polariton number outside sector");
  }
  if (n_polaritons > basis.atom_count()) {
    throw std::invalid_argument(
        "dark_excitation_state: more polaritons than atoms, collective raising truncates");
  }
  const double n_atoms = static_cast<double>(basis.atom_count());
  const double g = std::sqrt(n_atoms) * p.g13;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(basis.dim());

  // (p0^dag)^n = B^-n sum_k binom(n,k) g^k (-Omega)^(n-k) (S12^dag)^k (a^dag)^(n-k),
  // (a^dag)^j |0> = sqrt(j!) |j>, and the collective ladder carries the exact
  // finite-N factor prod_i sqrt((N-i)(i+1)/N).
  for (int k = 0; k <= n_polaritons; ++k) {
    const int j = n_polaritons - k;
    double amp = 1.0;
    for (int i = 0; i < k; ++i) {
      amp *= g * std::sqrt((n_atoms - i) * (i + 1.0) / n_atoms);  // S12^dag ladder
      amp *= static_cast<double>(n_polaritons - i) / (i + 1.0);   // binomial
    }
    for (int i = 0; i < j; ++i) amp *= -p.omega_l * std::sqrt(i + 1.0);
    const int idx = basis.index_of({j, k, 0, 0});
    if (idx >= 0) v[idx] = amp;
  }
  const double norm = v.norm();
  if (norm == 0.0) {
    throw DegenerateCouplingError("dark_excitation_state: vanishing dark amplitude");
  }
  return v / norm;
}

KappaShiftResult extract_kappa_shift(const PhysicalParams& p, int n_polaritons,
                                     double overlap_threshold) {
  if (n_polaritons < 1) {
    throw std::invalid_argument("extract_kappa_shift: n_polaritons must be >= 1");
  }
  const EffectiveParams e = effective_parameters(p);
  const ValidityReport report = validity_report(p, n_polaritons);
  if (report.perturbation_ratio >= 1.0) {
    throw std::invalid_argument(
        "extract_kappa_shift: sqrt(n_p(n_p-1)) g24 / |Delta| >= 1, not perturbative");
  }

  const SymBasis basis(p.n_atoms, n_polaritons);
  const Eigen::MatrixXd h = build_hi(basis, p);
  const Eigen::VectorXd dark = dark_excitation_state(basis, p, n_polaritons);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) {
    throw EigensolverError("extract_kappa_shift: diagonalization failed", -1.0);
  }
  const Eigen::VectorXd overlaps = (es.eigenvectors().transpose() * dark).cwiseAbs2();
  int best = 0;
  overlaps.maxCoeff(&best);

  KappaShiftResult result;
  result.overlap = overlaps[best];
  if (result.overlap < overlap_threshold) {
    throw RegimeError("extract_kappa_shift: best dark-branch overlap " +
                      std::to_string(result.overlap) +
                      " below threshold, mapping invalid in this regime");
  }
  result.measured_shift = es.eigenvalues()[best];
  result.predicted_shift =
      n_polaritons * (n_polaritons - 1.0) * e.kappa + n_polaritons * e.chem_shift;
  const double scale = std::abs(result.predicted_shift);
  result.relative_error =
      scale > 0.0 ? std::abs(result.measured_shift - result.predicted_shift) / scale
                  : std::abs(result.measured_shift);
  return result;
}

}  // namespace polariton
