#include "polariton/bh_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include "polariton/errors.hpp"

namespace polariton {

namespace {

void check_sizes(const FockBasis& basis, const CavityGraph& graph, const char* where) {
  graph.validate();
  if (graph.site_count != basis.site_count()) {
    throw std::invalid_argument(std::string(where) + ": graph and basis site counts differ");
  }
}

// Lanczos with full reorthogonalization for the lowest eigenpair of a
// Hermitian block. Deterministic start vector; block sizes stay in the
// thousands, so dense Krylov bookkeeping is fine.
struct LanczosResult {
  double eigenvalue;
  Eigen::VectorXcd vector;
  double residual;
};

LanczosResult lanczos_lowest(const Eigen::SparseMatrix<std::complex<double>>& h,
                             const EigensolverSettings& settings) {
  const int n = static_cast<int>(h.rows());
  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(n, 1.0);
  for (int i = 0; i < n; ++i) v[i] += std::complex<double>(0.0, 1e-3 * ((i % 7) - 3));
  v.normalize();

  std::vector<Eigen::VectorXcd> krylov;
  std::vector<double> alpha, beta;
  double scale = 1.0;
  LanczosResult best{0.0, v, std::numeric_limits<double>::infinity()};

  for (int it = 0; it < settings.max_iterations && it < n; ++it) {
    krylov.push_back(v);
    Eigen::VectorXcd w = h * v;
    scale = std::max(scale, w.norm());
    alpha.push_back(w.dot(v).real());
    // Full reorthogonalization keeps the basis clean at these sizes.
    for (const auto& q : krylov) w -= q.dot(w) * q;
    for (const auto& q : krylov) w -= q.dot(w) * q;
    const double b = w.norm();

    // Rayleigh-Ritz on the tridiagonal matrix built so far.
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha[static_cast<size_t>(i)];
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    Eigen::VectorXcd ritz = Eigen::VectorXcd::Zero(n);
    for (int i = 0; i < m; ++i) ritz += es.eigenvectors()(i, 0) * krylov[static_cast<size_t>(i)];
    ritz.normalize();
    const double theta = es.eigenvalues()[0];
    const double residual = (h * ritz - theta * ritz).norm();
    if (residual < best.residual) best = {theta, ritz, residual};
    if (residual <= settings.tolerance * scale) return best;
    if (b <= 1e-14 * scale) break;  // invariant subspace exhausted
    beta.push_back(b);
    v = w / b;
  }
  if (best.residual <= settings.tolerance * scale) return best;
  throw EigensolverError("ground_state: Lanczos did not converge, residual " +
                             std::to_string(best.residual),
                         best.residual);
}

void fix_phase(Eigen::VectorXcd& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12 * peak) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      return;
    }
  }
}

SiteStatistics stats_from_weights(const Eigen::VectorXd& weights, const FockBasis& basis,
                                  int site, double norm, const char* where) {
  if (site < 0 || site >= basis.site_count()) {
    throw std::invalid_argument(std::string(where) + ": site index out of range");
  }
  if (std::abs(norm - 1.0) > 1e-8) {
    throw std::invalid_argument(std::string(where) + ": state is not normalized");
  }
  double mean = 0.0, second = 0.0;
  for (int k = 0; k < basis.dim(); ++k) {
    const double n = basis.state(k)[static_cast<size_t>(site)];
    mean += weights[k] * n;
    second += weights[k] * n * n;
  }
  return {mean, second - mean * mean};
}

}  // namespace

SparseOperator build_bh_hamiltonian(const FockBasis& basis, const CavityGraph& graph,
                                    const BHParams& bh) {
  check_sizes(basis, graph, "build_bh_hamiltonian");
  if (!std::isfinite(bh.kappa) || !std::isfinite(bh.J) || !std::isfinite(bh.mu)) {
    throw std::invalid_argument("build_bh_hamiltonian: parameters must be finite");
  }
  std::vector<SparseEntry> entries;
  for (int k = 0; k < basis.dim(); ++k) {
    double diag = 0.0;
    for (int n : basis.state(k)) diag += bh.kappa * n * (n - 1.0) + bh.mu * n;
    if (diag != 0.0) entries.push_back({k, k, diag});
  }
  SparseOperator h = SparseOperator::from_entries(basis.dim(), std::move(entries));
  for (auto edge : graph.edges) {
    h = h + hopping_operator(basis, edge).scaled(bh.J);
  }
  return h;
}

SparseOperator build_photonic_hamiltonian(const FockBasis& basis, const CavityGraph& graph,
                                          double omega_c, double two_omega_alpha) {
  check_sizes(basis, graph, "build_photonic_hamiltonian");
  std::vector<SparseEntry> entries;
  const double zero_point = 0.5 * basis.site_count() * omega_c;
  for (int k = 0; k < basis.dim(); ++k) {
    double total = 0.0;
    for (int n : basis.state(k)) total += n;
    entries.push_back({k, k, omega_c * total + zero_point});
  }
  SparseOperator h = SparseOperator::from_entries(basis.dim(), std::move(entries));
  for (auto edge : graph.edges) {
    h = h + hopping_operator(basis, edge).scaled(two_omega_alpha);
  }
  return h;
}

GroundState ground_state(const SparseOperator& hamiltonian, const FockBasis& basis,
                         int sector_total, const EigensolverSettings& settings) {
  if (hamiltonian.dim() != basis.dim()) {
    throw std::invalid_argument("ground_state: operator and basis dimensions differ");
  }
  if (!hamiltonian.is_hermitian(1e-10)) {
    throw std::invalid_argument("ground_state: operator is not Hermitian");
  }
  const auto [first, last] = basis.number_sector(sector_total);
  const int block = last - first;
  if (block <= 0) throw std::invalid_argument("ground_state: empty number sector");

  GroundState result;
  Eigen::VectorXcd block_vector;
  if (block < settings.dense_threshold) {
    Eigen::MatrixXcd hb = Eigen::MatrixXcd::Zero(block, block);
    for (const auto& e : hamiltonian.entries()) {
      if (e.row >= first && e.row < last && e.col >= first && e.col < last) {
        hb(e.row - first, e.col - first) = e.value;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hb);
    if (es.info() != Eigen::Success) {
      throw EigensolverError("ground_state: dense eigensolver failed", -1.0);
    }
    result.energy = es.eigenvalues()[0];
    block_vector = es.eigenvectors().col(0);
    result.residual = (hb * block_vector - result.energy * block_vector).norm();
  } else {
    Eigen::SparseMatrix<std::complex<double>> hb(block, block);
    std::vector<Eigen::Triplet<std::complex<double>>> triplets;
    for (const auto& e : hamiltonian.entries()) {
      if (e.row >= first && e.row < last && e.col >= first && e.col < last) {
        triplets.emplace_back(e.row - first, e.col - first, e.value);
      }
    }
    hb.setFromTriplets(triplets.begin(), triplets.end());
    LanczosResult lr = lanczos_lowest(hb, settings);
    result.energy = lr.eigenvalue;
    block_vector = lr.vector;
    result.residual = lr.residual;
  }
  fix_phase(block_vector);
  result.vector = Eigen::VectorXcd::Zero(basis.dim());
  result.vector.segment(first, block) = block_vector;
  return result;
}

SiteStatistics site_statistics(const Eigen::VectorXcd& state, const FockBasis& basis, int site) {
  if (state.size() != basis.dim()) {
    throw std::invalid_argument("site_statistics: state and basis dimensions differ");
  }
  const Eigen::VectorXd weights = state.cwiseAbs2();
  return stats_from_weights(weights, basis, site, weights.sum(), "site_statistics");
}

SiteStatistics site_statistics(const Eigen::MatrixXcd& rho, const FockBasis& basis, int site) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim()) {
    throw std::invalid_argument("site_statistics: density matrix and basis dimensions differ");
  }
  const Eigen::VectorXd weights = rho.diagonal().real();
  return stats_from_weights(weights, basis, site, weights.sum(), "site_statistics");
}

}  // namespace polariton
