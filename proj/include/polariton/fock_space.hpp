#ifndef POLARITON_FOCK_SPACE_HPP
#define POLARITON_FOCK_SPACE_HPP

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace polariton {

/// One nonzero matrix element of an operator on a Fock basis.
struct SparseEntry {
  int row;
  int col;
  std::complex<double> value;
};

/// Sparse matrix with deduplicated, row-major-sorted entries. Dimensions
/// stay small (a few hundred states), so products and dense conversion
/// are unoptimized by design.
class SparseOperator {
 public:
  SparseOperator() : dim_(0) {}

  /// Sums duplicate coordinates and drops exact zeros.
  static SparseOperator from_entries(int dim, std::vector<SparseEntry> entries);
  static SparseOperator zero(int dim) { return from_entries(dim, {}); }
  static SparseOperator identity(int dim);

  int dim() const { return dim_; }
  const std::vector<SparseEntry>& entries() const { return entries_; }

  SparseOperator adjoint() const;
  SparseOperator operator+(const SparseOperator& other) const;
  SparseOperator operator-(const SparseOperator& other) const;
  SparseOperator operator*(const SparseOperator& other) const;
  SparseOperator scaled(std::complex<double> factor) const;

  Eigen::MatrixXcd to_dense() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

  /// Max |A - A^dagger| over all coordinates.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

  /// Max |A - B| over all coordinates.
  double max_abs_diff(const SparseOperator& other) const;

 private:
  int dim_;
  std::vector<SparseEntry> entries_;
};

inline SparseOperator operator*(std::complex<double> factor, const SparseOperator& op) {
  return op.scaled(factor);
}

/// Truncated bosonic Fock space for `site_count` modes with total occupation
/// at most `max_total`. States are ordered by ascending total particle
/// number, then lexicographically, so fixed-number sectors are contiguous
/// index ranges and number-conserving operators are block diagonal.
class FockBasis {
 public:
  static constexpr int kDefaultDimensionCap = 200000;

  FockBasis(int site_count, int max_total, int dimension_cap = kDefaultDimensionCap);

  int site_count() const { return site_count_; }
  int max_total() const { return max_total_; }
  int dim() const { return static_cast<int>(states_.size()); }

  const std::vector<int>& state(int index) const;

  /// Ordinal of an occupation vector; throws std::out_of_range when the
  /// vector is not part of the basis.
  int index_of(std::span<const int> occupation) const;
  bool contains(std::span<const int> occupation) const;

  /// Half-open index range [first, last) of states with the given total.
  std::pair<int, int> number_sector(int total) const;

 private:
  int site_count_;
  int max_total_;
  std::vector<std::vector<int>> states_;
};

/// Number of Fock states for M sites with total occupation <= N_max,
/// i.e. sum_n binom(n + M - 1, M - 1). Saturates at `cap + 1`.
long long fock_dimension(int site_count, int max_total, long long cap);

/// Nearest-neighbor connectivity of the cavity array. Edges are unordered
/// pairs without duplicates or self loops.
struct CavityGraph {
  int site_count = 0;
  std::vector<std::pair<int, int>> edges;

  static CavityGraph cycle(int site_count);
  void validate() const;
};

/// Annihilation operator a_site. The adjoint is the creation operator;
/// amplitudes that would leave the truncated basis are dropped.
SparseOperator ladder_operator(const FockBasis& basis, int site);

/// Diagonal operator a_site^dagger a_site.
SparseOperator number_operator(const FockBasis& basis, int site);

/// Sum of all site number operators.
SparseOperator total_number_operator(const FockBasis& basis);

/// a_i^dagger a_j + a_j^dagger a_i restricted to the basis.
SparseOperator hopping_operator(const FockBasis& basis, std::pair<int, int> edge);

}  // namespace polariton

#endif
