#include "polariton/fock_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace polariton {

namespace {

bool coord_less(const SparseEntry& a, const SparseEntry& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

// (total, lexicographic) order used for basis states.
bool state_less(const std::vector<int>& a, const std::vector<int>& b) {
  int ta = 0, tb = 0;
  for (int x : a) ta += x;
  for (int x : b) tb += x;
  if (ta != tb) return ta < tb;
  return a < b;
}

}  // namespace

SparseOperator SparseOperator::from_entries(int dim, std::vector<SparseEntry> entries) {
  if (dim < 0) throw std::invalid_argument("SparseOperator: negative dimension");
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= dim || e.col < 0 || e.col >= dim) {
      throw std::invalid_argument("SparseOperator: coordinate out of range");
    }
  }
  std::sort(entries.begin(), entries.end(), coord_less);
  std::vector<SparseEntry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const SparseEntry& e) { return e.value == 0.0; });
  SparseOperator op;
  op.dim_ = dim;
  op.entries_ = std::move(merged);
  return op;
}

SparseOperator SparseOperator::identity(int dim) {
  std::vector<SparseEntry> entries;
  entries.reserve(dim);
  for (int i = 0; i < dim; ++i) entries.push_back({i, i, 1.0});
  return from_entries(dim, std::move(entries));
}

SparseOperator SparseOperator::adjoint() const {
  std::vector<SparseEntry> entries;
  entries.reserve(entries_.size());
  for (const auto& e : entries_) entries.push_back({e.col, e.row, std::conj(e.value)});
  return from_entries(dim_, std::move(entries));
}

SparseOperator SparseOperator::operator+(const SparseOperator& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("SparseOperator: dimension mismatch");
  std::vector<SparseEntry> entries = entries_;
  entries.insert(entries.end(), other.entries_.begin(), other.entries_.end());
  return from_entries(dim_, std::move(entries));
}

SparseOperator SparseOperator::operator-(const SparseOperator& other) const {
  return *this + other.scaled(-1.0);
}

SparseOperator SparseOperator::operator*(const SparseOperator& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("SparseOperator: dimension mismatch");
  // Row-major merge: for each entry (i,k) of *this, scan other's row k.
  std::vector<int> row_start(other.dim_ + 1, 0);
  for (const auto& e : other.entries_) row_start[e.row + 1]++;
  for (int r = 0; r < other.dim_; ++r) row_start[r + 1] += row_start[r];
  std::vector<SparseEntry> entries;
  for (const auto& a : entries_) {
    const int k = a.col;
    for (int idx = row_start[k]; idx < row_start[k + 1]; ++idx) {
      const auto& b = other.entries_[idx];
      entries.push_back({a.row, b.col, a.value * b.value});
    }
  }
  return from_entries(dim_, std::move(entries));
}

SparseOperator SparseOperator::scaled(std::complex<double> factor) const {
  std::vector<SparseEntry> entries = entries_;
  for (auto& e : entries) e.value *= factor;
  return from_entries(dim_, std::move(entries));
}

Eigen::MatrixXcd SparseOperator::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (const auto& e : entries_) m(e.row, e.col) = e.value;
  return m;
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& v) const {
  if (v.size() != dim_) throw std::invalid_argument("SparseOperator: vector size mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim_);
  for (const auto& e : entries_) out[e.row] += e.value * v[e.col];
  return out;
}

double SparseOperator::hermiticity_defect() const {
  return max_abs_diff(adjoint());
}

double SparseOperator::max_abs_diff(const SparseOperator& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("SparseOperator: dimension mismatch");
  double worst = 0.0;
  auto it = entries_.begin();
  auto jt = other.entries_.begin();
  while (it != entries_.end() || jt != other.entries_.end()) {
    if (jt == other.entries_.end() || (it != entries_.end() && coord_less(*it, *jt))) {
      worst = std::max(worst, std::abs(it->value));
      ++it;
    } else if (it == entries_.end() || coord_less(*jt, *it)) {
      worst = std::max(worst, std::abs(jt->value));
      ++jt;
    } else {
      worst = std::max(worst, std::abs(it->value - jt->value));
      ++it;
      ++jt;
    }
  }
  return worst;
}

long long fock_dimension(int site_count, int max_total, long long cap) {
  // binom(n + M - 1, M - 1) accumulated over n = 0..max_total, bailing out
  // once past the cap so huge requests never overflow.
  long long total = 0;
  for (int n = 0; n <= max_total; ++n) {
    long long c = 1;
    for (int k = 1; k <= site_count - 1; ++k) {
      c = c * (n + k) / k;
      if (c > cap) break;
    }
    total += c;
    if (total > cap) return cap + 1;
  }
  return total;
}

FockBasis::FockBasis(int site_count, int max_total, int dimension_cap)
    : site_count_(site_count), max_total_(max_total) {
  if (site_count < 1) throw std::invalid_argument("FockBasis: site_count must be >= 1");
  if (max_total < 0) throw std::invalid_argument("FockBasis: max_total must be >= 0");
  const long long dim = fock_dimension(site_count, max_total, dimension_cap);
  if (dim > dimension_cap) {
    throw std::invalid_argument("FockBasis: dimension exceeds cap of " +
                                std::to_string(dimension_cap) + " states");
  }
  states_.reserve(static_cast<size_t>(dim));
  std::vector<int> occ(site_count, 0);
  // Depth-first enumeration of all vectors with sum <= max_total.
  auto recurse = [&](auto&& self, int site, int remaining) -> void {
    if (site == site_count) {
      states_.push_back(occ);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      occ[site] = k;
      self(self, site + 1, remaining - k);
    }
    occ[site] = 0;
  };
  recurse(recurse, 0, max_total);
  std::sort(states_.begin(), states_.end(), state_less);
}

const std::vector<int>& FockBasis::state(int index) const {
  if (index < 0 || index >= dim()) throw std::out_of_range("FockBasis: state index out of range");
  return states_[static_cast<size_t>(index)];
}

int FockBasis::index_of(std::span<const int> occupation) const {
  if (static_cast<int>(occupation.size()) != site_count_) {
    throw std::out_of_range("FockBasis: occupation vector has wrong length");
  }
  std::vector<int> occ(occupation.begin(), occupation.end());
  auto it = std::lower_bound(states_.begin(), states_.end(), occ, state_less);
  if (it == states_.end() || *it != occ) {
    throw std::out_of_range("FockBasis: occupation vector not in basis");
  }
  return static_cast<int>(it - states_.begin());
}

bool FockBasis::contains(std::span<const int> occupation) const {
  if (static_cast<int>(occupation.size()) != site_count_) return false;
  int total = 0;
  for (int n : occupation) {
    if (n < 0) return false;
    total += n;
  }
  return total <= max_total_;
}

std::pair<int, int> FockBasis::number_sector(int total) const {
  if (total < 0 || total > max_total_) {
    throw std::invalid_argument("FockBasis: number sector outside truncation");
  }
  auto total_of = [](const std::vector<int>& s) {
    int t = 0;
    for (int x : s) t += x;
    return t;
  };
  auto lo = std::lower_bound(states_.begin(), states_.end(), total,
                             [&](const std::vector<int>& s, int t) { return total_of(s) < t; });
  auto hi = std::upper_bound(states_.begin(), states_.end(), total,
                             [&](int t, const std::vector<int>& s) { return t < total_of(s); });
  return {static_cast<int>(lo - states_.begin()), static_cast<int>(hi - states_.begin())};
}

CavityGraph CavityGraph::cycle(int site_count) {
  if (site_count < 1) throw std::invalid_argument("CavityGraph: cycle needs >= 1 site");
  CavityGraph g;
  g.site_count = site_count;
  if (site_count == 2) {
    g.edges = {{0, 1}};
  } else if (site_count > 2) {
    for (int i = 0; i < site_count; ++i) g.edges.push_back({i, (i + 1) % site_count});
  }
  g.validate();
  return g;
}

void CavityGraph::validate() const {
  if (site_count < 1) throw std::invalid_argument("CavityGraph: site_count must be >= 1");
  std::vector<std::pair<int, int>> seen;
  for (auto [i, j] : edges) {
    if (i == j) throw std::invalid_argument("CavityGraph: self loop");
    if (i < 0 || j < 0 || i >= site_count || j >= site_count) {
      throw std::invalid_argument("CavityGraph: edge endpoint out of range");
    }
    auto canon = std::minmax(i, j);
    if (std::find(seen.begin(), seen.end(), std::pair<int, int>(canon)) != seen.end()) {
      throw std::invalid_argument("CavityGraph: duplicate edge");
    }
    seen.push_back(canon);
  }
}

SparseOperator ladder_operator(const FockBasis& basis, int site) {
  if (site < 0 || site >= basis.site_count()) {
    throw std::invalid_argument("ladder_operator: site index out of range");
  }
  std::vector<SparseEntry> entries;
  std::vector<int> target;
  for (int j = 0; j < basis.dim(); ++j) {
    const auto& occ = basis.state(j);
    const int n = occ[static_cast<size_t>(site)];
    if (n == 0) continue;
    target = occ;
    target[static_cast<size_t>(site)] = n - 1;
    entries.push_back({basis.index_of(target), j, std::sqrt(static_cast<double>(n))});
  }
  return SparseOperator::from_entries(basis.dim(), std::move(entries));
}

SparseOperator number_operator(const FockBasis& basis, int site) {
  if (site < 0 || site >= basis.site_count()) {
    throw std::invalid_argument("number_operator: site index out of range");
  }
  std::vector<SparseEntry> entries;
  for (int j = 0; j < basis.dim(); ++j) {
    const int n = basis.state(j)[static_cast<size_t>(site)];
    if (n > 0) entries.push_back({j, j, static_cast<double>(n)});
  }
  return SparseOperator::from_entries(basis.dim(), std::move(entries));
}

SparseOperator total_number_operator(const FockBasis& basis) {
  std::vector<SparseEntry> entries;
  for (int j = 0; j < basis.dim(); ++j) {
    int total = 0;
    for (int n : basis.state(j)) total += n;
    if (total > 0) entries.push_back({j, j, static_cast<double>(total)});
  }
  return SparseOperator::from_entries(basis.dim(), std::move(entries));
}

SparseOperator hopping_operator(const FockBasis& basis, std::pair<int, int> edge) {
  auto [i, j] = edge;
  if (i == j || i < 0 || j < 0 || i >= basis.site_count() || j >= basis.site_count()) {
    throw std::invalid_argument("hopping_operator: invalid edge");
  }
  std::vector<SparseEntry> entries;
  std::vector<int> target;
  for (int col = 0; col < basis.dim(); ++col) {
    const auto& occ = basis.state(col);
    // a_i^dagger a_j then a_j^dagger a_i; total number is conserved so the
    // target never leaves the truncated basis.
    for (auto [to, from] : {std::pair<int, int>{i, j}, std::pair<int, int>{j, i}}) {
      const int n_from = occ[static_cast<size_t>(from)];
      if (n_from == 0) continue;
      target = occ;
      target[static_cast<size_t>(from)] -= 1;
      target[static_cast<size_t>(to)] += 1;
      const double amp = std::sqrt(static_cast<double>(n_from)) *
                         std::sqrt(static_cast<double>(target[static_cast<size_t>(to)]));
      entries.push_back({basis.index_of(target), col, amp});
    }
  }
  return SparseOperator::from_entries(basis.dim(), std::move(entries));
}

}  // namespace polariton
