#pragma once

// Truncated Fock-basis linear algebra for one- and two-mode states.
//
// Two-mode basis kets |m,n> (m on mode A, n on mode B, both < n_max) are
// addressed by the composite index m * n_max + n. Every module in this
// library uses that convention.
//
// Two-mode operators are stored sparse: the states of interest have O(n_max^2)
// nonzeros in an n_max^2-dimensional space, and their spectra decompose into
// small invariant blocks which eig_spectrum() finds from the sparsity pattern.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cvw/errors.hpp"

namespace cvw {

using cplx = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;
using Triplet = Eigen::Triplet<cplx>;

/// Eigenvalues in [-kEigenvalueFloor, 0) are truncation noise and clipped to 0.
inline constexpr double kEigenvalueFloor = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;

enum class Mode { A, B };

struct FockCutoff {
  std::size_t n_max = 2;   // single-mode basis dimension
  double eps_tail = 1e-12;  // tolerated trace deficit of truncated states

  std::size_t two_mode_dim() const { return n_max * n_max; }
};

inline void validate(const FockCutoff& cutoff) {
  if (cutoff.n_max < 2) throw domain_error("Fock cutoff n_max must be at least 2");
  if (!(cutoff.eps_tail > 0.0)) throw domain_error("eps_tail must be positive");
}

constexpr std::size_t fock_index(std::size_t m, std::size_t n, std::size_t n_max) {
  return m * n_max + n;
}

/// Real eigenvalues with multiplicity, kept in descending order.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end(), std::greater<>());
  }

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double max() const { return values_.empty() ? 0.0 : values_.front(); }
  double min() const { return values_.empty() ? 0.0 : values_.back(); }
  double sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

  /// Number of entries strictly above `threshold`.
  std::size_t count_above(double threshold) const {
    return static_cast<std::size_t>(
        std::count_if(values_.begin(), values_.end(), [=](double v) { return v > threshold; }));
  }

 private:
  std::vector<double> values_;
};

/// Single-mode density operator on the truncated basis |0>..|n_max-1>.
struct OneModeState {
  DenseMatrix rho;

  std::size_t n_max() const { return static_cast<std::size_t>(rho.rows()); }
  double trace() const { return rho.trace().real(); }
  bool is_diagonal(double tol = 0.0) const {
    for (Eigen::Index c = 0; c < rho.cols(); ++c)
      for (Eigen::Index r = 0; r < rho.rows(); ++r)
        if (r != c && std::abs(rho(r, c)) > tol) return false;
    return true;
  }
};

/// Two-mode operator on the truncated basis |m,n>, m,n < n_max.
///
/// Not necessarily a state: partial transposes are stored in the same type.
/// Use validate_state() to check the density-operator invariants.
class TwoModeState {
 public:
  TwoModeState(std::size_t n_max, SparseMatrix rho) : n_max_(n_max), rho_(std::move(rho)) {
    if (n_max_ < 1) throw domain_error("two-mode state needs n_max >= 1");
    const auto dim = static_cast<Eigen::Index>(n_max_ * n_max_);
    if (rho_.rows() != dim || rho_.cols() != dim)
      throw domain_error("two-mode matrix dimension must be n_max^2");
    rho_.makeCompressed();
  }

  static TwoModeState from_triplets(std::size_t n_max, const std::vector<Triplet>& entries) {
    const auto dim = static_cast<Eigen::Index>(n_max * n_max);
    SparseMatrix m(dim, dim);
    m.setFromTriplets(entries.begin(), entries.end());
    m.prune(cplx(0.0, 0.0));
    return TwoModeState(n_max, std::move(m));
  }

  static TwoModeState from_dense(std::size_t n_max, const DenseMatrix& dense) {
    return TwoModeState(n_max, dense.sparseView(0.0, 0.0));
  }

  std::size_t n_max() const { return n_max_; }
  std::size_t dim() const { return n_max_ * n_max_; }
  const SparseMatrix& matrix() const { return rho_; }
  DenseMatrix dense() const { return DenseMatrix(rho_); }

  cplx coeff(std::size_t m, std::size_t n, std::size_t mp, std::size_t np) const {
    return rho_.coeff(static_cast<Eigen::Index>(fock_index(m, n, n_max_)),
                      static_cast<Eigen::Index>(fock_index(mp, np, n_max_)));
  }

  double trace() const {
    double t = 0.0;
    for (Eigen::Index k = 0; k < rho_.outerSize(); ++k) t += rho_.coeff(k, k).real();
    return t;
  }

  /// Largest |rho - rho^dagger| entry.
  double hermiticity_defect() const {
    SparseMatrix adj = rho_.adjoint();
    SparseMatrix diff = rho_ - adj;
    double worst = 0.0;
    for (Eigen::Index k = 0; k < diff.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
    return worst;
  }

  template <typename Visitor>
  void for_each_entry(Visitor&& visit) const {
    for (Eigen::Index k = 0; k < rho_.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(rho_, k); it; ++it) {
        const auto row = static_cast<std::size_t>(it.row());
        const auto col = static_cast<std::size_t>(it.col());
        visit(row / n_max_, row % n_max_, col / n_max_, col % n_max_, it.value());
      }
  }

 private:
  std::size_t n_max_;
  SparseMatrix rho_;
};

namespace detail {

inline double max_abs_entry(const DenseMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Diagonalizes a Hermitian matrix block by block. Blocks are the connected
// components of the graph whose edges are the nonzero off-diagonal entries.
inline Spectrum block_spectrum(const SparseMatrix& a) {
  const auto dim = static_cast<std::size_t>(a.rows());
  DisjointSets sets(dim);
  for (Eigen::Index k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it)
      if (it.row() != it.col() && it.value() != cplx(0.0, 0.0))
        sets.unite(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()));

  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::ptrdiff_t> block_of_root(dim, -1);
  std::vector<std::size_t> local(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto root = sets.find(i);
    if (block_of_root[root] < 0) {
      block_of_root[root] = static_cast<std::ptrdiff_t>(blocks.size());
      blocks.emplace_back();
    }
    auto& block = blocks[static_cast<std::size_t>(block_of_root[root])];
    local[i] = block.size();
    block.push_back(i);
  }

  std::vector<DenseMatrix> dense(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto n = static_cast<Eigen::Index>(blocks[b].size());
    dense[b] = DenseMatrix::Zero(n, n);
  }
  for (Eigen::Index k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
      const auto r = static_cast<std::size_t>(it.row());
      const auto c = static_cast<std::size_t>(it.col());
      const auto b = static_cast<std::size_t>(block_of_root[sets.find(r)]);
      dense[b](static_cast<Eigen::Index>(local[r]), static_cast<Eigen::Index>(local[c])) = it.value();
    }

  std::vector<double> values;
  values.reserve(dim);
  for (auto& block : dense) {
    if (block.rows() == 1) {
      values.push_back(block(0, 0).real());
      continue;
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(block);
    if (solver.info() != Eigen::Success) throw convergence_error("Hermitian eigensolver did not converge");
    const auto& evals = solver.eigenvalues();
    const auto& evecs = solver.eigenvectors();
    const DenseMatrix rebuilt = evecs * evals.cast<cplx>().asDiagonal() * evecs.adjoint();
    const double residual = max_abs_entry(rebuilt - block);
    if (residual > 1e-9 * static_cast<double>(block.rows()))
      throw consistency_error("eigendecomposition residual " + std::to_string(residual) + " too large");
    for (Eigen::Index i = 0; i < evals.size(); ++i) values.push_back(evals(i));
  }
  return Spectrum(std::move(values));
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, descending.
inline Spectrum eig_spectrum(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw domain_error("eig_spectrum needs a square matrix");
  SparseMatrix adj = a.adjoint();
  SparseMatrix diff = a - adj;
  for (Eigen::Index k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
      if (std::abs(it.value()) > kHermitianTolerance)
        throw domain_error("eig_spectrum: matrix is not Hermitian (defect " +
                           std::to_string(std::abs(it.value())) + ")");
  return detail::block_spectrum(a);
}

inline Spectrum eig_spectrum(const DenseMatrix& a) {
  const SparseMatrix s = a.sparseView(0.0, 0.0);
  return eig_spectrum(s);
}

inline Spectrum eig_spectrum(const TwoModeState& rho) { return eig_spectrum(rho.matrix()); }
inline Spectrum eig_spectrum(const OneModeState& rho) { return eig_spectrum(rho.rho); }

namespace detail {

inline double xlogx_clipped(double x, const char* what) {
  if (x < -kEigenvalueFloor)
    throw invalid_spectrum(std::string(what) + " entry " + std::to_string(x) + " is negative");
  return x > 0.0 ? x * std::log(x) : 0.0;
}

}  // namespace detail

/// -sum v ln v in nats, with 0 ln 0 = 0.
inline double von_neumann_entropy(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s -= detail::xlogx_clipped(v, "spectrum");
  return std::max(s, 0.0);
}

inline double von_neumann_entropy(const Spectrum& s) { return von_neumann_entropy(std::span(s.values())); }

/// Shannon entropy of a probability table in nats. Entries below
/// -kEigenvalueFloor are rejected; smaller negative rounding noise counts as 0.
inline double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double v : probabilities) h -= detail::xlogx_clipped(v, "probability");
  return std::max(h, 0.0);
}

inline double shannon_entropy(const Eigen::MatrixXd& table) {
  return shannon_entropy(std::span<const double>(table.data(), static_cast<std::size_t>(table.size())));
}

/// Reduced state after tracing out `traced`.
inline OneModeState partial_trace(const TwoModeState& rho, Mode traced) {
  const auto n = static_cast<Eigen::Index>(rho.n_max());
  OneModeState out{DenseMatrix::Zero(n, n)};
  rho.for_each_entry([&](std::size_t m, std::size_t k, std::size_t mp, std::size_t kp, cplx v) {
    if (traced == Mode::A) {
      if (m == mp) out.rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(kp)) += v;
    } else {
      if (k == kp) out.rho(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(mp)) += v;
    }
  });
  return out;
}

/// Transpose with respect to the degrees of freedom of one mode:
/// <m,n| rho^{T_A} |m',n'> = <m',n| rho |m,n'>.
inline TwoModeState partial_transpose(const TwoModeState& rho, Mode mode) {
  const auto n_max = rho.n_max();
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(rho.matrix().nonZeros()));
  rho.for_each_entry([&](std::size_t m, std::size_t n, std::size_t mp, std::size_t np, cplx v) {
    std::size_t row = 0;
    std::size_t col = 0;
    if (mode == Mode::A) {
      row = fock_index(mp, n, n_max);
      col = fock_index(m, np, n_max);
    } else {
      row = fock_index(m, np, n_max);
      col = fock_index(mp, n, n_max);
    }
    entries.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col), v);
  });
  return TwoModeState::from_triplets(n_max, entries);
}

/// Eigenvalues of zeta1 |phi1><phi1| + zeta2 |phi2><phi2| for normalized
/// |phi_i> with |<phi1|phi2>|^2 = overlap_sq.
inline std::pair<double, double> two_component_mixture_spectrum(double zeta1, double zeta2, double overlap_sq) {
  constexpr double slack = 1e-12;
  if (zeta1 < -slack || zeta2 < -slack || std::abs(zeta1 + zeta2 - 1.0) > slack)
    throw domain_error("mixture weights must be nonnegative and sum to 1");
  if (overlap_sq < -slack || overlap_sq > 1.0 + slack) throw domain_error("overlap must lie in [0,1]");
  zeta1 = std::clamp(zeta1, 0.0, 1.0);
  zeta2 = std::clamp(zeta2, 0.0, 1.0);
  overlap_sq = std::clamp(overlap_sq, 0.0, 1.0);
  const double x = std::clamp(4.0 * zeta1 * zeta2 * (1.0 - overlap_sq), 0.0, 1.0);
  const double root = std::sqrt(1.0 - x);
  // (1 - root)/2 rewritten to avoid cancellation when x is small.
  return {0.5 * (1.0 + root), 0.5 * x / (1.0 + root)};
}

/// True iff `a` is more mixed than `b`: every partial sum of the descending
/// values of a is at most the matching partial sum of b (shorter list padded
/// with zeros).
inline bool is_more_mixed(const Spectrum& a, const Spectrum& b, double tol = 1e-12) {
  const auto n = std::max(a.size(), b.size());
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sa += k < a.size() ? a[k] : 0.0;
    sb += k < b.size() ? b[k] : 0.0;
    if (sa > sb + tol) return false;
  }
  return true;
}

/// Density-operator checks: Hermitian within 1e-12, trace within eps_tail of
/// one, eigenvalues above -1e-10. Throws on violation.
inline void validate_state(const TwoModeState& rho, double eps_tail) {
  if (rho.hermiticity_defect() > kHermitianTolerance) throw domain_error("state is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > eps_tail)
    throw truncation_error("state trace " + std::to_string(rho.trace()) + " deviates from 1 by more than eps_tail");
  if (eig_spectrum(rho).min() < -kEigenvalueFloor) throw invalid_spectrum("state has a negative eigenvalue");
}

inline void validate_state(const OneModeState& rho, double eps_tail) {
  if (detail::max_abs_entry(rho.rho - rho.rho.adjoint()) > kHermitianTolerance)
    throw domain_error("state is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > eps_tail)
    throw truncation_error("state trace deviates from 1 by more than eps_tail");
  if (eig_spectrum(rho).min() < -kEigenvalueFloor) throw invalid_spectrum("state has a negative eigenvalue");
}

}  // namespace cvw
