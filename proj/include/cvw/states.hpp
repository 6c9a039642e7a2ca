#pragma once

// Constructors for the two-mode state families: two-mode squeezed vacuum,
// thermal states, the CV Werner mixture, maximally correlated states and the
// partially transposed Werner state at its PPT point.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cvw/errors.hpp"
#include "cvw/fock_core.hpp"

namespace cvw {

/// (p, λ, μ) with λ = tanh r the squeezing factor and μ² = <n>/(1 + <n>)
/// the thermal factor.
struct WernerParams {
  double p = 0.0;
  double lambda = 0.0;
  double mu = 0.0;

  double squeezing() const { return std::atanh(lambda); }
  double mean_thermal_photons() const { return mu * mu / (1.0 - mu * mu); }
};

inline void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw domain_error("p must lie in [0,1], got " + std::to_string(p));
}

inline void check_factor(double x, const char* name) {
  if (!(x >= 0.0 && x < 1.0))
    throw domain_error(std::string(name) + " must lie in [0,1), got " + std::to_string(x));
}

inline void validate(const WernerParams& w) {
  check_probability(w.p);
  check_factor(w.lambda, "lambda");
  check_factor(w.mu, "mu");
}

/// 1 - Tr of the Werner state truncated to n_max photons per mode.
inline double truncation_deficit(const WernerParams& w, std::size_t n_max) {
  const double n = static_cast<double>(n_max);
  const double tmsv_tail = std::pow(w.lambda * w.lambda, n);
  const double thermal_kept = 1.0 - std::pow(w.mu * w.mu, n);
  return w.p * tmsv_tail + (1.0 - w.p) * (1.0 - thermal_kept * thermal_kept);
}

/// Smallest n_max >= 2 whose truncation deficit is below eps_tail.
inline FockCutoff choose_cutoff(const WernerParams& w, double eps_tail, std::size_t max_n_max = 20000) {
  validate(w);
  if (!(eps_tail > 0.0)) throw domain_error("eps_tail must be positive");
  const double x = std::max(w.lambda * w.lambda, w.mu * w.mu);
  std::size_t n = 2;
  if (x > 0.0) {
    // Deficit <= 2 x^n; start just below the bound and walk up.
    const double guess = std::floor(std::log(eps_tail / 2.0) / std::log(x)) - 2.0;
    n = std::max<std::size_t>(2, guess > 2.0 ? static_cast<std::size_t>(guess) : 2);
    while (n > 2 && truncation_deficit(w, n - 1) < eps_tail) --n;
  }
  while (n > max_n_max || truncation_deficit(w, n) >= eps_tail) {
    if (n > max_n_max || ++n > max_n_max) throw truncation_error("no cutoff below " + std::to_string(max_n_max) + " meets eps_tail");
  }
  return {n, eps_tail};
}

/// Two-mode squeezed vacuum sqrt(1-λ²) Σ λⁿ |n,n>, truncated.
struct SqueezedVacuum {
  std::size_t n_max = 0;
  std::vector<double> schmidt;  // amplitude on |n,n>

  Eigen::VectorXcd ket() const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n_max * n_max));
    for (std::size_t n = 0; n < n_max; ++n) v(static_cast<Eigen::Index>(fock_index(n, n, n_max))) = schmidt[n];
    return v;
  }

  double norm_sq() const {
    double s = 0.0;
    for (double c : schmidt) s += c * c;
    return s;
  }

  TwoModeState projector() const {
    std::vector<Triplet> entries;
    entries.reserve(n_max * n_max);
    for (std::size_t m = 0; m < n_max; ++m)
      for (std::size_t n = 0; n < n_max; ++n)
        entries.emplace_back(static_cast<Eigen::Index>(fock_index(m, m, n_max)),
                             static_cast<Eigen::Index>(fock_index(n, n, n_max)), schmidt[m] * schmidt[n]);
    return TwoModeState::from_triplets(n_max, entries);
  }
};

inline SqueezedVacuum tmsv(double lambda, const FockCutoff& cutoff) {
  check_factor(lambda, "lambda");
  validate(cutoff);
  SqueezedVacuum out{cutoff.n_max, std::vector<double>(cutoff.n_max)};
  const double norm = std::sqrt(1.0 - lambda * lambda);
  double power = 1.0;
  for (std::size_t n = 0; n < cutoff.n_max; ++n) {
    out.schmidt[n] = norm * power;
    power *= lambda;
  }
  return out;
}

/// Geometric occupation (1-μ²) μ^{2n}, n < n_max.
inline std::vector<double> thermal_weights(double mu, std::size_t n_max) {
  check_factor(mu, "mu");
  std::vector<double> w(n_max);
  double power = 1.0;
  for (std::size_t n = 0; n < n_max; ++n) {
    w[n] = (1.0 - mu * mu) * power;
    power *= mu * mu;
  }
  return w;
}

inline OneModeState thermal(double mu, const FockCutoff& cutoff) {
  validate(cutoff);
  const auto w = thermal_weights(mu, cutoff.n_max);
  const auto n = static_cast<Eigen::Index>(cutoff.n_max);
  OneModeState out{DenseMatrix::Zero(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) out.rho(k, k) = w[static_cast<std::size_t>(k)];
  return out;
}

/// Entropy of the (untruncated) thermal state with factor μ, in nats.
inline double thermal_entropy(double mu) {
  check_factor(mu, "mu");
  const double x = mu * mu;
  if (x == 0.0) return 0.0;
  return -std::log1p(-x) / (1.0 - x) - x / (1.0 - x) * std::log(x / (1.0 - x));
}

struct StateOptions {
  // Rescale the truncated state to unit trace. Off by default so that the
  // trace deficit stays visible to diagnostics.
  bool renormalize = false;
};

namespace detail {

inline TwoModeState finish(std::size_t n_max, std::vector<Triplet>& entries, const StateOptions& opts) {
  auto state = TwoModeState::from_triplets(n_max, entries);
  if (opts.renormalize) {
    const double tr = state.trace();
    if (tr > 0.0) {
      SparseMatrix scaled = state.matrix() / cplx(tr, 0.0);
      return TwoModeState(n_max, std::move(scaled));
    }
  }
  return state;
}

}  // namespace detail

/// p |ψ(λ)><ψ(λ)| + (1-p) ρ_th(μ) ⊗ ρ_th(μ).
inline TwoModeState werner(const WernerParams& w, const FockCutoff& cutoff, const StateOptions& opts = {}) {
  validate(w);
  validate(cutoff);
  const auto n_max = cutoff.n_max;
  const auto psi = tmsv(w.lambda, cutoff);
  const auto th = thermal_weights(w.mu, n_max);
  std::vector<Triplet> entries;
  entries.reserve(2 * n_max * n_max);
  if (w.p > 0.0)
    for (std::size_t m = 0; m < n_max; ++m)
      for (std::size_t n = 0; n < n_max; ++n)
        entries.emplace_back(static_cast<Eigen::Index>(fock_index(m, m, n_max)),
                             static_cast<Eigen::Index>(fock_index(n, n, n_max)), w.p * psi.schmidt[m] * psi.schmidt[n]);
  if (w.p < 1.0)
    for (std::size_t m = 0; m < n_max; ++m)
      for (std::size_t n = 0; n < n_max; ++n) {
        const double v = (1.0 - w.p) * th[m] * th[n];
        if (v == 0.0) continue;
        const auto k = static_cast<Eigen::Index>(fock_index(m, n, n_max));
        entries.emplace_back(k, k, v);
      }
  return detail::finish(n_max, entries, opts);
}

/// Coefficients q_mn of a maximally correlated state Σ q_mn |mm><nn|.
class MaxCorrCoeffs {
 public:
  /// Checks q Hermitian, unit trace within `trace_tol`, and positive
  /// semidefinite (the induced operator on |mm> is PSD iff [q_mn] is).
  static MaxCorrCoeffs create(DenseMatrix q, double trace_tol = 1e-10) {
    if (q.rows() != q.cols() || q.rows() < 1) throw domain_error("q must be a nonempty square matrix");
    if (detail::max_abs_entry(q - q.adjoint()) > kHermitianTolerance) throw domain_error("q must be Hermitian");
    if (std::abs(q.trace().real() - 1.0) > trace_tol) throw domain_error("q must have unit trace");
    if (eig_spectrum(q).min() < -kEigenvalueFloor) throw domain_error("q is not positive semidefinite");
    return MaxCorrCoeffs(std::move(q));
  }

  const DenseMatrix& matrix() const { return q_; }
  std::size_t size() const { return static_cast<std::size_t>(q_.rows()); }

 private:
  explicit MaxCorrCoeffs(DenseMatrix q) : q_(std::move(q)) {}
  DenseMatrix q_;
};

/// q_mn = Σ_i w_i (1-λ_i²) λ_i^{m+n}: a convex mixture of squeezed vacua.
inline DenseMatrix squeezed_vacuum_mixture_coeffs(const std::vector<double>& weights,
                                                  const std::vector<double>& lambdas, std::size_t n_max) {
  if (weights.size() != lambdas.size()) throw domain_error("weights and lambdas differ in length");
  const auto n = static_cast<Eigen::Index>(n_max);
  DenseMatrix q = DenseMatrix::Zero(n, n);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    check_probability(weights[i]);
    check_factor(lambdas[i], "lambda");
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        q(a, b) += weights[i] * (1.0 - lambdas[i] * lambdas[i]) * std::pow(lambdas[i], static_cast<double>(a + b));
  }
  return q;
}

/// Σ q_mn |mm><nn|, truncated (or zero padded) to the cutoff.
inline TwoModeState maximally_correlated(const MaxCorrCoeffs& q, const FockCutoff& cutoff,
                                         const StateOptions& opts = {}) {
  validate(cutoff);
  const auto n_max = cutoff.n_max;
  const auto n = std::min(n_max, q.size());
  std::vector<Triplet> entries;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const cplx v = q.matrix()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      if (v != cplx(0.0, 0.0))
        entries.emplace_back(static_cast<Eigen::Index>(fock_index(a, a, n_max)),
                             static_cast<Eigen::Index>(fock_index(b, b, n_max)), v);
    }
  return detail::finish(n_max, entries, opts);
}

/// Normalization 𝒩 = (1-λ²)(1-λ)/2 of the partially transposed Werner state.
inline double ppt_normalization(double lambda) { return (1.0 - lambda * lambda) * (1.0 - lambda) / 2.0; }

/// Werner parameters whose partial transpose is ppt_werner(λ):
/// p = (1-λ)/2, squeezing factor λ, thermal factor √λ.
inline WernerParams ppt_werner_source(double lambda) {
  check_factor(lambda, "lambda");
  return {(1.0 - lambda) / 2.0, lambda, std::sqrt(lambda)};
}

/// 𝒩 Σ λ^{m+n} (|n,m><m,n| + |m,n><m,n|).
inline TwoModeState ppt_werner(double lambda, const FockCutoff& cutoff, const StateOptions& opts = {}) {
  check_factor(lambda, "lambda");
  validate(cutoff);
  const auto n_max = cutoff.n_max;
  const double norm = ppt_normalization(lambda);
  std::vector<Triplet> entries;
  entries.reserve(2 * n_max * n_max);
  for (std::size_t m = 0; m < n_max; ++m)
    for (std::size_t n = 0; n < n_max; ++n) {
      const double v = norm * std::pow(lambda, static_cast<double>(m + n));
      if (v == 0.0) continue;
      const auto mn = static_cast<Eigen::Index>(fock_index(m, n, n_max));
      const auto nm = static_cast<Eigen::Index>(fock_index(n, m, n_max));
      entries.emplace_back(nm, mn, v);
      entries.emplace_back(mn, mn, v);
    }
  return detail::finish(n_max, entries, opts);
}

}  // namespace cvw
