#pragma once

// Discord bounds for Werner states with μ > 0, where no optimal measurement
// is known. The upper bound 𝒰 uses photon counting on B (the eigenbasis of
// ρ_B); the lower bound ℒ follows from concavity of the entropy applied to
// the pure-plus-thermal conditional states. MID equals 𝒰 for these states.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvw/errors.hpp"
#include "cvw/exact_special.hpp"
#include "cvw/fock_core.hpp"
#include "cvw/states.hpp"

namespace cvw {

/// g_m = p(1-λ²)λ^{2m} + (1-p)(1-μ²)μ^{2m}, m < n_max.
inline Spectrum reduced_spectrum_gm(const WernerParams& w, std::size_t n_max) {
  validate(w);
  const double l2 = w.lambda * w.lambda;
  const double m2 = w.mu * w.mu;
  std::vector<double> g(n_max);
  double lp = 1.0;
  double mp = 1.0;
  for (std::size_t m = 0; m < n_max; ++m, lp *= l2, mp *= m2) g[m] = w.p * (1.0 - l2) * lp + (1.0 - w.p) * (1.0 - m2) * mp;
  return Spectrum(std::move(g));
}

inline double reduced_entropy_general(const WernerParams& w, std::size_t n_max) {
  return von_neumann_entropy(reduced_spectrum_gm(w, n_max));
}

/// p_AB(m,n) = <mn|ρ|mn> for the Werner state, m,n < n_max.
inline Eigen::MatrixXd joint_photon_distribution(const WernerParams& w, std::size_t n_max) {
  validate(w);
  const auto n = static_cast<Eigen::Index>(n_max);
  const double l2 = w.lambda * w.lambda;
  const auto th = thermal_weights(w.mu, n_max);
  Eigen::MatrixXd table(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      table(a, b) = (1.0 - w.p) * th[static_cast<std::size_t>(a)] * th[static_cast<std::size_t>(b)];
  double lp = 1.0;
  for (Eigen::Index a = 0; a < n; ++a, lp *= l2) table(a, a) += w.p * (1.0 - l2) * lp;
  return table;
}

namespace detail {

// S(ρ_{A|m}) summed over all n in closed form; see conditional_entropy_eig.
inline double conditional_entropy_closed(const WernerParams& w, std::size_t m, double p_b) {
  const double l2 = w.lambda * w.lambda;
  const double m2 = w.mu * w.mu;
  const double md = static_cast<double>(m);
  const double m2m = std::pow(m2, md);
  const double pure = w.p * (1.0 - l2) * std::pow(l2, md);
  const double b0 = (1.0 - w.p) * (1.0 - m2) * (1.0 - m2);  // thermal weight before μ^{2(m+n)}
  const double diag = (pure + b0 * m2m * m2m) / p_b;
  double s = diag > 0.0 ? -diag * std::log(diag) : 0.0;
  if (b0 * m2m > 0.0) {
    const double bracket = std::log(b0 / p_b) * (1.0 / (1.0 - m2) - m2m) +
                           std::log(m2) * (md / (1.0 - m2) + m2 / ((1.0 - m2) * (1.0 - m2)) - 2.0 * md * m2m);
    s -= b0 * m2m / p_b * bracket;
  }
  return s;
}

// Same entropy from the truncated list of eigenvalues η_n^{(m)}, n < n_max.
inline double conditional_entropy_direct(const WernerParams& w, std::size_t m, double p_b, std::size_t n_max) {
  const double l2 = w.lambda * w.lambda;
  const double m2 = w.mu * w.mu;
  const double b = (1.0 - w.p) * (1.0 - m2) * (1.0 - m2) * std::pow(m2, static_cast<double>(m));
  std::vector<double> eta(n_max);
  double mp = 1.0;
  for (std::size_t n = 0; n < n_max; ++n, mp *= m2) eta[n] = b * mp / p_b;
  if (m < n_max) eta[m] += w.p * (1.0 - l2) * std::pow(l2, static_cast<double>(m)) / p_b;
  return von_neumann_entropy(std::span<const double>(eta));
}

}  // namespace detail

struct ConditionalEntropyEig {
  double value = 0.0;          // Σ_m p_B(m) S(ρ_{A|m}), closed-form per-m entropies
  double direct = 0.0;         // same with truncated spectra
  std::size_t terms = 0;       // number of m summed
};

/// Photon-counting conditional entropy ℋ_eig(A|B). The per-m entropies come
/// from the closed form and from truncated spectra; a disagreement above
/// 1e-8 throws consistency_error. Terms with p_B(m) < 1e-16 are dropped.
inline ConditionalEntropyEig conditional_entropy_eig_report(const WernerParams& w, const FockCutoff& cutoff) {
  validate(w);
  validate(cutoff);
  ConditionalEntropyEig out;
  if (w.mu == 0.0 || w.p == 1.0) return out;
  const double l2 = w.lambda * w.lambda;
  const double m2 = w.mu * w.mu;
  for (std::size_t m = 0; m < cutoff.n_max; ++m) {
    const double md = static_cast<double>(m);
    const double p_b = w.p * (1.0 - l2) * std::pow(l2, md) + (1.0 - w.p) * (1.0 - m2) * std::pow(m2, md);
    if (p_b < 1e-16) break;
    out.value += p_b * detail::conditional_entropy_closed(w, m, p_b);
    out.direct += p_b * detail::conditional_entropy_direct(w, m, p_b, cutoff.n_max);
    ++out.terms;
  }
  if (std::abs(out.value - out.direct) > 1e-8)
    throw consistency_error("conditional entropy: closed form " + std::to_string(out.value) + " vs direct " +
                            std::to_string(out.direct));
  return out;
}

inline double conditional_entropy_eig(const WernerParams& w, const FockCutoff& cutoff) {
  return conditional_entropy_eig_report(w, cutoff).value;
}

struct GlobalEntropyParts {
  double e_branch = 0.0;  // -Σ_{m≠n} e_mn ln e_mn, closed form
  double f_branch = 0.0;  // -Σ f_l ln f_l from the truncated M
  double e_mass = 0.0;    // Σ_{m≠n} e_mn
  double f_mass = 0.0;    // Σ f_l
  double value() const { return e_branch + f_branch; }
};

/// S(ρ) split into the |m,n>, m ≠ n, eigenvalues e_mn (summed analytically)
/// and the eigenvalues f_l of M_mn = p(1-λ²)λ^{m+n} + (1-p)(1-μ²)²μ^{4m}δ_mn.
/// Throws truncation_error when the recovered trace misses 1 by > eps_tail.
inline GlobalEntropyParts global_entropy_parts(const WernerParams& w, const FockCutoff& cutoff) {
  validate(w);
  validate(cutoff);
  const double l2 = w.lambda * w.lambda;
  const double m2 = w.mu * w.mu;
  GlobalEntropyParts out;
  if (w.mu > 0.0 && w.p < 1.0) {
    const double m4 = m2 * m2;
    const double k = (1.0 - w.p) * (1.0 - m2) * (1.0 - m2);
    out.e_mass = (1.0 - w.p) * 2.0 * m2 / (1.0 + m2);
    out.e_branch = -out.e_mass * (std::log(k) + 2.0 * std::log(w.mu) * (1.0 + m2 + 2.0 * m4) / (1.0 - m4));
  }

  const auto n = static_cast<Eigen::Index>(cutoff.n_max);
  Eigen::VectorXd amp(n);
  double lp = 1.0;
  for (Eigen::Index a = 0; a < n; ++a, lp *= w.lambda) amp(a) = lp;
  Eigen::MatrixXd M = w.p * (1.0 - l2) * amp * amp.transpose();
  double mp = 1.0;
  for (Eigen::Index a = 0; a < n; ++a, mp *= m2 * m2) M(a, a) += (1.0 - w.p) * (1.0 - m2) * (1.0 - m2) * mp;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw convergence_error("eigensolver failed on M");
  const Eigen::VectorXd f = solver.eigenvalues();
  out.f_mass = f.sum();
  out.f_branch = von_neumann_entropy(std::span<const double>(f.data(), static_cast<std::size_t>(f.size())));

  const double total = out.e_mass + out.f_mass;
  if (std::abs(total - 1.0) > cutoff.eps_tail)
    throw truncation_error("eigenvalue branches sum to " + std::to_string(total) + " at n_max=" +
                           std::to_string(cutoff.n_max) + "; raise the cutoff");
  return out;
}

inline double global_entropy_general(const WernerParams& w, const FockCutoff& cutoff) {
  return global_entropy_parts(w, cutoff).value();
}

inline double upper_bound_U(const WernerParams& w, const FockCutoff& cutoff) {
  return reduced_entropy_general(w, cutoff.n_max) - global_entropy_general(w, cutoff) +
         conditional_entropy_eig(w, cutoff);
}

/// Signed lower bound; can be negative.
inline double lower_bound_L(const WernerParams& w, const FockCutoff& cutoff) {
  return reduced_entropy_general(w, cutoff.n_max) - global_entropy_general(w, cutoff) +
         (1.0 - w.p) * thermal_entropy(w.mu);
}

/// ℳ = H(p_AB) - S(ρ). Throws consistency_error if it differs from 𝒰 by more
/// than 1e-8.
inline double mid(const WernerParams& w, const FockCutoff& cutoff) {
  const double s = global_entropy_general(w, cutoff);
  const double value = shannon_entropy(joint_photon_distribution(w, cutoff.n_max)) - s;
  const double u = reduced_entropy_general(w, cutoff.n_max) - s + conditional_entropy_eig(w, cutoff);
  if (std::abs(value - u) > 1e-8)
    throw consistency_error("MID " + std::to_string(value) + " differs from the upper bound " + std::to_string(u));
  return value;
}

/// p_sep = (1-μ²)²/(2(1-μ²+μ⁴)), for the λ = μ⁴ family.
inline double p_sep(double mu) {
  check_factor(mu, "mu");
  const double m2 = mu * mu;
  return (1.0 - m2) * (1.0 - m2) / (2.0 * (1.0 - m2 + m2 * m2));
}

/// p_PPT = (1-μ²)²/((1-μ²)² + (1-μ⁸)μ²), for the λ = μ⁴ family.
inline double p_ppt(double mu) {
  check_factor(mu, "mu");
  const double m2 = mu * mu;
  const double m8 = m2 * m2 * m2 * m2;
  return (1.0 - m2) * (1.0 - m2) / ((1.0 - m2) * (1.0 - m2) + (1.0 - m8) * m2);
}

enum class SeparabilityRegion { separable, ppt_unknown, entangled_non_ppt, not_classified };

inline const char* to_string(SeparabilityRegion r) {
  switch (r) {
    case SeparabilityRegion::separable: return "separable";
    case SeparabilityRegion::ppt_unknown: return "PPT-unknown";
    case SeparabilityRegion::entangled_non_ppt: return "entangled-nonPPT";
    case SeparabilityRegion::not_classified: return "not-classified";
  }
  return "not-classified";
}

/// Region of werner(p, μ⁴, μ).
inline SeparabilityRegion separability_region(double p, double mu) {
  check_probability(p);
  if (p <= p_sep(mu)) return SeparabilityRegion::separable;
  if (p <= p_ppt(mu)) return SeparabilityRegion::ppt_unknown;
  return SeparabilityRegion::entangled_non_ppt;
}

/// Smallest eigenvalue of the partial transpose of werner(p, μ⁴, μ).
inline double partial_transpose_min_eigenvalue(double p, double mu, const FockCutoff& cutoff) {
  const WernerParams w{p, std::pow(mu, 4), mu};
  return eig_spectrum(partial_transpose(werner(w, cutoff), Mode::A)).min();
}

/// ‖[ρ_ij, ρ_ij†]‖_F for the off-diagonal block ρ_ij = <i|_B ρ |j>_B.
inline double offdiag_block_commutator_norm(const TwoModeState& rho, std::size_t i, std::size_t j) {
  const auto n = static_cast<Eigen::Index>(rho.n_max());
  DenseMatrix block = DenseMatrix::Zero(n, n);
  rho.for_each_entry([&](std::size_t a, std::size_t b, std::size_t ap, std::size_t bp, cplx v) {
    if (b == i && bp == j) block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(ap)) += v;
  });
  const DenseMatrix comm = block * block.adjoint() - block.adjoint() * block;
  return comm.norm();
}

/// True when an off-diagonal block of ρ in B's Fock basis is non-normal,
/// which certifies 𝒟(ρ) > 0: exactly when p > 0 and 0 < λ < 1.
inline bool discord_positive_witness(double p, double lambda) {
  check_probability(p);
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw domain_error("lambda must lie in [0,1]");
  return p > 0.0 && lambda > 0.0 && lambda < 1.0;
}

struct BoundsReport {
  double p = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  std::size_t n_max = 0;
  double s_reduced = 0.0;
  double s_global = 0.0;
  double h_eig = 0.0;
  double U = 0.0;
  double L = 0.0;
  double mid = 0.0;
  double error_budget = 0.0;  // truncation plus per-m cross-check slack
  SeparabilityRegion region = SeparabilityRegion::not_classified;
};

inline BoundsReport bounds(const WernerParams& w, std::optional<FockCutoff> cutoff = std::nullopt,
                           double eps_tail = 1e-12) {
  validate(w);
  const auto fc = cutoff.value_or(choose_cutoff(w, eps_tail));
  BoundsReport r;
  r.p = w.p;
  r.lambda = w.lambda;
  r.mu = w.mu;
  r.n_max = fc.n_max;
  r.s_reduced = reduced_entropy_general(w, fc.n_max);
  const auto parts = global_entropy_parts(w, fc);
  r.s_global = parts.value();
  const auto h = conditional_entropy_eig_report(w, fc);
  r.h_eig = h.value;
  r.U = r.s_reduced - r.s_global + r.h_eig;
  r.L = r.s_reduced - r.s_global + (1.0 - w.p) * thermal_entropy(w.mu);
  r.mid = shannon_entropy(joint_photon_distribution(w, fc.n_max)) - r.s_global;
  if (std::abs(r.mid - r.U) > 1e-8)
    throw consistency_error("MID " + std::to_string(r.mid) + " differs from the upper bound " + std::to_string(r.U));
  r.error_budget = truncation_deficit(w, fc.n_max) + std::abs(h.value - h.direct) + std::abs(parts.e_mass + parts.f_mass - 1.0);
  if (w.lambda > 0.0 && std::abs(w.lambda - std::pow(w.mu, 4)) <= 1e-12)
    r.region = separability_region(w.p, w.mu);
  return r;
}

struct PhotonCountingBounds {
  double s_a = 0.0;
  double s_b = 0.0;
  double s_global = 0.0;
  double h_eig = 0.0;
  double U = 0.0;
  double mid = 0.0;
};

/// 𝒰 and MID of an explicitly built state whose reduced states are
/// diagonal in the Fock basis, so that photon counting is the local
/// eigenbasis measurement.
inline PhotonCountingBounds photon_counting_bounds(const TwoModeState& rho) {
  const auto rho_a = partial_trace(rho, Mode::B);
  const auto rho_b = partial_trace(rho, Mode::A);
  if (!rho_a.is_diagonal(1e-14) || !rho_b.is_diagonal(1e-14))
    throw domain_error("photon_counting_bounds: reduced states are not Fock diagonal");
  PhotonCountingBounds out;
  out.s_a = von_neumann_entropy(eig_spectrum(rho_a));
  out.s_b = von_neumann_entropy(eig_spectrum(rho_b));
  out.s_global = von_neumann_entropy(eig_spectrum(rho));

  const auto n = rho.n_max();
  std::vector<std::vector<Triplet>> conditional(n);
  rho.for_each_entry([&](std::size_t a, std::size_t b, std::size_t ap, std::size_t bp, cplx v) {
    if (b == bp) conditional[b].emplace_back(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(ap), v);
  });
  for (std::size_t m = 0; m < n; ++m) {
    if (conditional[m].empty()) continue;
    SparseMatrix c(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    c.setFromTriplets(conditional[m].begin(), conditional[m].end());
    const auto spec = eig_spectrum(c);
    // Σ_m p_B(m) S(c/p_B) = -Σ_k c_k ln c_k + Σ_m p_B ln p_B
    out.h_eig += von_neumann_entropy(spec);
  }
  out.h_eig -= out.s_b;
  out.U = out.s_b - out.s_global + out.h_eig;

  const auto table = photon_counting_distribution(rho);
  const Eigen::VectorXd pa = table.rowwise().sum();
  const Eigen::VectorXd pb = table.colwise().sum().transpose();
  const double info = shannon_entropy(std::span<const double>(pa.data(), static_cast<std::size_t>(pa.size()))) +
                      shannon_entropy(std::span<const double>(pb.data(), static_cast<std::size_t>(pb.size()))) -
                      shannon_entropy(table);
  out.mid = out.s_a + out.s_b - out.s_global - info;
  return out;
}

}  // namespace cvw
