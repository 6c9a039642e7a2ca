#pragma once

// The partial transpose ρ̃ of the Werner state with λ_W = μ² = λ and
// p = (1-λ)/2 is itself a state,
//   ρ̃ = 𝒩 Σ λ^{m+n} (|n,m><m,n| + |m,n><m,n|),  𝒩 = (1-λ²)(1-λ)/2,
// with eigenvalues a_m = 2𝒩λ^{2m} and b_mn = 2𝒩λ^{m+n} (m > n). Everything
// but the reduced entropy has a closed form; that one is a fast series.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cvw/errors.hpp"
#include "cvw/fock_core.hpp"
#include "cvw/states.hpp"

namespace cvw {

/// Nonzero eigenvalues of ρ̃ restricted to m, n < n_max, zero padded to
/// the two-mode dimension.
inline Spectrum ppt_eigenvalues(double lambda, std::size_t n_max) {
  check_factor(lambda, "lambda");
  const double two_n = 2.0 * ppt_normalization(lambda);
  std::vector<double> v;
  v.reserve(n_max * n_max);
  for (std::size_t m = 0; m < n_max; ++m) {
    v.push_back(two_n * std::pow(lambda, 2.0 * static_cast<double>(m)));
    for (std::size_t n = 0; n < m; ++n) v.push_back(two_n * std::pow(lambda, static_cast<double>(m + n)));
  }
  v.resize(n_max * n_max, 0.0);
  return Spectrum(std::move(v));
}

namespace detail {

// λ(1+3λ) ln λ/(1-λ²), → 0 at λ = 0.
inline double ppt_log_term(double lambda) {
  if (lambda == 0.0) return 0.0;
  return lambda * (1.0 + 3.0 * lambda) * std::log(lambda) / (1.0 - lambda * lambda);
}

}  // namespace detail

/// S(ρ̃) = -[ln(2𝒩) + λ(1+3λ) ln λ/(1-λ²)].
inline double ppt_global_entropy(double lambda) {
  check_factor(lambda, "lambda");
  if (lambda == 0.0) return 0.0;
  return -(std::log(2.0 * ppt_normalization(lambda)) + detail::ppt_log_term(lambda));
}

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;  // bound on the omitted terms
  std::size_t terms = 0;
};

/// p̃_B(m) = 𝒩λ^m(λ^m + 1/(1-λ)).
inline double ppt_reduced_probability(double lambda, std::size_t m) {
  const double lm = std::pow(lambda, static_cast<double>(m));
  return ppt_normalization(lambda) * lm * (lm + 1.0 / (1.0 - lambda));
}

/// S(ρ̃_B) from its series, summed until the geometric tail bound drops
/// below tol.
inline SeriesValue ppt_reduced_entropy(double lambda, double tol = 1e-10) {
  check_factor(lambda, "lambda");
  if (!(tol > 0.0)) throw domain_error("series tolerance must be positive");
  SeriesValue out;
  if (lambda == 0.0) return out;
  const double norm = ppt_normalization(lambda);
  const double inv = 1.0 / (1.0 - lambda);
  // Each term is at most 𝒩(λ^{2m} + λ^m/(1-λ)) ln(1 + 1/(1-λ)).
  const double log_cap = std::log1p(inv);
  double sum = 0.0;
  double lm = 1.0;
  for (std::size_t m = 0;; ++m, lm *= lambda) {
    out.tail_bound = norm * log_cap * (lm * lm / (1.0 - lambda * lambda) + lm * inv * inv);
    if (out.tail_bound < tol) break;
    sum += norm * (lm * lm + lm * inv) * std::log(lm + inv);
    out.terms = m + 1;
  }
  out.value = -(sum + std::log(norm) + 0.5 * detail::ppt_log_term(lambda));
  return out;
}

/// -Σ_{m,n} p̃_AB ln p̃_AB for p̃_AB(m,n) = 𝒩λ^{m+n}(1 + δ_mn), from
/// geometric sums.
inline double ppt_joint_shannon_entropy(double lambda) {
  check_factor(lambda, "lambda");
  if (lambda == 0.0) return 0.0;
  const double norm = ppt_normalization(lambda);
  const double ln_l = std::log(lambda);
  const double all_mass = 1.0 / ((1.0 - lambda) * (1.0 - lambda));
  const double all_power = 2.0 * lambda / std::pow(1.0 - lambda, 3);  // Σ (m+n)λ^{m+n}
  const double diag_mass = 1.0 / (1.0 - lambda * lambda);
  const double diag_power = 2.0 * lambda * lambda / std::pow(1.0 - lambda * lambda, 2);  // Σ 2m λ^{2m}
  const double off = -norm * ((all_mass - diag_mass) * std::log(norm) + (all_power - diag_power) * ln_l);
  const double diag = -2.0 * norm * (diag_mass * std::log(2.0 * norm) + diag_power * ln_l);
  return off + diag;
}

struct PptConditional {
  double value = 0.0;   // S(ρ̃) - S(ρ̃_B) + λ ln 2
  double direct = 0.0;  // Σ_m p̃_B(m) S(ρ̃_{A|m})
  double tail_bound = 0.0;
};

/// ℋ̃_eig(A|B). The direct sum over photon counts uses the eigenvalues
/// 𝒩(λ^{2m}δ_km + λ^{m+k}) of each conditional state; a mismatch above
/// 1e-8 throws consistency_error.
inline PptConditional ppt_conditional_entropy(double lambda, double tol = 1e-12) {
  check_factor(lambda, "lambda");
  PptConditional out;
  if (lambda == 0.0) return out;
  const auto reduced = ppt_reduced_entropy(lambda, tol);
  out.value = ppt_global_entropy(lambda) - reduced.value + lambda * std::numbers::ln2;
  out.tail_bound = reduced.tail_bound;

  const double norm = ppt_normalization(lambda);
  const double ln_l = std::log(lambda);
  // Σ_m p̃_B(m) S(ρ̃_{A|m}) = -Σ_{m,k} c_mk ln c_mk + Σ_m p̃_B ln p̃_B with
  // c_mk = 𝒩(λ^{2m}δ_km + λ^{m+k}) the unnormalized eigenvalues.
  double joint = 0.0;
  double marginal = 0.0;
  double lm = 1.0;
  for (std::size_t m = 0;; ++m, lm *= lambda) {
    const double p_b = ppt_reduced_probability(lambda, m);
    if (p_b < tol * 1e-3 && m > 0) break;
    const double c = norm * lm;
    // Σ_k c λ^k ln(c λ^k) over all k, then fix the k = m term.
    double row = c * (std::log(c) / (1.0 - lambda) + ln_l * lambda / ((1.0 - lambda) * (1.0 - lambda)));
    const double plain = c * lm;
    const double doubled = 2.0 * c * lm;
    row += -(plain > 0.0 ? plain * std::log(plain) : 0.0) + (doubled > 0.0 ? doubled * std::log(doubled) : 0.0);
    joint -= row;
    marginal -= p_b * std::log(p_b);
  }
  out.direct = joint - marginal;
  if (std::abs(out.direct - out.value) > 1e-8)
    throw consistency_error("PPT conditional entropy: analytic " + std::to_string(out.value) + " vs direct " +
                            std::to_string(out.direct));
  return out;
}

struct PptReport {
  double lambda = 0.0;
  double norm_const = 0.0;
  double s_global = 0.0;
  double s_reduced = 0.0;
  double h_eig = 0.0;
  double h_joint = 0.0;  // H(p̃_AB)
  double U = 0.0;
  double L = 0.0;
  double mid = 0.0;
  double error_budget = 0.0;
};

inline PptReport ppt_bounds(double lambda, double tol = 1e-10) {
  check_factor(lambda, "lambda");
  PptReport r;
  r.lambda = lambda;
  r.norm_const = ppt_normalization(lambda);
  if (lambda == 0.0) return r;
  r.s_global = ppt_global_entropy(lambda);
  const auto reduced = ppt_reduced_entropy(lambda, tol);
  r.s_reduced = reduced.value;
  r.h_eig = ppt_conditional_entropy(lambda).value;
  r.U = lambda * std::numbers::ln2;
  r.L = r.s_reduced - r.s_global + 0.5 * (1.0 + lambda) * thermal_entropy(std::sqrt(lambda));
  r.h_joint = ppt_joint_shannon_entropy(lambda);
  r.mid = r.h_joint - r.s_global;
  r.error_budget = reduced.tail_bound;
  return r;
}

}  // namespace cvw
