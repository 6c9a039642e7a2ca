#pragma once

// Entropic non-Gaussianity of ρ₀ and the gap between its Gaussian and exact
// discord.
//
// δ₀ = S(τ₀) - S(ρ₀) where τ₀ is the Gaussian state with the moments of ρ₀.
// The gap Δ𝒟 = 𝒟^G - 𝒟 equals the minimal Gaussian conditional entropy,
// since photon counting gives zero conditional entropy on ρ₀.

#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/Dense>

#include "cvw/exact_special.hpp"
#include "cvw/gaussian_povm.hpp"

namespace cvw {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Γ₀ = [[C,0,S,0],[0,C,0,-S],[S,0,C,0],[0,-S,0,C]] in (x_A, p_A, x_B, p_B)
/// order, vacuum variance 1.
struct CovarianceMatrix4 {
  double C = 1.0;
  double S = 0.0;

  Eigen::Matrix4d matrix() const {
    Eigen::Matrix4d g;
    g << C, 0, S, 0,  //
        0, C, 0, -S,  //
        S, 0, C, 0,   //
        0, -S, 0, C;
    return g;
  }

  /// Doubly degenerate symplectic eigenvalue √(C² - S²).
  double symplectic_eigenvalue() const { return std::sqrt(std::max(0.0, (C - S) * (C + S))); }
};

inline CovarianceMatrix4 covariance_rho0(double p, double lambda) {
  validate_rho0(p, lambda);
  const double l2 = lambda * lambda;
  return {p * (1.0 + l2) / (1.0 - l2) + (1.0 - p), p * 2.0 * lambda / (1.0 - l2)};
}

/// ν = √([1 - (1-2p)²λ²]/(1 - λ²)).
inline double symplectic_eigenvalue_rho0(double p, double lambda) {
  validate_rho0(p, lambda);
  const double a = (1.0 - 2.0 * p) * lambda;
  return std::sqrt((1.0 - a * a) / (1.0 - lambda * lambda));
}

/// Entropy of a two-mode Gaussian state with both symplectic eigenvalues ν.
inline double gaussian_reference_entropy(double nu) {
  if (!(nu >= 1.0 - 1e-12)) throw domain_error("symplectic eigenvalue below 1");
  const double d = nu - 1.0;
  const double plus = (nu + 1.0) * std::log((nu + 1.0) / 2.0);
  if (d < 1e-12) return std::max(0.0, plus);
  return plus - d * std::log(d / 2.0);
}

inline double nongaussianity_delta0(double p, double lambda) {
  const double s_tau = gaussian_reference_entropy(symplectic_eigenvalue_rho0(p, lambda));
  return s_tau - global_entropy_rho0(p, lambda);
}

/// Φ_λ = π[ln(4/λ²) + 1]/[ln(8/λ²) + γ - 1], with Φ₀ = π.
inline double phi_lambda(double lambda) {
  check_factor(lambda, "lambda");
  if (lambda == 0.0) return std::numbers::pi;
  const double l2 = lambda * lambda;
  return std::numbers::pi * (std::log(4.0 / l2) + 1.0) / (std::log(8.0 / l2) + kEulerGamma - 1.0);
}

/// Quadratic-order expansion of δ₀ in λ.
inline double delta0_low_squeezing(double p, double lambda) {
  validate_rho0(p, lambda);
  if (p == 0.0 || p == 1.0 || lambda == 0.0) return 0.0;
  return (p - 1.0) * p * lambda * lambda * (-1.0 + std::log(p * (1.0 - p)) + 2.0 * std::log(lambda));
}

/// Quadratic-order expansion of Δ𝒟 in λ, including its 1/π prefactor.
inline double gap_low_squeezing(double p, double lambda) {
  validate_rho0(p, lambda);
  if (p == 0.0 || p == 1.0 || lambda == 0.0) return 0.0;
  return (p - 1.0) * p * lambda * lambda *
         (1.0 - kEulerGamma - std::numbers::ln2 + std::log(p * (1.0 - p)) + 2.0 * std::log(lambda)) /
         std::numbers::pi;
}

struct GapOptions {
  GaussianDiscordOptions discord{};
  // Also form 𝒟^G - 𝒟 from truncated-matrix entropies. Costly at large λ.
  bool difference_check = false;
  double eps_tail = 1e-12;
};

struct GapReport {
  double p = 0.0;
  double lambda = 0.0;
  double delta0 = 0.0;
  double gap = 0.0;             // Δ𝒟 = min ℋ^G
  double gap_normalized = 0.0;  // Φ_λ Δ𝒟
  double phi_lambda = 0.0;
  double delta0_approx = 0.0;
  double gap_approx = 0.0;
  double gaussian_discord = 0.0;
  double discord = 0.0;
  GaussianPovmParams argmin;
  std::optional<double> gap_by_difference;
};

inline GapReport discord_gap(double p, double lambda, const GapOptions& opts = {}) {
  validate_rho0(p, lambda);
  GapReport r;
  r.p = p;
  r.lambda = lambda;
  r.delta0 = nongaussianity_delta0(p, lambda);
  r.phi_lambda = phi_lambda(lambda);
  r.delta0_approx = delta0_low_squeezing(p, lambda);
  r.gap_approx = gap_low_squeezing(p, lambda);

  const auto g = gaussian_discord_rho0(p, lambda, opts.discord);
  r.gap = g.conditional_entropy;
  r.gap_normalized = r.phi_lambda * r.gap;
  r.gaussian_discord = g.value;
  r.discord = g.discord;
  r.argmin = g.argmin;

  if (opts.difference_check) {
    const WernerParams w{p, lambda, 0.0};
    const auto truncated = discord_rho0(p, lambda, Route::truncated_matrix, choose_cutoff(w, opts.eps_tail));
    const double gaussian = truncated.s_reduced - truncated.s_global + g.conditional_entropy;
    r.gap_by_difference = gaussian - discord_rho0(p, lambda).discord;
  }
  return r;
}

}  // namespace cvw
