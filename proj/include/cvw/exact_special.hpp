#pragma once

// Closed forms for ρ₀ = p|ψ(λ)><ψ(λ)| + (1-p)|00><00|, the Werner state at
// μ = 0. Photon counting on B leaves A in a Fock state, so the conditional
// entropy vanishes and the discord is S(ρ₀,B) - S(ρ₀). AMID and the relative
// entropy of quantumness coincide with it.

#include <cmath>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "cvw/fock_core.hpp"
#include "cvw/states.hpp"

namespace cvw {

inline void validate_rho0(double p, double lambda) {
  check_probability(p);
  check_factor(lambda, "lambda");
}

/// Nonzero eigenvalues (1 ± √(1 - 4p(1-p)λ²))/2 of ρ₀.
inline std::pair<double, double> rho0_eigenvalues(double p, double lambda) {
  validate_rho0(p, lambda);
  const double zeta1 = p;
  const double zeta2 = 1.0 - p;
  // |<ψ(λ)|00>|² = 1 - λ²
  return two_component_mixture_spectrum(zeta1, zeta2, 1.0 - lambda * lambda);
}

inline double global_entropy_rho0(double p, double lambda) {
  const auto [nu1, nu2] = rho0_eigenvalues(p, lambda);
  const double values[] = {nu1, nu2};
  return von_neumann_entropy(values);
}

/// ν̃₀ = 1 - pλ², ν̃_n = p(1-λ²)λ^{2n}, truncated to the cutoff.
inline Spectrum reduced_spectrum_rho0(double p, double lambda, std::size_t n_max) {
  validate_rho0(p, lambda);
  std::vector<double> v(n_max, 0.0);
  v[0] = 1.0 - p * lambda * lambda;
  double power = lambda * lambda;
  for (std::size_t n = 1; n < n_max; ++n, power *= lambda * lambda) v[n] = p * (1.0 - lambda * lambda) * power;
  return Spectrum(std::move(v));
}

inline double reduced_entropy_rho0(double p, double lambda) {
  validate_rho0(p, lambda);
  const double pl2 = p * lambda * lambda;
  if (pl2 == 0.0) return 0.0;
  const double l2 = lambda * lambda;
  return -(std::log1p(-pl2) + pl2 * std::log(p * (1.0 - l2) / (1.0 - pl2)) +
           2.0 * pl2 * std::log(lambda) / (1.0 - l2));
}

struct Rho0Report {
  double p = 0.0;
  double lambda = 0.0;
  double nu1 = 1.0;
  double nu2 = 0.0;
  double s_global = 0.0;
  double s_reduced = 0.0;
  double discord = 0.0;
  std::size_t n_max = 0;  // 0 for the closed-form route
};

enum class Route { closed_form, truncated_matrix };

/// Exact discord of ρ₀. The truncated-matrix route builds ρ₀ at `cutoff`
/// and diagonalizes it and its reduced state; it is kept as an independent
/// check on the closed forms.
inline Rho0Report discord_rho0(double p, double lambda, Route route = Route::closed_form,
                               std::optional<FockCutoff> cutoff = std::nullopt) {
  validate_rho0(p, lambda);
  Rho0Report r;
  r.p = p;
  r.lambda = lambda;
  std::tie(r.nu1, r.nu2) = rho0_eigenvalues(p, lambda);
  if (route == Route::closed_form) {
    r.s_global = global_entropy_rho0(p, lambda);
    r.s_reduced = reduced_entropy_rho0(p, lambda);
  } else {
    const WernerParams w{p, lambda, 0.0};
    const auto fc = cutoff.value_or(choose_cutoff(w, 1e-12));
    const auto rho = werner(w, fc);
    r.n_max = fc.n_max;
    r.s_global = von_neumann_entropy(eig_spectrum(rho));
    r.s_reduced = von_neumann_entropy(eig_spectrum(partial_trace(rho, Mode::A)));
  }
  r.discord = r.s_reduced - r.s_global;
  return r;
}

/// Joint photon-number distribution p_AB(m,n) = <mn|ρ|mn>.
inline Eigen::MatrixXd photon_counting_distribution(const TwoModeState& rho) {
  const auto n = static_cast<Eigen::Index>(rho.n_max());
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k)
      table(m, k) = rho.coeff(static_cast<std::size_t>(m), static_cast<std::size_t>(k), static_cast<std::size_t>(m),
                              static_cast<std::size_t>(k))
                        .real();
  return table;
}

struct PhotonCountingInfo {
  double h_joint = 0.0;
  double h_a = 0.0;
  double h_b = 0.0;
  double mutual_info = 0.0;
};

inline PhotonCountingInfo photon_counting_info(const TwoModeState& rho) {
  const Eigen::MatrixXd table = photon_counting_distribution(rho);
  const Eigen::VectorXd pa = table.rowwise().sum();
  const Eigen::VectorXd pb = table.colwise().sum().transpose();
  PhotonCountingInfo info;
  info.h_joint = shannon_entropy(table);
  info.h_a = shannon_entropy(std::span<const double>(pa.data(), static_cast<std::size_t>(pa.size())));
  info.h_b = shannon_entropy(std::span<const double>(pb.data(), static_cast<std::size_t>(pb.size())));
  info.mutual_info = info.h_a + info.h_b - info.h_joint;
  return info;
}

/// Classical mutual information H(p_A) + H(p_B) - H(p_AB) under local photon
/// counting.
inline double classical_mutual_info_photon_counting(const TwoModeState& rho) {
  return photon_counting_info(rho).mutual_info;
}

struct NonclassicalityTriple {
  double discord = 0.0;
  double amid = 0.0;  // I_q - I(p_AB) with photon counting on both modes
  double req = 0.0;   // H(p_AB) - S(ρ₀)
  bool reduced_majorizes_global = false;  // ρ₀,B ≻ ρ₀
  std::size_t n_max = 0;
};

/// Discord, AMID and relative entropy of quantumness of ρ₀, each from its own
/// ingredients: closed forms for the discord, the photon-number distribution
/// of the constructed state for AMID and REQ.
inline NonclassicalityTriple nonclassicality_triple_rho0(double p, double lambda, double eps_tail = 1e-12) {
  validate_rho0(p, lambda);
  const WernerParams w{p, lambda, 0.0};
  const auto cutoff = choose_cutoff(w, eps_tail);
  const auto rho = werner(w, cutoff);
  const auto counts = photon_counting_info(rho);

  NonclassicalityTriple t;
  t.n_max = cutoff.n_max;
  const double s_global = global_entropy_rho0(p, lambda);
  const double s_reduced = reduced_entropy_rho0(p, lambda);
  t.discord = s_reduced - s_global;
  const double quantum_mutual_info = 2.0 * s_reduced - s_global;
  t.amid = quantum_mutual_info - counts.mutual_info;
  t.req = counts.h_joint - s_global;

  const auto [nu1, nu2] = rho0_eigenvalues(p, lambda);
  t.reduced_majorizes_global =
      is_more_mixed(reduced_spectrum_rho0(p, lambda, cutoff.n_max), Spectrum({nu1, nu2}));
  return t;
}

}  // namespace cvw
