#pragma once

// Gaussian measurements on mode B of ρ₀ = p|ψ(λ)><ψ(λ)| + (1-p)|00><00|.
//
// The POVM is Π(α) = |α,ξ><α,ξ|/π with |α,ξ> = D(α)S(ξ)|0> and
// ξ = t e^{i2φ}; t = 0 is heterodyne, t → ∞ homodyne. Detecting α leaves A in
// a mixture of the squeezed coherent state |β, s e^{-i2φ}> and the vacuum, so
// the conditional entropy has a two-eigenvalue closed form and only the
// average over α needs numerics.
//
// Quadrature frame. In w = e^{-iφ}α = x + iy both outcome densities are
// axis-aligned Gaussians whose x-width grows like 1/√(1-tanh t). The grid is
// polar in the whitened coordinates X = x√(1-tanh t), Y = y√(1+tanh t), where
// the vacuum branch becomes exp(-X²-Y²), and is mapped back to the α plane
// with the Jacobian cosh t. Radial panels are Gauss-Legendre, angular nodes
// uniform.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cvw/errors.hpp"
#include "cvw/exact_special.hpp"
#include "cvw/fock_core.hpp"

namespace cvw {

struct GaussianPovmParams {
  double t = 0.0;    // measurement squeezing
  double phi = 0.0;  // rotation, [0, π)
};

inline void validate(const GaussianPovmParams& m) {
  if (!(m.t >= 0.0) || !std::isfinite(m.t)) throw domain_error("measurement squeezing t must be finite and >= 0");
  if (!(m.phi >= 0.0 && m.phi < std::numbers::pi)) throw domain_error("measurement phase must lie in [0, pi)");
}

struct ConditionalGaussianParams {
  double s = 0.0;      // squeezing of the conditional state
  cplx beta;           // its displacement
  cplx omega;          // s e^{-i2φ}
  double z_plus = 0.0;
  double z_minus = 0.0;
};

namespace detail {

inline double log_cosh(double t) {
  t = std::abs(t);
  return t + std::log1p(std::exp(-2.0 * t)) - std::numbers::ln2;
}

// 1 - tanh t without cancellation.
inline double one_minus_tanh(double t) {
  const double e = std::exp(-2.0 * t);
  return 2.0 * e / (1.0 + e);
}

struct SqueezeConstants {
  double c = 1.0;   // cosh 2r
  double sh = 0.0;  // sinh 2r
};

inline SqueezeConstants squeeze_constants(double lambda) {
  const double l2 = lambda * lambda;
  return {(1.0 + l2) / (1.0 - l2), 2.0 * lambda / (1.0 - l2)};
}

}  // namespace detail

/// Conditional squeezing s, displacement β and z± for outcome α on the
/// two-mode squeezed vacuum with squeezing factor λ.
inline ConditionalGaussianParams conditional_params(double lambda, const GaussianPovmParams& povm, cplx alpha) {
  check_factor(lambda, "lambda");
  validate(povm);
  const auto [c, sh] = detail::squeeze_constants(lambda);
  const double em2t = std::exp(-2.0 * povm.t);
  ConditionalGaussianParams out;
  // ½ ln[(1 + e^{2t} c)/(c + e^{2t})], scaled by e^{-2t} top and bottom.
  out.s = 0.5 * (std::log(c + em2t) - std::log1p(c * em2t));
  out.z_plus = em2t / (1.0 + c * em2t);
  out.z_minus = 1.0 / (c + em2t);
  const cplx rot = std::polar(1.0, -2.0 * povm.phi);
  out.beta = 0.5 * sh * ((out.z_plus + out.z_minus) * std::conj(alpha) + (out.z_plus - out.z_minus) * rot * alpha);
  out.omega = out.s * rot;
  return out;
}

/// |<0|β, ζ>|² for the squeezed coherent state D(β)S(ζ)|0>, ζ = r e^{iθ}.
inline double vacuum_overlap_sq(cplx beta, double r, double theta) {
  const cplx b2 = std::conj(beta) * std::conj(beta);
  const double exponent = -std::norm(beta) + std::tanh(r) * std::real(std::polar(1.0, theta) * b2);
  return std::exp(exponent - detail::log_cosh(r));
}

struct WeightDensities {
  double u = 0.0;  // <α,ξ|ρ_th(λ)|α,ξ>
  double v = 0.0;  // |<0|α,ξ>|²
  double q = 0.0;  // outcome density [p u + (1-p) v]/π
};

/// Outcome weights at α. Evaluated in the rotated frame w = e^{-iφ}α with
/// log-domain prefactors so large t neither overflows nor cancels.
inline WeightDensities weight_densities(double p, double lambda, const GaussianPovmParams& povm, cplx alpha) {
  check_probability(p);
  check_factor(lambda, "lambda");
  validate(povm);
  const double l2 = lambda * lambda;
  const double tau = std::tanh(povm.t);
  const double omt = detail::one_minus_tanh(povm.t);
  const double opt = 1.0 + tau;
  const cplx w = std::polar(1.0, -povm.phi) * alpha;
  const double x2 = w.real() * w.real();
  const double y2 = w.imag() * w.imag();
  const double lc = detail::log_cosh(povm.t);

  // 1 - λ²τ and 1 + λ²τ, the factors of 1 - λ⁴τ².
  const double dm = (1.0 - l2) + l2 * omt;
  const double dp = 1.0 + l2 * tau;

  WeightDensities out;
  out.v = std::exp(-x2 * omt - y2 * opt - lc);
  const double log_pref = std::log1p(-l2) - lc - 0.5 * (std::log(dm) + std::log(dp));
  out.u = std::exp(log_pref - (1.0 - l2) * omt / dm * x2 - (1.0 - l2) * opt / dp * y2);
  out.q = (p * out.u + (1.0 - p) * out.v) / std::numbers::pi;
  return out;
}

struct ConditionalMixture {
  double zeta1 = 0.0;       // weight of the squeezed coherent branch
  double zeta2 = 0.0;       // weight of the vacuum branch
  double overlap_sq = 1.0;  // |<0|β, s e^{-i2φ}>|²
  double entropy = 0.0;     // S(ρ_{A|α})
  double q = 0.0;
};

inline ConditionalMixture conditional_mixture(double p, double lambda, const GaussianPovmParams& povm, cplx alpha) {
  const auto wd = weight_densities(p, lambda, povm, alpha);
  ConditionalMixture out;
  out.q = wd.q;
  const double a = p * wd.u;
  const double b = (1.0 - p) * wd.v;
  if (!(a + b > 0.0)) return out;
  out.zeta1 = a / (a + b);
  out.zeta2 = b / (a + b);
  const auto cp = conditional_params(lambda, povm, alpha);
  out.overlap_sq = std::min(1.0, vacuum_overlap_sq(cp.beta, cp.s, -2.0 * povm.phi));
  const auto [nu1, nu2] = two_component_mixture_spectrum(out.zeta1, out.zeta2, out.overlap_sq);
  const double values[] = {nu1, nu2};
  out.entropy = von_neumann_entropy(values);
  return out;
}

struct QuadratureOptions {
  std::size_t radial_panels = 8;   // Gauss-Legendre panels inside the vacuum envelope
  std::size_t panel_order = 16;    // nodes per panel
  std::size_t angular_nodes = 64;  // base count, scaled up with envelope anisotropy
  double tail_mass = 1e-10;        // Gaussian mass left outside r_max
  double eps_int = 1e-7;           // tolerated deviation of ∫q d²α from 1
};

struct QuadratureNode {
  cplx alpha;
  double weight = 0.0;  // d²α weight
};

struct QuadratureGrid {
  std::vector<double> radial_nodes;    // whitened radius
  std::vector<double> radial_weights;  // include the polar factor r
  std::vector<double> angular_nodes;
  double angular_weight = 0.0;
  double r_max = 0.0;
  std::vector<QuadratureNode> nodes;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(std::size_t order) {
  if (order == 0) throw domain_error("Gauss-Legendre order must be positive");
  std::vector<double> x(order);
  std::vector<double> w(order);
  const double n = static_cast<double>(order);
  for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t k = 1; k <= order; ++k) {
        const double p2 = p1;
        p1 = p0;
        const double kk = static_cast<double>(k);
        p0 = ((2.0 * kk - 1.0) * z * p1 - (kk - 1.0) * p2) / kk;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[order - 1 - i] = z;
    w[i] = w[order - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

/// Integration grid for the outcome plane of `povm` on squeezing factor λ.
inline QuadratureGrid make_quadrature_grid(double lambda, const GaussianPovmParams& povm,
                                           const QuadratureOptions& opts = {}) {
  check_factor(lambda, "lambda");
  validate(povm);
  if (opts.radial_panels == 0 || opts.angular_nodes == 0) throw domain_error("quadrature needs nodes");
  if (!(opts.tail_mass > 0.0 && opts.tail_mass < 1.0)) throw domain_error("tail_mass must lie in (0,1)");

  const double l2 = lambda * lambda;
  const double tau = std::tanh(povm.t);
  const double omt = detail::one_minus_tanh(povm.t);
  // Whitened curvatures of the thermal branch; the vacuum branch has 1.
  const double k1 = (1.0 - l2) / ((1.0 - l2) + l2 * omt);
  const double k2 = (1.0 - l2) / (1.0 + l2 * tau);
  const double k_min = std::min({k1, k2, 1.0});

  QuadratureGrid g;
  const double log_tail = -std::log(opts.tail_mass);
  const double r_inner = std::sqrt(log_tail);
  g.r_max = std::sqrt(log_tail / k_min);

  std::vector<double> edges;
  for (std::size_t i = 0; i <= opts.radial_panels; ++i)
    edges.push_back(r_inner * static_cast<double>(i) / static_cast<double>(opts.radial_panels));
  if (g.r_max > 1.01 * r_inner) {
    const double span = std::log(g.r_max / r_inner);
    const auto outer = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(static_cast<double>(opts.radial_panels) * span / 3.2)));
    for (std::size_t i = 1; i <= outer; ++i)
      edges.push_back(r_inner * std::exp(span * static_cast<double>(i) / static_cast<double>(outer)));
  }

  const auto [gx, gw] = gauss_legendre(opts.panel_order);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double half = 0.5 * (edges[i + 1] - edges[i]);
    const double mid = 0.5 * (edges[i + 1] + edges[i]);
    for (std::size_t k = 0; k < gx.size(); ++k) {
      const double r = mid + half * gx[k];
      g.radial_nodes.push_back(r);
      g.radial_weights.push_back(half * gw[k] * r);
    }
  }

  const double anisotropy = std::ceil(std::sqrt(1.0 / k_min));
  const auto n_ang = static_cast<std::size_t>(static_cast<double>(opts.angular_nodes) * anisotropy);
  g.angular_weight = 2.0 * std::numbers::pi / static_cast<double>(n_ang);
  for (std::size_t j = 0; j < n_ang; ++j) g.angular_nodes.push_back(g.angular_weight * static_cast<double>(j));

  const double sx = 1.0 / std::sqrt(omt);
  const double sy = 1.0 / std::sqrt(1.0 + tau);
  const double jacobian = std::exp(detail::log_cosh(povm.t));
  const cplx rot = std::polar(1.0, povm.phi);
  g.nodes.reserve(g.radial_nodes.size() * n_ang);
  for (std::size_t i = 0; i < g.radial_nodes.size(); ++i)
    for (double theta : g.angular_nodes) {
      const double X = g.radial_nodes[i] * std::cos(theta);
      const double Y = g.radial_nodes[i] * std::sin(theta);
      g.nodes.push_back({rot * cplx(X * sx, Y * sy), g.radial_weights[i] * g.angular_weight * jacobian});
    }
  return g;
}

struct GaussianConditionalEntropy {
  double value = 0.0;          // ∫ q(α) S(ρ_{A|α}) d²α
  double normalization = 0.0;  // ∫ q(α) d²α on the grid
  std::size_t nodes = 0;
};

/// Conditional entropy of A given the Gaussian measurement on B.
/// Refuses grids whose normalization misses 1 by more than eps_int.
inline GaussianConditionalEntropy conditional_entropy_gaussian(double p, double lambda,
                                                               const GaussianPovmParams& povm,
                                                               const QuadratureGrid& grid, double eps_int = 1e-7) {
  check_probability(p);
  GaussianConditionalEntropy out;
  out.nodes = grid.nodes.size();
  double value = 0.0;
  double norm = 0.0;
  for (const auto& node : grid.nodes) {
    const auto cm = conditional_mixture(p, lambda, povm, node.alpha);
    if (!(cm.q > 0.0)) continue;
    norm += node.weight * cm.q;
    value += node.weight * cm.q * cm.entropy;
  }
  out.value = value;
  out.normalization = norm;
  if (!(std::abs(norm - 1.0) <= eps_int)) {
    std::ostringstream msg;
    msg << "quadrature normalization " << norm << " misses 1 by " << std::abs(norm - 1.0) << " > eps_int " << eps_int
        << " (p=" << p << ", lambda=" << lambda << ", t=" << povm.t << ", phi=" << povm.phi
        << ", r_max=" << grid.r_max << ", radial=" << grid.radial_nodes.size()
        << ", angular=" << grid.angular_nodes.size() << ")";
    throw consistency_error(msg.str());
  }
  return out;
}

inline GaussianConditionalEntropy conditional_entropy_gaussian(double p, double lambda,
                                                               const GaussianPovmParams& povm,
                                                               const QuadratureOptions& opts = {}) {
  return conditional_entropy_gaussian(p, lambda, povm, make_quadrature_grid(lambda, povm, opts), opts.eps_int);
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Monte-Carlo estimate of the same integral by exact sampling of q(α).
inline MonteCarloEstimate conditional_entropy_monte_carlo(double p, double lambda, const GaussianPovmParams& povm,
                                                          std::size_t samples, std::uint64_t seed) {
  check_probability(p);
  check_factor(lambda, "lambda");
  validate(povm);
  if (samples < 2) throw domain_error("Monte-Carlo needs at least two samples");
  const double l2 = lambda * lambda;
  const double tau = std::tanh(povm.t);
  const double omt = detail::one_minus_tanh(povm.t);
  const double k1 = (1.0 - l2) / ((1.0 - l2) + l2 * omt);
  const double k2 = (1.0 - l2) / (1.0 + l2 * tau);

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution pick_thermal(p);
  std::normal_distribution<double> normal(0.0, 1.0);
  const cplx rot = std::polar(1.0, povm.phi);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const bool thermal_branch = pick_thermal(rng);
    const double X = normal(rng) / std::sqrt(2.0 * (thermal_branch ? k1 : 1.0));
    const double Y = normal(rng) / std::sqrt(2.0 * (thermal_branch ? k2 : 1.0));
    const cplx alpha = rot * cplx(X / std::sqrt(omt), Y / std::sqrt(1.0 + tau));
    const double s = conditional_mixture(p, lambda, povm, alpha).entropy;
    sum += s;
    sum_sq += s * s;
  }
  const double n = static_cast<double>(samples);
  MonteCarloEstimate out;
  out.samples = samples;
  out.mean = sum / n;
  out.std_error = std::sqrt(std::max(0.0, sum_sq / n - out.mean * out.mean) / (n - 1.0));
  return out;
}

struct GaussianDiscordOptions {
  double t_homodyne = 12.0;  // finite stand-in for t → ∞; e^{-2t} < 4e-11
  double t_step = 0.5;
  std::vector<double> phases{0.0, std::numbers::pi / 4.0, std::numbers::pi / 2.0};
  double golden_tol = 1e-3;
  std::size_t max_iterations = 200;
  // Values closer than this count as equal; the larger t wins.
  double tie_tolerance = 1e-9;
  QuadratureOptions quadrature{};
};

struct OptimizerStep {
  double t = 0.0;
  double phi = 0.0;
  double value = 0.0;
};

struct GaussianDiscordResult {
  double value = 0.0;                // Gaussian discord
  double discord = 0.0;              // exact discord of ρ₀
  double conditional_entropy = 0.0;  // min over (t, φ) of the Gaussian conditional entropy
  GaussianPovmParams argmin;
  std::vector<OptimizerStep> trace;
};

/// Gaussian discord of ρ₀: coarse scan over (t, φ), then golden-section
/// refinement in t at the best phase.
inline GaussianDiscordResult gaussian_discord_rho0(double p, double lambda, const GaussianDiscordOptions& opts = {}) {
  validate_rho0(p, lambda);
  if (!(opts.t_homodyne > 0.0) || !(opts.t_step > 0.0) || opts.phases.empty())
    throw domain_error("invalid Gaussian discord optimizer options");

  GaussianDiscordResult res;
  auto evaluate = [&](double t, double phi) {
    const GaussianPovmParams m{t, phi};
    const double h = conditional_entropy_gaussian(p, lambda, m, opts.quadrature).value;
    res.trace.push_back({t, phi, h});
    if (!std::isfinite(h)) {
      std::ostringstream msg;
      msg << "non-finite conditional entropy at t=" << t << ", phi=" << phi;
      throw convergence_error(msg.str());
    }
    return h;
  };
  auto better = [&](double h, double t, double best_h, double best_t) {
    if (h < best_h - opts.tie_tolerance) return true;
    return std::abs(h - best_h) <= opts.tie_tolerance && t > best_t;
  };

  std::vector<double> ladder;
  for (double t = 0.0; t < opts.t_homodyne - 1e-12; t += opts.t_step) ladder.push_back(t);
  ladder.push_back(opts.t_homodyne);

  double best_h = std::numeric_limits<double>::infinity();
  GaussianPovmParams best{0.0, opts.phases.front()};
  for (double phi : opts.phases)
    for (double t : ladder) {
      const double h = evaluate(t, phi);
      if (better(h, t, best_h, best.t)) {
        best_h = h;
        best = {t, phi};
      }
    }

  double lo = std::max(0.0, best.t - opts.t_step);
  double hi = std::min(opts.t_homodyne, best.t + opts.t_step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = evaluate(a, best.phi);
  double fb = evaluate(b, best.phi);
  std::size_t iter = 0;
  while (hi - lo > opts.golden_tol) {
    if (++iter > opts.max_iterations) {
      std::ostringstream msg;
      msg << "golden-section search did not converge; iterates:";
      for (const auto& s : res.trace) msg << " (t=" << s.t << ", phi=" << s.phi << ", H=" << s.value << ")";
      throw convergence_error(msg.str());
    }
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = evaluate(a, best.phi);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = evaluate(b, best.phi);
    }
  }
  for (const auto& [t, h] : {std::pair{a, fa}, std::pair{b, fb}})
    if (better(h, t, best_h, best.t)) {
      best_h = h;
      best.t = t;
    }

  res.conditional_entropy = best_h;
  res.argmin = best;
  res.discord = reduced_entropy_rho0(p, lambda) - global_entropy_rho0(p, lambda);
  res.value = res.discord + best_h;
  return res;
}

}  // namespace cvw
