#pragma once

// Acceptance criteria, one function per criterion. Each returns a verdict
// and a one-line diagnostic; exceptions count as failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cvw/bounds_general.hpp"
#include "cvw/exact_special.hpp"
#include "cvw/gaussian_povm.hpp"
#include "cvw/nongauss.hpp"
#include "cvw/ppt_analytics.hpp"

namespace cvw::app {

struct AcceptanceConfig {
  std::optional<std::size_t> n_max;  // forces every truncated computation to this cutoff
  double eps_tail = 1e-12;
  double eps_int = 1e-7;
  std::uint64_t seed = 20240917;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline FockCutoff acceptance_cutoff(const WernerParams& w, const AcceptanceConfig& c) {
  if (c.n_max) return {*c.n_max, c.eps_tail};
  return choose_cutoff(w, c.eps_tail);
}

inline QuadratureOptions acceptance_quadrature(const AcceptanceConfig& c) {
  QuadratureOptions q;
  q.eps_int = c.eps_int;
  return q;
}

struct Check {
  bool ok = true;
  std::ostringstream msg;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      msg << "FAILED: " << what << "; ";
    }
  }
  void note(const std::string& what) { msg << what << "; "; }
};

inline std::vector<double> grid5(double hi) {
  std::vector<double> v;
  for (int i = 0; i < 5; ++i) v.push_back(hi * i / 4.0);
  return v;
}

}  // namespace detail

/// 1: closed-form discord of ρ₀ against truncated-matrix entropies.
inline CriterionResult criterion_exact_oracle(const AcceptanceConfig& cfg) {
  detail::Check c;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  std::uniform_real_distribution<double> ul(0.0, 0.95);
  double worst = 0.0;
  std::size_t max_n = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 50; ++i) {
    const double p = up(rng);
    const double l = ul(rng);
    const auto fc = detail::acceptance_cutoff({p, l, 0.0}, cfg);
    max_n = std::max(max_n, fc.n_max);
    const double closed = discord_rho0(p, l).discord;
    const double truncated = discord_rho0(p, l, Route::truncated_matrix, fc).discord;
    worst = std::max(worst, std::abs(closed - truncated));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.note("max |closed - truncated| = " + detail::fmt(worst) + ", max n_max = " + std::to_string(max_n));
  c.require(worst < 1e-8, "deviation " + detail::fmt(worst) + " >= 1e-8 (truncation too coarse?)");
  c.require(secs < 30.0, "runtime " + detail::fmt(secs) + " s >= 30 s");
  return {1, "exact-discord oracle equality", c.ok, c.msg.str()};
}

/// 2: photon counting is optimal at μ = 0; Gaussian measurements are not.
inline CriterionResult criterion_photon_counting(const AcceptanceConfig& cfg) {
  detail::Check c;
  const auto start = std::chrono::steady_clock::now();
  double worst_h = 0.0;
  double worst_u = 0.0;
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9})
    for (double l : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const WernerParams w{p, l, 0.0};
      const auto rho = werner(w, detail::acceptance_cutoff(w, cfg));
      const auto pc = photon_counting_bounds(rho);
      worst_h = std::max(worst_h, std::abs(pc.h_eig));
      worst_u = std::max(worst_u, std::abs(pc.U - discord_rho0(p, l).discord));
    }
  GaussianDiscordOptions o;
  o.quadrature = detail::acceptance_quadrature(cfg);
  const auto g = gaussian_discord_rho0(0.5, 0.5, o);
  const double margin = g.value - g.discord;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.note("max |H_eig| = " + detail::fmt(worst_h) + ", max |U - D| = " + detail::fmt(worst_u) +
         ", D_G - D = " + detail::fmt(margin));
  c.require(worst_h <= 1e-12, "photon-counting conditional entropy " + detail::fmt(worst_h) + " > 1e-12");
  c.require(worst_u <= 1e-8, "upper bound differs from discord by " + detail::fmt(worst_u));
  c.require(margin > 1e-3, "Gaussian discord margin " + detail::fmt(margin) + " <= 1e-3");
  c.require(secs < 300.0, "runtime " + detail::fmt(secs) + " s >= 300 s");
  return {2, "photon-counting optimality at mu=0", c.ok, c.msg.str()};
}

/// 3: δ₀/Δ𝒟 approaches Φ_λ, and π as λ → 0.
inline CriterionResult criterion_phi_limit(const AcceptanceConfig& cfg) {
  detail::Check c;
  GapOptions o;
  o.discord.quadrature = detail::acceptance_quadrature(cfg);
  const auto small = discord_gap(0.5, 0.05, o);
  const auto larger = discord_gap(0.5, 0.2, o);
  const double ratio_small = small.delta0 / small.gap;
  const double ratio_larger = larger.delta0 / larger.gap;
  const double rel = std::abs(ratio_small - small.phi_lambda) / small.phi_lambda;
  const double dist_small = std::abs(ratio_small - std::numbers::pi);
  const double dist_larger = std::abs(ratio_larger - std::numbers::pi);
  c.note("lambda=0.05: delta0/gap = " + detail::fmt(ratio_small) + ", Phi = " + detail::fmt(small.phi_lambda) +
         ", rel err = " + detail::fmt(rel));
  c.note("|ratio - pi|: " + detail::fmt(dist_larger) + " at 0.2, " + detail::fmt(dist_small) + " at 0.05");
  c.require(rel < 0.05, "relative deviation from Phi_lambda " + detail::fmt(rel) + " >= 0.05");
  c.require(dist_small < dist_larger, "|delta0/gap - pi| does not decrease from lambda=0.2 to 0.05");
  return {3, "Phi_0 = pi limit", c.ok, c.msg.str()};
}

/// 4: every measure vanishes at p = 0; δ₀ also at p = 1.
inline CriterionResult criterion_trivial_points(const AcceptanceConfig& cfg) {
  detail::Check c;
  double worst = 0.0;
  auto zero = [&](double v, const std::string& what) {
    worst = std::max(worst, std::abs(v));
    c.require(std::abs(v) <= 1e-10, what + " = " + detail::fmt(v));
  };
  GapOptions o;
  o.discord.quadrature = detail::acceptance_quadrature(cfg);
  for (double l : {0.2, 0.5, 0.8}) {
    zero(discord_rho0(0.0, l).discord, "discord(p=0)");
    zero(nongaussianity_delta0(0.0, l), "delta0(p=0)");
    zero(nongaussianity_delta0(1.0, l), "delta0(p=1)");
    zero(discord_gap(0.0, l, o).gap, "gap(p=0)");
    for (double mu : {0.0, 0.5, 0.8}) {
      const WernerParams w{0.0, l, mu};
      const auto fc = detail::acceptance_cutoff(w, cfg);
      const auto b = bounds(w, fc);
      zero(b.U, "U(p=0)");
      zero(std::max(b.L, 0.0), "L_clipped(p=0)");
      zero(b.mid, "mid(p=0)");
    }
  }
  c.note("max |value| = " + detail::fmt(worst));
  return {4, "trivial-point suite", c.ok, c.msg.str()};
}

/// 5: MID equals the upper bound on a 5x5x5 grid.
inline CriterionResult criterion_mid_identity(const AcceptanceConfig& cfg) {
  detail::Check c;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::size_t max_n = 0;
  for (double p : detail::grid5(1.0))
    for (double l : detail::grid5(0.8))
      for (double mu : detail::grid5(0.8)) {
        const WernerParams w{p, l, mu};
        const auto fc = detail::acceptance_cutoff(w, cfg);
        max_n = std::max(max_n, fc.n_max);
        const double u = upper_bound_U(w, fc);
        const double m =
            shannon_entropy(joint_photon_distribution(w, fc.n_max)) - global_entropy_general(w, fc);
        worst = std::max(worst, std::abs(u - m));
      }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.note("max |M - U| = " + detail::fmt(worst) + ", max n_max = " + std::to_string(max_n));
  c.require(worst <= 1e-8, "MID differs from U by " + detail::fmt(worst));
  c.require(max_n <= 80, "cutoff " + std::to_string(max_n) + " exceeds 80");
  c.require(secs < 600.0, "runtime " + detail::fmt(secs) + " s >= 600 s");
  return {5, "MID identity", c.ok, c.msg.str()};
}

/// 6: max(L, 0) <= U on the same grid, with equality at p = 1.
inline CriterionResult criterion_bound_ordering(const AcceptanceConfig& cfg) {
  detail::Check c;
  // Rounding slack when L and U coincide analytically.
  constexpr double ordering_tol = 1e-10;
  double worst_excess = -1.0;
  double worst_p1 = 0.0;
  for (double p : detail::grid5(1.0))
    for (double l : detail::grid5(0.8))
      for (double mu : detail::grid5(0.8)) {
        const WernerParams w{p, l, mu};
        const auto fc = detail::acceptance_cutoff(w, cfg);
        const double u = upper_bound_U(w, fc);
        const double lo = lower_bound_L(w, fc);
        worst_excess = std::max(worst_excess, std::max(lo, 0.0) - u);
        if (p == 1.0) worst_p1 = std::max(worst_p1, std::abs(u - lo));
      }
  c.note("max(max(L,0) - U) = " + detail::fmt(worst_excess) + ", max |U - L| at p=1 = " + detail::fmt(worst_p1));
  c.require(worst_excess <= ordering_tol, "lower bound exceeds upper bound by " + detail::fmt(worst_excess));
  c.require(worst_p1 <= 1e-8, "bounds differ at p=1 by " + detail::fmt(worst_p1));
  return {6, "bound ordering", c.ok, c.msg.str()};
}

/// 7: separability thresholds in closed form and from the partial transpose.
inline CriterionResult criterion_separability(const AcceptanceConfig& cfg) {
  detail::Check c;
  const double mu = 0.8;
  const double ps = p_sep(mu);
  const double pp = p_ppt(mu);
  c.note("p_sep = " + detail::fmt(ps) + ", p_PPT = " + detail::fmt(pp));
  c.require(std::abs(ps - 0.084199) <= 1e-6, "p_sep off by " + detail::fmt(std::abs(ps - 0.084199)));
  c.require(std::abs(pp - 0.195704) <= 1e-6, "p_PPT off by " + detail::fmt(std::abs(pp - 0.195704)));

  const double step = 0.005;
  double last_ppt = -1.0;
  double first_npt = 2.0;
  int sign_changes = 0;
  bool prev = true;
  for (int i = 0; i <= 200; ++i) {
    const double p = step * i;
    const WernerParams w{p, std::pow(mu, 4), mu};
    const bool ppt = partial_transpose_min_eigenvalue(p, mu, detail::acceptance_cutoff(w, cfg)) >= -kEigenvalueFloor;
    if (i > 0 && ppt != prev) ++sign_changes;
    prev = ppt;
    if (ppt) last_ppt = std::max(last_ppt, p);
    else first_npt = std::min(first_npt, p);
  }
  c.note("numerical PPT boundary in [" + detail::fmt(last_ppt) + ", " + detail::fmt(first_npt) + "]");
  c.require(sign_changes == 1, std::to_string(sign_changes) + " PPT sign changes instead of 1");
  c.require(last_ppt <= pp && pp <= first_npt && first_npt - last_ppt <= step + 1e-12,
            "numerical bracket does not contain p_PPT within one step");
  return {7, "separability thresholds", c.ok, c.msg.str()};
}

/// 8: analytics of the partially transposed Werner state against the built
/// state.
inline CriterionResult criterion_ppt_analytics(const AcceptanceConfig& cfg) {
  detail::Check c;
  double worst_u = 0.0;
  double worst_spec = 0.0;
  for (double l : {0.2, 0.5, 0.8}) {
    const auto fc = detail::acceptance_cutoff(ppt_werner_source(l), cfg);
    const auto rho = ppt_werner(l, fc);
    const auto pc = photon_counting_bounds(rho);
    worst_u = std::max(worst_u, std::abs(pc.U - ppt_bounds(l).U));
    const auto numeric = eig_spectrum(rho);
    const auto analytic = ppt_eigenvalues(l, fc.n_max);
    for (std::size_t i = 0; i < numeric.size(); ++i)
      worst_spec = std::max(worst_spec, std::abs(numeric[i] - analytic[i]));
  }
  const double l_half = ppt_bounds(0.5).L;
  const double u_limit = ppt_bounds(0.999).U;
  c.note("max |U_num - lambda ln 2| = " + detail::fmt(worst_u) + ", max spectrum dev = " + detail::fmt(worst_spec) +
         ", L(0.5) = " + detail::fmt(l_half) + ", U(0.999) = " + detail::fmt(u_limit));
  c.require(worst_u <= 1e-6, "numerical U deviates by " + detail::fmt(worst_u));
  c.require(worst_spec <= 1e-10, "spectrum deviates by " + detail::fmt(worst_spec));
  c.require(std::abs(l_half - 0.165) <= 2e-3, "L(0.5) = " + detail::fmt(l_half) + " not within 2e-3 of 0.165");
  c.require(u_limit > 0.692, "U(0.999) = " + detail::fmt(u_limit) + " <= 0.692");
  return {8, "PPT analytics", c.ok, c.msg.str()};
}

/// 9: quadrature convergence, normalization and phase independence.
inline CriterionResult criterion_quadrature(const AcceptanceConfig& cfg) {
  detail::Check c;
  const double p = 0.5;
  const double l = 0.5;
  const GaussianPovmParams m{2.0, 0.0};
  auto q = detail::acceptance_quadrature(cfg);
  // The normalization is checked here against eps_int, so evaluate with a
  // permissive internal guard and report the margin.
  const double eps = q.eps_int;
  q.eps_int = 1.0;
  const auto base = conditional_entropy_gaussian(p, l, m, q);
  auto fine_opts = q;
  fine_opts.radial_panels *= 2;
  fine_opts.angular_nodes *= 2;
  const auto fine = conditional_entropy_gaussian(p, l, m, fine_opts);
  double spread = 0.0;
  for (double phi : {std::numbers::pi / 3.0, 2.0 * std::numbers::pi / 3.0})
    spread = std::max(spread, std::abs(conditional_entropy_gaussian(p, l, {2.0, phi}, q).value - base.value));
  const double change = std::abs(fine.value - base.value);
  const double norm_dev = std::abs(base.normalization - 1.0);
  c.note("refinement change = " + detail::fmt(change) + ", |int q - 1| = " + detail::fmt(norm_dev) +
         " (eps_int " + detail::fmt(eps) + ", margin " + detail::fmt(eps - norm_dev) + ")" +
         ", phase spread = " + detail::fmt(spread));
  c.require(change < 1e-6, "refinement changes H_G by " + detail::fmt(change));
  c.require(norm_dev <= std::min(eps, 1e-7), "normalization misses 1 by " + detail::fmt(norm_dev));
  c.require(spread < 1e-6, "H_G depends on phi by " + detail::fmt(spread));
  return {9, "quadrature robustness", c.ok, c.msg.str()};
}

/// 10: majorization of ρ₀ by its marginal, and AMID = REQ = discord.
inline CriterionResult criterion_majorization(const AcceptanceConfig& cfg) {
  detail::Check c;
  int failures = 0;
  for (int i = 1; i <= 10; ++i)
    for (int j = 1; j <= 10; ++j) {
      const double p = 0.1 * i - 0.05;
      const double l = 0.095 * j - 0.045;
      const auto fc = detail::acceptance_cutoff({p, l, 0.0}, cfg);
      const auto [nu1, nu2] = rho0_eigenvalues(p, l);
      if (!is_more_mixed(reduced_spectrum_rho0(p, l, fc.n_max), Spectrum({nu1, nu2}))) ++failures;
    }
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  std::uniform_real_distribution<double> ul(0.0, 0.9);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double p = up(rng);
    const double l = ul(rng);
    const auto t = nonclassicality_triple_rho0(p, l, cfg.eps_tail);
    worst = std::max({worst, std::abs(t.amid - t.discord), std::abs(t.req - t.discord), std::abs(t.amid - t.req)});
  }
  c.note(std::to_string(failures) + " majorization failures on 10x10 grid, max pairwise deviation = " +
         detail::fmt(worst));
  c.require(failures == 0, "majorization fails at " + std::to_string(failures) + " grid points");
  c.require(worst <= 1e-8, "AMID/REQ/discord differ by " + detail::fmt(worst));
  return {10, "majorization and AMID", c.ok, c.msg.str()};
}

inline const std::vector<std::function<CriterionResult(const AcceptanceConfig&)>>& criteria() {
  static const std::vector<std::function<CriterionResult(const AcceptanceConfig&)>> list = {
      criterion_exact_oracle,    criterion_photon_counting, criterion_phi_limit,    criterion_trivial_points,
      criterion_mid_identity,    criterion_bound_ordering,  criterion_separability, criterion_ppt_analytics,
      criterion_quadrature,      criterion_majorization};
  return list;
}

inline const char* criterion_name(int id) {
  static const char* names[] = {"exact-discord oracle equality",
                                "photon-counting optimality at mu=0",
                                "Phi_0 = pi limit",
                                "trivial-point suite",
                                "MID identity",
                                "bound ordering",
                                "separability thresholds",
                                "PPT analytics",
                                "quadrature robustness",
                                "majorization and AMID"};
  return names[id - 1];
}

inline CriterionResult run_criterion(int id, const AcceptanceConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = criteria().at(static_cast<std::size_t>(id - 1))(cfg);
  } catch (const std::exception& e) {
    r = {id, criterion_name(id), false, std::string("FAILED: exception: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline void print_result(std::ostream& out, const CriterionResult& r) {
  out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " (" << detail::fmt(r.seconds)
      << " s): " << r.detail << '\n';
}

/// Runs the selected criteria (all when empty); true when all pass.
inline bool run_acceptance(std::ostream& out, const AcceptanceConfig& cfg, const std::vector<int>& only = {}) {
  bool all = true;
  const int n = static_cast<int>(criteria().size());
  for (int id = 1; id <= n; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto r = run_criterion(id, cfg);
    print_result(out, r);
    out.flush();
    all = all && r.passed;
  }
  return all;
}

}  // namespace cvw::app
