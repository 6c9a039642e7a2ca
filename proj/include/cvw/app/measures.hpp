#pragma once

// Named measures for the command-line front end. Each measure has a fixed
// list of result columns so sweep tables keep a stable header.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cvw/bounds_general.hpp"
#include "cvw/exact_special.hpp"
#include "cvw/gaussian_povm.hpp"
#include "cvw/nongauss.hpp"
#include "cvw/ppt_analytics.hpp"

namespace cvw::app {

struct unknown_measure : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PointParams {
  double p = 0.5;
  double lambda = 0.5;
  double mu = 0.0;
  double t = 0.0;
  double phi = 0.0;
  std::optional<std::size_t> n_max;  // overrides automatic cutoff selection
  double eps_tail = 1e-12;
  double eps_int = 1e-7;
  std::uint64_t seed = 1;
  std::size_t samples = 100000;
};

struct MeasureReport {
  std::string measure;
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> results;  // nats unless noted
  std::vector<std::pair<std::string, std::string>> labels;
  std::size_t n_max = 0;  // 0 when no truncation is involved
  double error_budget = 0.0;
  double wall_seconds = 0.0;

  double result(const std::string& name) const {
    for (const auto& [k, v] : results)
      if (k == name) return v;
    throw std::out_of_range("no result named " + name);
  }
};

struct MeasureInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> inputs;   // parameter names echoed in reports
  std::vector<std::string> results;  // result columns, in order
  std::vector<std::string> labels;
  std::function<void(const PointParams&, MeasureReport&)> run;
};

namespace detail {

inline FockCutoff cutoff_for(const WernerParams& w, const PointParams& in) {
  if (in.n_max) return {*in.n_max, in.eps_tail};
  return choose_cutoff(w, in.eps_tail);
}

inline QuadratureOptions quadrature_for(const PointParams& in) {
  QuadratureOptions q;
  q.eps_int = in.eps_int;
  return q;
}

inline void set(MeasureReport& r, std::initializer_list<std::pair<const char*, double>> values) {
  for (const auto& [k, v] : values) r.results.emplace_back(k, v);
}

}  // namespace detail

inline const std::vector<MeasureInfo>& measures() {
  static const std::vector<MeasureInfo> table = {
      {"discord0",
       "exact discord of the mu=0 Werner state",
       {"p", "lambda"},
       {"discord", "s_global", "s_reduced", "nu1", "nu2"},
       {},
       [](const PointParams& in, MeasureReport& r) {
         const auto d = discord_rho0(in.p, in.lambda);
         detail::set(r, {{"discord", d.discord}, {"s_global", d.s_global}, {"s_reduced", d.s_reduced},
                         {"nu1", d.nu1}, {"nu2", d.nu2}});
       }},
      {"triple",
       "discord, AMID and relative entropy of quantumness at mu=0",
       {"p", "lambda"},
       {"discord", "amid", "req"},
       {"majorized"},
       [](const PointParams& in, MeasureReport& r) {
         const auto t = nonclassicality_triple_rho0(in.p, in.lambda, in.eps_tail);
         r.n_max = t.n_max;
         detail::set(r, {{"discord", t.discord}, {"amid", t.amid}, {"req", t.req}});
         r.labels.emplace_back("majorized", t.reduced_majorizes_global ? "true" : "false");
         r.error_budget = truncation_deficit({in.p, in.lambda, 0.0}, t.n_max);
       }},
      {"hg",
       "Gaussian conditional entropy at fixed (t, phi)",
       {"p", "lambda", "t", "phi"},
       {"conditional_entropy", "normalization"},
       {},
       [](const PointParams& in, MeasureReport& r) {
         const auto h = conditional_entropy_gaussian(in.p, in.lambda, {in.t, in.phi}, detail::quadrature_for(in));
         detail::set(r, {{"conditional_entropy", h.value}, {"normalization", h.normalization}});
         r.error_budget = std::abs(h.normalization - 1.0);
       }},
      {"hg-mc",
       "Monte-Carlo estimate of the Gaussian conditional entropy",
       {"p", "lambda", "t", "phi"},
       {"conditional_entropy", "std_error"},
       {},
       [](const PointParams& in, MeasureReport& r) {
         const auto mc = conditional_entropy_monte_carlo(in.p, in.lambda, {in.t, in.phi}, in.samples, in.seed);
         detail::set(r, {{"conditional_entropy", mc.mean}, {"std_error", mc.std_error}});
         r.error_budget = 3.0 * mc.std_error;
       }},
      {"gaussian-discord",
       "Gaussian discord of the mu=0 Werner state",
       {"p", "lambda"},
       {"gaussian_discord", "discord", "conditional_entropy", "t_opt", "phi_opt"},
       {},
       [](const PointParams& in, MeasureReport& r) {
         GaussianDiscordOptions o;
         o.quadrature = detail::quadrature_for(in);
         const auto g = gaussian_discord_rho0(in.p, in.lambda, o);
         detail::set(r, {{"gaussian_discord", g.value}, {"discord", g.discord},
                         {"conditional_entropy", g.conditional_entropy}, {"t_opt", g.argmin.t},
                         {"phi_opt", g.argmin.phi}});
         r.error_budget = in.eps_int;
       }},
      {"delta0",
       "entropic non-Gaussianity of the mu=0 Werner state",
       {"p", "lambda"},
       {"delta0", "nu", "s_gaussian", "delta0_approx"},
       {},
       [](const PointParams& in, MeasureReport& r) {
         const double nu = symplectic_eigenvalue_rho0(in.p, in.lambda);
         detail::set(r, {{"delta0", nongaussianity_delta0(in.p, in.lambda)}, {"nu", nu},
                         {"s_gaussian", gaussian_reference_entropy(nu)},
                         {"delta0_approx", delta0_low_squeezing(in.p, in.lambda)}});
       }},
      {"gap",
       "gap between Gaussian and exact discord and its normalization",
       {"p", "lambda"},
       {"delta0", "gap", "gap_normalized", "phi_lambda", "delta0_approx", "gap_approx"},
       {},
       [](const PointParams& in, MeasureReport& r) {
         GapOptions o;
         o.discord.quadrature = detail::quadrature_for(in);
         const auto g = discord_gap(in.p, in.lambda, o);
         detail::set(r, {{"delta0", g.delta0}, {"gap", g.gap}, {"gap_normalized", g.gap_normalized},
                         {"phi_lambda", g.phi_lambda}, {"delta0_approx", g.delta0_approx},
                         {"gap_approx", g.gap_approx}});
         r.error_budget = in.eps_int;
       }},
      {"bounds",
       "upper and lower discord bounds and MID of the Werner state",
       {"p", "lambda", "mu"},
       {"s_reduced", "s_global", "h_eig", "U", "L", "L_clipped", "mid"},
       {"region"},
       [](const PointParams& in, MeasureReport& r) {
         const WernerParams w{in.p, in.lambda, in.mu};
         const auto b = bounds(w, detail::cutoff_for(w, in));
         r.n_max = b.n_max;
         detail::set(r, {{"s_reduced", b.s_reduced}, {"s_global", b.s_global}, {"h_eig", b.h_eig}, {"U", b.U},
                         {"L", b.L}, {"L_clipped", std::max(b.L, 0.0)}, {"mid", b.mid}});
         r.labels.emplace_back("region", to_string(b.region));
         r.error_budget = b.error_budget;
       }},
      {"ppt-bounds",
       "analytic bounds for the partially transposed Werner state",
       {"lambda"},
       {"s_global", "s_reduced", "h_eig", "U", "L", "L_clipped", "mid", "norm_const"},
       {},
       [](const PointParams& in, MeasureReport& r) {
         const auto b = ppt_bounds(in.lambda);
         detail::set(r, {{"s_global", b.s_global}, {"s_reduced", b.s_reduced}, {"h_eig", b.h_eig}, {"U", b.U},
                         {"L", b.L}, {"L_clipped", std::max(b.L, 0.0)}, {"mid", b.mid},
                         {"norm_const", b.norm_const}});
         r.error_budget = b.error_budget;
       }},
      {"region",
       "separability region of werner(p, mu^4, mu)",
       {"p", "mu"},
       {"p_sep", "p_ppt"},
       {"region"},
       [](const PointParams& in, MeasureReport& r) {
         detail::set(r, {{"p_sep", p_sep(in.mu)}, {"p_ppt", p_ppt(in.mu)}});
         r.labels.emplace_back("region", to_string(separability_region(in.p, in.mu)));
       }},
  };
  return table;
}

inline const MeasureInfo& find_measure(const std::string& name) {
  for (const auto& m : measures())
    if (m.name == name) return m;
  throw unknown_measure("unknown measure '" + name + "'");
}

/// "nats" for entropic columns, empty for dimensionless ones.
inline std::string column_unit(const std::string& name) {
  static const std::set<std::string> plain{"nu",     "nu1",        "nu2",   "normalization", "t_opt", "phi_opt",
                                           "phi_lambda", "norm_const", "p_sep", "p_ppt"};
  return plain.count(name) ? "" : "nats";
}

inline double input_value(const PointParams& in, const std::string& name) {
  if (name == "p") return in.p;
  if (name == "lambda") return in.lambda;
  if (name == "mu") return in.mu;
  if (name == "t") return in.t;
  if (name == "phi") return in.phi;
  throw std::out_of_range("no input named " + name);
}

/// Evaluates one measure; domain and numerical errors propagate.
inline MeasureReport compute(const std::string& name, const PointParams& in) {
  const auto& info = find_measure(name);
  MeasureReport r;
  r.measure = info.name;
  for (const auto& k : info.inputs) r.inputs.emplace_back(k, input_value(in, k));
  const auto start = std::chrono::steady_clock::now();
  info.run(in, r);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& [k, v] : r.results)
    if (!std::isfinite(v)) throw consistency_error("result " + k + " is not finite");
  return r;
}

}  // namespace cvw::app
