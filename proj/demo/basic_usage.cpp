// Builds a few states and prints their correlation measures.

#include <cstdio>

#include "cvw/cvw.hpp"

int main() {
  using namespace cvw;

  // μ = 0: the exact discord is available in closed form.
  const double p = 0.5;
  const double lambda = 0.5;
  const auto d = discord_rho0(p, lambda);
  std::printf("discord(p=%.2f, lambda=%.2f)          = %.9f nats\n", p, lambda, d.discord);

  // The same from a truncated density matrix.
  const WernerParams w0{p, lambda, 0.0};
  const auto cutoff = choose_cutoff(w0, 1e-12);
  const auto rho0 = werner(w0, cutoff);
  const double s = von_neumann_entropy(eig_spectrum(rho0));
  const double s_b = von_neumann_entropy(eig_spectrum(partial_trace(rho0, Mode::A)));
  std::printf("  from matrices at n_max=%zu           = %.9f nats\n", cutoff.n_max, s_b - s);

  // Gaussian measurements do worse.
  const auto g = gaussian_discord_rho0(p, lambda);
  std::printf("Gaussian discord                       = %.9f nats (t=%g)\n", g.value, g.argmin.t);
  std::printf("non-Gaussianity delta0                 = %.9f nats\n", nongaussianity_delta0(p, lambda));

  // μ > 0: only bounds are known.
  const auto b = bounds({p, 0.8, 0.8});
  std::printf("lambda=mu=0.8: L = %.6f  U = %.6f  MID = %.6f (n_max=%zu)\n", b.L, b.U, b.mid, b.n_max);

  // The partially transposed state has closed-form bounds.
  const auto t = ppt_bounds(0.5);
  std::printf("PPT state at lambda=0.5: L = %.6f  U = %.6f\n", t.L, t.U);
  return 0;
}
