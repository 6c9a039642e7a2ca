#include <cmath>

#include <gtest/gtest.h>

#include "cvw/exact_special.hpp"
#include "generators.hpp"

using namespace cvw;

// Reference values at p = λ = 1/2 from a 30-digit mpmath evaluation of the
// 2x2 Gram matrix and the Fock-diagonal reduced state.
constexpr double kNu1 = 0.9330127018922193;
constexpr double kNu2 = 0.0669872981077807;
constexpr double kGlobal = 0.2457753666684711;
constexpr double kReduced = 0.4704926853595715;
constexpr double kDiscord = 0.2247173186911004;

TEST(Rho0, EigenvaluesAtHalf) {
  const auto [n1, n2] = rho0_eigenvalues(0.5, 0.5);
  EXPECT_NEAR(n1, kNu1, 1e-15);
  EXPECT_NEAR(n2, kNu2, 1e-15);
}

TEST(Rho0, EntropiesAtHalf) {
  EXPECT_NEAR(global_entropy_rho0(0.5, 0.5), kGlobal, 1e-14);
  EXPECT_NEAR(reduced_entropy_rho0(0.5, 0.5), kReduced, 1e-14);
  const auto d = discord_rho0(0.5, 0.5);
  EXPECT_NEAR(d.discord, kDiscord, 1e-14);
  EXPECT_EQ(d.n_max, 0u);
}

TEST(Rho0, TruncatedRouteAgrees) {
  gen::Engine g(17);
  for (int trial = 0; trial < 10; ++trial) {
    const double p = gen::uniform(g, 0.0, 1.0);
    const double lambda = gen::uniform(g, 0.0, 0.9);
    const auto closed = discord_rho0(p, lambda);
    const auto matrix = discord_rho0(p, lambda, Route::truncated_matrix);
    EXPECT_NEAR(closed.s_global, matrix.s_global, 1e-9) << p << " " << lambda;
    EXPECT_NEAR(closed.s_reduced, matrix.s_reduced, 1e-9) << p << " " << lambda;
    EXPECT_GT(matrix.n_max, 0u);
  }
}

TEST(Rho0, ReducedSpectrumSumsToTruncatedTrace) {
  const auto s = reduced_spectrum_rho0(0.3, 0.8, 50);
  EXPECT_NEAR(s.sum(), 1.0 - 0.3 * std::pow(0.64, 50), 1e-14);
}

TEST(Rho0, TrivialPoints) {
  for (double lambda : {0.0, 0.3, 0.9}) {
    EXPECT_EQ(discord_rho0(0.0, lambda).discord, 0.0);
    EXPECT_NEAR(discord_rho0(1.0, lambda).discord, reduced_entropy_rho0(1.0, lambda), 1e-15);
    EXPECT_NEAR(discord_rho0(1.0, lambda).s_global, 0.0, 1e-15);
  }
  for (double p : {0.0, 0.4, 1.0}) EXPECT_EQ(discord_rho0(p, 0.0).discord, 0.0);
}

TEST(Rho0, DomainErrors) {
  EXPECT_THROW(discord_rho0(-0.1, 0.5), domain_error);
  EXPECT_THROW(discord_rho0(0.5, 1.0), domain_error);
}

TEST(PhotonCounting, DistributionOfRho0) {
  const auto rho = werner({0.5, 0.5, 0.0}, {20, 1e-12});
  const auto t = photon_counting_distribution(rho);
  EXPECT_NEAR(t(0, 0), 0.5 * 0.75 + 0.5, 1e-15);
  EXPECT_NEAR(t(2, 2), 0.5 * 0.75 * std::pow(0.25, 2), 1e-15);
  EXPECT_EQ(t(1, 2), 0.0);
}

TEST(Triple, CoincideAtHalf) {
  const auto t = nonclassicality_triple_rho0(0.5, 0.5);
  EXPECT_NEAR(t.discord, kDiscord, 1e-14);
  EXPECT_NEAR(t.amid, kDiscord, 1e-10);
  EXPECT_NEAR(t.req, kDiscord, 1e-10);
  EXPECT_TRUE(t.reduced_majorizes_global);
}

TEST(Triple, MutualInfoIdentity) {
  // With counts diagonal, I_c = H(p_B) and AMID = D.
  const auto rho = werner({0.7, 0.6, 0.0}, choose_cutoff({0.7, 0.6, 0.0}, 1e-13));
  const auto info = photon_counting_info(rho);
  EXPECT_NEAR(info.h_a, info.h_b, 1e-13);
  EXPECT_NEAR(info.h_joint, info.h_b, 1e-13);
  EXPECT_NEAR(classical_mutual_info_photon_counting(rho), info.h_b, 1e-13);
}
