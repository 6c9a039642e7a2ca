#include <cmath>

#include <gtest/gtest.h>

#include "cvw/bounds_general.hpp"
#include "generators.hpp"

using namespace cvw;

// Reference values from numpy: e_mn listed explicitly, M diagonalized by
// eigvalsh, conditional entropy from H(p_AB) - H(p_B), cutoff 200.
struct Reference {
  WernerParams w;
  double s_global, s_reduced, h_eig, U, L;
};

const Reference kReferences[] = {
    {{0.5, 0.8, 0.8}, 2.4113758265935656, 1.8150505410936162, 1.3304404422365874, 0.734115156736638, 0.31119998504685875},
    {{0.5, 0.5, 0.8}, 2.33877894228204, 1.401507114292037, 1.202486794238552, 0.265214966248549, -0.029746557443194765},
};

TEST(Bounds, MatchReference) {
  for (const auto& r : kReferences) {
    const auto b = bounds(r.w);
    EXPECT_NEAR(b.s_global, r.s_global, 1e-9);
    EXPECT_NEAR(b.s_reduced, r.s_reduced, 1e-9);
    EXPECT_NEAR(b.h_eig, r.h_eig, 1e-9);
    EXPECT_NEAR(b.U, r.U, 1e-9);
    EXPECT_NEAR(b.L, r.L, 1e-9);
    EXPECT_NEAR(b.mid, b.U, 1e-8);
  }
}

TEST(Bounds, GlobalEntropyMatchesMatrixSpectrum) {
  const WernerParams w{0.3, 0.6, 0.5};
  const auto fc = choose_cutoff(w, 1e-12);
  const double direct = von_neumann_entropy(eig_spectrum(werner(w, fc)));
  EXPECT_NEAR(global_entropy_general(w, fc), direct, 1e-9);
  const auto parts = global_entropy_parts(w, fc);
  EXPECT_NEAR(parts.e_mass + parts.f_mass, 1.0, 1e-12);
}

TEST(Bounds, ReducesToExactDiscordAtMuZero) {
  for (const auto& [p, lambda] : {std::pair{0.5, 0.5}, std::pair{0.2, 0.9}, std::pair{0.9, 0.3}}) {
    const auto b = bounds({p, lambda, 0.0});
    EXPECT_NEAR(b.U, discord_rho0(p, lambda).discord, 1e-9);
    EXPECT_EQ(b.h_eig, 0.0);
  }
}

TEST(Bounds, PureTmsvAndProductState) {
  const auto pure = bounds({1.0, 0.6, 0.7});
  EXPECT_NEAR(pure.U, thermal_entropy(0.6), 1e-10);
  EXPECT_NEAR(pure.L, thermal_entropy(0.6), 1e-10);
  const auto product = bounds({0.0, 0.6, 0.7});
  EXPECT_NEAR(product.U, 0.0, 1e-10);
  EXPECT_NEAR(product.L, 0.0, 1e-10);
}

TEST(Bounds, TruncationErrorOnSmallCutoff) {
  EXPECT_THROW(global_entropy_parts({0.5, 0.8, 0.8}, {10, 1e-12}), truncation_error);
}

TEST(Bounds, ConditionalEntropyClosedMatchesDirect) {
  gen::Engine g(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto w = gen::werner_params(g, 0.85, 0.85);
    const auto rep = conditional_entropy_eig_report(w, choose_cutoff(w, 1e-12));
    EXPECT_NEAR(rep.value, rep.direct, 1e-10);
  }
}

TEST(Bounds, PhotonCountingOnExplicitState) {
  const WernerParams w{0.4, 0.5, 0.6};
  const auto fc = choose_cutoff(w, 1e-12);
  const auto pc = photon_counting_bounds(werner(w, fc));
  const auto b = bounds(w);
  EXPECT_NEAR(pc.U, b.U, 1e-9);
  EXPECT_NEAR(pc.mid, b.mid, 1e-9);
  EXPECT_NEAR(pc.h_eig, b.h_eig, 1e-9);
}

TEST(Bounds, PhotonCountingRejectsCoherentReducedState) {
  std::vector<Triplet> e{{0, 0, 0.5}, {0, 1, 0.5}, {1, 0, 0.5}, {1, 1, 0.5}};
  EXPECT_THROW(photon_counting_bounds(TwoModeState::from_triplets(2, e)), domain_error);
}

// ---- separability

TEST(Separability, Thresholds) {
  EXPECT_NEAR(p_sep(0.8), 0.0841995841995842, 1e-15);
  EXPECT_NEAR(p_ppt(0.8), 0.1957036354601235, 1e-12);
  EXPECT_EQ(separability_region(0.05, 0.8), SeparabilityRegion::separable);
  EXPECT_EQ(separability_region(0.1, 0.8), SeparabilityRegion::ppt_unknown);
  EXPECT_EQ(separability_region(0.5, 0.8), SeparabilityRegion::entangled_non_ppt);
  EXPECT_STREQ(to_string(SeparabilityRegion::ppt_unknown), "PPT-unknown");
}

TEST(Separability, PartialTransposeSignFlipsAtPpt) {
  const double mu = 0.6;
  const double pp = p_ppt(mu);
  const FockCutoff fc = choose_cutoff({1.0, std::pow(mu, 4), mu}, 1e-13);
  EXPECT_GT(partial_transpose_min_eigenvalue(pp - 1e-3, mu, fc), -1e-12);
  EXPECT_LT(partial_transpose_min_eigenvalue(pp + 1e-3, mu, fc), -1e-8);
}

TEST(Separability, RegionReportedOnlyOnFamily) {
  const double mu = 0.8;
  EXPECT_EQ(bounds({0.5, std::pow(mu, 4), mu}).region, SeparabilityRegion::entangled_non_ppt);
  EXPECT_EQ(bounds({0.5, 0.8, mu}).region, SeparabilityRegion::not_classified);
}

// ---- witness

TEST(Witness, OffDiagonalBlockIsNonNormal) {
  const auto rho = werner({0.5, 0.5, 0.3}, {12, 1e-12});
  EXPECT_GT(offdiag_block_commutator_norm(rho, 0, 1), 1e-3);
  const auto classical = werner({0.0, 0.5, 0.3}, {12, 1e-12});
  EXPECT_EQ(offdiag_block_commutator_norm(classical, 0, 1), 0.0);
  EXPECT_TRUE(discord_positive_witness(0.5, 0.5));
  EXPECT_FALSE(discord_positive_witness(0.0, 0.5));
  EXPECT_FALSE(discord_positive_witness(0.5, 0.0));
}
