// Randomized properties. Each test loops over cases drawn from a fixed seed.

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "cvw/bounds_general.hpp"
#include "cvw/exact_special.hpp"
#include "generators.hpp"

using namespace cvw;
using gen::Engine;

namespace {

TwoModeState swap_modes(const TwoModeState& rho) {
  std::vector<Triplet> e;
  const auto n = rho.n_max();
  rho.for_each_entry([&](std::size_t a, std::size_t b, std::size_t ap, std::size_t bp, cplx v) {
    e.emplace_back(static_cast<Eigen::Index>(fock_index(b, a, n)), static_cast<Eigen::Index>(fock_index(bp, ap, n)), v);
  });
  return TwoModeState::from_triplets(n, e);
}

}  // namespace

TEST(Property, EntropyIsPermutationInvariant) {
  Engine g(101);
  for (int trial = 0; trial < 100; ++trial) {
    auto v = gen::probability_vector(g, gen::uniform_index(g, 1, 30));
    const double h = shannon_entropy(v);
    std::shuffle(v.begin(), v.end(), g);
    EXPECT_NEAR(shannon_entropy(v), h, 1e-14);
    EXPECT_LE(h, std::log(static_cast<double>(v.size())) + 1e-14);
  }
}

TEST(Property, PartialTransposeIsInvolution) {
  Engine g(103);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = gen::two_mode_state(g, gen::uniform_index(g, 2, 5), gen::uniform_index(g, 1, 4));
    for (auto mode : {Mode::A, Mode::B}) {
      const DenseMatrix back = partial_transpose(partial_transpose(rho, mode), mode).dense();
      EXPECT_EQ((back - rho.dense()).cwiseAbs().maxCoeff(), 0.0);
    }
    // Trace and spectrum of the full transpose are preserved.
    EXPECT_NEAR(partial_transpose(rho, Mode::A).trace(), rho.trace(), 1e-14);
  }
}

TEST(Property, PartialTraceGivesStates) {
  Engine g(107);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = gen::two_mode_state(g, gen::uniform_index(g, 2, 5), gen::uniform_index(g, 1, 6));
    for (auto mode : {Mode::A, Mode::B}) {
      const auto red = partial_trace(rho, mode);
      EXPECT_NEAR(red.trace(), 1.0, 1e-13);
      EXPECT_GT(eig_spectrum(red).min(), -1e-13);
    }
  }
}

TEST(Property, PureStateReducedEntropiesAgree) {
  Engine g(109);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = gen::two_mode_state(g, gen::uniform_index(g, 2, 5), 1);
    const double sa = von_neumann_entropy(eig_spectrum(partial_trace(rho, Mode::B)));
    const double sb = von_neumann_entropy(eig_spectrum(partial_trace(rho, Mode::A)));
    EXPECT_NEAR(sa, sb, 1e-11);
    EXPECT_NEAR(von_neumann_entropy(eig_spectrum(rho)), 0.0, 1e-11);
  }
}

TEST(Property, MixtureSpectrumMatchesExplicitMixture) {
  Engine g(113);
  for (int trial = 0; trial < 50; ++trial) {
    const auto dim = static_cast<Eigen::Index>(gen::uniform_index(g, 2, 6));
    Eigen::VectorXcd a(dim);
    Eigen::VectorXcd b(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      a(i) = gen::complex_normal(g);
      b(i) = gen::complex_normal(g);
    }
    a.normalize();
    b.normalize();
    const double z = gen::uniform(g, 0.0, 1.0);
    const DenseMatrix rho = z * a * a.adjoint() + (1.0 - z) * b * b.adjoint();
    const auto s = eig_spectrum(rho);
    const auto [n1, n2] = two_component_mixture_spectrum(z, 1.0 - z, std::norm(a.dot(b)));
    EXPECT_NEAR(s[0], n1, 1e-12);
    EXPECT_NEAR(s[1], n2, 1e-12);
  }
}

TEST(Property, WernerIsSwapSymmetric) {
  Engine g(127);
  for (int trial = 0; trial < 10; ++trial) {
    const auto w = gen::werner_params(g, 0.7, 0.7);
    const auto rho = werner(w, {15, 1e-12});
    const DenseMatrix diff = swap_modes(rho).dense() - rho.dense();
    EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-16);
    const double sa = von_neumann_entropy(eig_spectrum(partial_trace(rho, Mode::B)));
    const double sb = von_neumann_entropy(eig_spectrum(partial_trace(rho, Mode::A)));
    EXPECT_NEAR(sa, sb, 1e-13);
  }
}

TEST(Property, MajorizationOrdersEntropy) {
  Engine g(131);
  int comparable = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto n = gen::uniform_index(g, 2, 5);
    const Spectrum a(gen::probability_vector(g, n));
    const Spectrum b(gen::probability_vector(g, n));
    if (is_more_mixed(a, b)) {
      ++comparable;
      EXPECT_GE(von_neumann_entropy(a), von_neumann_entropy(b) - 1e-14);
    }
  }
  EXPECT_GT(comparable, 100);
}

TEST(Property, ReducedRho0MajorizesGlobal) {
  Engine g(137);
  for (int trial = 0; trial < 50; ++trial) {
    const double p = gen::uniform(g, 0.0, 1.0);
    const double lambda = gen::uniform(g, 0.0, 0.95);
    EXPECT_TRUE(nonclassicality_triple_rho0(p, lambda).reduced_majorizes_global) << p << " " << lambda;
    EXPECT_GE(discord_rho0(p, lambda).discord, -1e-15);
  }
}

TEST(Property, BoundsOrdered) {
  Engine g(139);
  for (int trial = 0; trial < 30; ++trial) {
    const auto w = gen::werner_params(g, 0.85, 0.85);
    const auto b = bounds(w);
    EXPECT_LE(b.L, b.U + 1e-10) << w.p << " " << w.lambda << " " << w.mu;
    EXPECT_GE(b.U, -1e-10);
    EXPECT_LE(b.h_eig, b.s_reduced + 1e-10);
    EXPECT_NEAR(b.mid, b.U, 1e-8);
  }
}
