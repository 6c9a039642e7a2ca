#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "cvw/fock_core.hpp"
#include "cvw/states.hpp"
#include "generators.hpp"

using namespace cvw;

// ---- indexing and spectra

TEST(FockIndex, RowMajorInModeA) {
  EXPECT_EQ(fock_index(0, 0, 5), 0u);
  EXPECT_EQ(fock_index(0, 4, 5), 4u);
  EXPECT_EQ(fock_index(1, 0, 5), 5u);
  EXPECT_EQ(fock_index(3, 2, 5), 17u);
}

TEST(Spectrum, SortedDescending) {
  const Spectrum s({0.1, 0.5, 0.0, 0.4});
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0], 0.5);
  EXPECT_EQ(s.min(), 0.0);
  EXPECT_DOUBLE_EQ(s.sum(), 1.0);
  EXPECT_EQ(s.count_above(0.05), 3u);
}

TEST(EigSpectrum, SparseBlocksMatchDense) {
  gen::Engine g(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = gen::two_mode_state(g, 4, 3);
    const auto sparse = eig_spectrum(rho);
    const auto dense = eig_spectrum(rho.dense());
    ASSERT_EQ(sparse.size(), dense.size());
    for (std::size_t i = 0; i < sparse.size(); ++i) EXPECT_NEAR(sparse[i], dense[i], 1e-12);
  }
}

TEST(EigSpectrum, BlockDiagonalWernerMatchesDense) {
  const auto rho = werner({0.3, 0.6, 0.4}, {12, 1e-12});
  const auto a = eig_spectrum(rho);
  const auto b = eig_spectrum(rho.dense());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-13);
}

// ---- entropies

TEST(Entropy, UniformIsLogN) {
  const std::vector<double> v(8, 0.125);
  EXPECT_NEAR(von_neumann_entropy(v), std::log(8.0), 1e-15);
  EXPECT_NEAR(shannon_entropy(v), std::log(8.0), 1e-15);
}

TEST(Entropy, PureStateIsZero) {
  const std::vector<double> v{1.0, 0.0, 0.0};
  EXPECT_EQ(von_neumann_entropy(v), 0.0);
}

TEST(Entropy, ClipsRoundingNoiseRejectsNegatives) {
  const std::vector<double> noisy{1.0, -5e-11};
  EXPECT_EQ(von_neumann_entropy(noisy), 0.0);
  const std::vector<double> bad{1.0, -1e-9};
  EXPECT_THROW(von_neumann_entropy(bad), invalid_spectrum);
  EXPECT_THROW(shannon_entropy(bad), invalid_spectrum);
}

// ---- partial operations

TEST(PartialTrace, ProductState) {
  const std::size_t n = 6;
  const auto th = thermal_weights(0.5, n);
  std::vector<Triplet> e;
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<Eigen::Index>(fock_index(1, k, n));
    e.emplace_back(i, i, th[k]);
  }
  const auto rho = TwoModeState::from_triplets(n, e);
  const auto a = partial_trace(rho, Mode::B);
  const auto b = partial_trace(rho, Mode::A);
  double tr = 0.0;
  for (double x : th) tr += x;
  EXPECT_NEAR(a.rho(1, 1).real(), tr, 1e-15);
  EXPECT_NEAR(a.rho(0, 0).real(), 0.0, 1e-15);
  for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(b.rho(k, k).real(), th[k], 1e-15);
}

TEST(PartialTranspose, TmsvNegativity) {
  // The |01>,|10> block of the transposed TMSV is (1-λ²)λ σ_x.
  const double lambda = 0.6;
  const auto rho = werner({1.0, lambda, 0.0}, {40, 1e-12});
  const auto pt = partial_transpose(rho, Mode::A);
  EXPECT_NEAR(eig_spectrum(pt).min(), -(1.0 - lambda * lambda) * lambda, 1e-12);
}

TEST(PartialTranspose, ModesAgreeUpToFullTranspose) {
  gen::Engine g(11);
  const auto rho = gen::two_mode_state(g, 3, 9);
  const DenseMatrix a = partial_transpose(rho, Mode::A).dense();
  const DenseMatrix b = partial_transpose(rho, Mode::B).dense();
  EXPECT_LT((a - b.transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

// ---- two-component mixtures

TEST(MixtureSpectrum, MatchesGramMatrix) {
  gen::Engine g(3);
  for (int trial = 0; trial < 200; ++trial) {
    const double z = gen::uniform(g, 0.0, 1.0);
    const double ov = gen::uniform(g, 0.0, 1.0);
    Eigen::Matrix2d gram;
    gram << z, std::sqrt(z * (1 - z) * ov), std::sqrt(z * (1 - z) * ov), 1 - z;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gram);
    const auto [n1, n2] = two_component_mixture_spectrum(z, 1 - z, ov);
    EXPECT_NEAR(n1, es.eigenvalues()(1), 1e-13);
    EXPECT_NEAR(n2, es.eigenvalues()(0), 1e-13);
  }
}

TEST(MixtureSpectrum, SmallEigenvalueKeepsRelativeAccuracy) {
  // Orthogonal branches: ν₂ = ζ₂ exactly, far below the rounding of 1 - x.
  const auto [n1, n2] = two_component_mixture_spectrum(1.0 - 1e-14, 1e-14, 0.0);
  EXPECT_NEAR(n2 / 1e-14, 1.0, 1e-10);
  EXPECT_NEAR(n1 + n2, 1.0, 1e-16);
}

TEST(MixtureSpectrum, RejectsBadInput) {
  EXPECT_THROW(two_component_mixture_spectrum(0.7, 0.7, 0.5), domain_error);
  EXPECT_THROW(two_component_mixture_spectrum(0.5, 0.5, 1.5), domain_error);
}

// ---- majorization and validation

TEST(Majorization, Basic) {
  const Spectrum uniform({0.25, 0.25, 0.25, 0.25});
  const Spectrum peaked({0.7, 0.2, 0.1});
  EXPECT_TRUE(is_more_mixed(uniform, peaked));
  EXPECT_FALSE(is_more_mixed(peaked, uniform));
}

TEST(ValidateState, TraceDeficit) {
  const auto rho = werner({0.5, 0.9, 0.0}, {5, 1e-12});
  EXPECT_THROW(validate_state(rho, 1e-12), truncation_error);
  EXPECT_NO_THROW(validate_state(rho, 0.5));
}

TEST(ValidateState, NonHermitian) {
  std::vector<Triplet> e{{0, 0, 1.0}, {0, 1, cplx(0.1, 0.0)}};
  const auto rho = TwoModeState::from_triplets(2, e);
  EXPECT_THROW(validate_state(rho, 1e-12), domain_error);
}

TEST(ValidateState, NegativeEigenvalue) {
  std::vector<Triplet> e{{0, 0, 0.5}, {3, 3, 0.5}, {0, 3, 0.6}, {3, 0, 0.6}};
  const auto rho = TwoModeState::from_triplets(2, e);
  EXPECT_THROW(validate_state(rho, 1e-12), invalid_spectrum);
}
