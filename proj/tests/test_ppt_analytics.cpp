#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cvw/ppt_analytics.hpp"

using namespace cvw;

// numpy at cutoff 120 (λ = 0.5) and 400 (λ = 0.9): explicit eigenvalue
// lists, per-m conditional spectra from eigvalsh.
struct Reference {
  double lambda, s_global, s_reduced, h_eig, U, L;
};

const Reference kReferences[] = {
    {0.5, 2.136074553944969, 1.2616471742485327, 1.221000969976408, 0.3465735902799718, 0.16529339114348174},
    {0.9, 5.8098979689765455, 3.2254606574213915, 3.2082697740591093, 0.6238324625039553, 0.5038509356636043},
};

TEST(Ppt, MatchesReference) {
  for (const auto& r : kReferences) {
    const auto b = ppt_bounds(r.lambda, 1e-12);
    EXPECT_NEAR(b.s_global, r.s_global, 1e-10) << r.lambda;
    EXPECT_NEAR(b.s_reduced, r.s_reduced, 1e-10) << r.lambda;
    EXPECT_NEAR(b.h_eig, r.h_eig, 1e-10) << r.lambda;
    EXPECT_NEAR(b.U, r.U, 1e-10) << r.lambda;
    EXPECT_NEAR(b.L, r.L, 1e-10) << r.lambda;
    EXPECT_NEAR(b.mid, b.U, 1e-10) << r.lambda;
  }
}

TEST(Ppt, UpperBoundIsLambdaLn2) {
  for (double l : {0.1, 0.37, 0.8}) EXPECT_DOUBLE_EQ(ppt_bounds(l).U, l * std::numbers::ln2);
}

TEST(Ppt, SeriesTailBoundHolds) {
  const auto coarse = ppt_reduced_entropy(0.7, 1e-6);
  const auto fine = ppt_reduced_entropy(0.7, 1e-14);
  EXPECT_LE(std::abs(coarse.value - fine.value), coarse.tail_bound + 1e-13);
  EXPECT_LT(fine.tail_bound, 1e-14);
  EXPECT_GT(fine.terms, coarse.terms);
}

TEST(Ppt, EigenvaluesSumToOne) {
  const auto s = ppt_eigenvalues(0.6, 150);
  EXPECT_NEAR(s.sum(), 1.0, 1e-13);
  EXPECT_EQ(s.size(), 150u * 150u);
}

TEST(Ppt, EigenvaluesMatchConstructedState) {
  const double lambda = 0.4;
  const FockCutoff fc{30, 1e-12};
  const auto numeric = eig_spectrum(ppt_werner(lambda, fc));
  const auto analytic = ppt_eigenvalues(lambda, fc.n_max);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_NEAR(numeric[i], analytic[i], 1e-14);
}

TEST(Ppt, JointShannonMatchesSum) {
  const double lambda = 0.6;
  const double norm = ppt_normalization(lambda);
  double h = 0.0;
  for (int m = 0; m < 300; ++m)
    for (int n = 0; n < 300; ++n) {
      const double v = norm * std::pow(lambda, m + n) * (m == n ? 2.0 : 1.0);
      if (v > 0.0) h -= v * std::log(v);
    }
  EXPECT_NEAR(ppt_joint_shannon_entropy(lambda), h, 1e-11);
}

TEST(Ppt, VacuumLimit) {
  const auto b = ppt_bounds(0.0);
  EXPECT_EQ(b.U, 0.0);
  EXPECT_EQ(b.s_global, 0.0);
  EXPECT_DOUBLE_EQ(b.norm_const, 0.5);
}

TEST(Ppt, Domain) {
  EXPECT_THROW(ppt_bounds(1.0), domain_error);
  EXPECT_THROW(ppt_reduced_entropy(0.5, 0.0), domain_error);
}
