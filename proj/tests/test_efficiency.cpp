#include <gtest/gtest.h>

#include <cmath>

#include "infodep/efficiency.hpp"
#include "test_util.hpp"

using namespace infodep;

TEST(McarMeasure, Examples) {
  EXPECT_EQ(mcar_measure({0.0, 1.0, 0.7}).dep.value, 0.7);
  EXPECT_EQ(mcar_measure({0.0, 1.0, 1.0}).dep.value, 1.0);
  EXPECT_EQ(mcar_measure({0.0, 1.0, 0.0}).dep.value, 0.0);
  const auto r = mcar_measure({2.0, 4.0, 0.25});
  EXPECT_EQ(r.diagnostics.at("info_y"), 0.25);
  EXPECT_EQ(r.diagnostics.at("info_x"), 0.0625);
  EXPECT_EQ(r.diagnostics.at("sample_size_ratio"), 4.0);
  EXPECT_FALSE(r.interpretation.empty());
}

TEST(McarMeasure, InvalidModel) {
  EXPECT_THROW(mcar_measure({0.0, 0.0, 0.5}), Error);
  EXPECT_THROW(mcar_measure({0.0, 1.0, 1.5}), Error);
}

TEST(MonteCarloFisher, Examples) {
  const auto half = mc_fisher_mcar({0.0, 1.0, 0.5}, 200000, 42);
  EXPECT_NEAR(half.info_x, 0.5, 0.02);
  EXPECT_EQ(half.info_y, 1.0);
  EXPECT_EQ(mc_fisher_mcar({0.0, 1.0, 0.0}, 5000, 1).info_x, 0.0);
  const auto full = mc_fisher_mcar({1.0, 2.0, 1.0}, 100000, 3);
  EXPECT_NEAR(full.info_x / 0.5, 1.0, 0.02);
  EXPECT_THROW(mc_fisher_mcar({0.0, 1.0, 0.5}, 999, 1), Error);
}

TEST(MonteCarloFisher, ConvergesAndRespectsProxyInequality) {
  for (double p : {0.25, 0.5, 0.9}) {
    for (auto [n_rep, tol] : {std::pair<std::size_t, double>{10000, 0.15}, {100000, 0.05}}) {
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        const McarGaussianModel m{0.5, 2.0, p};
        const auto f = mc_fisher_mcar(m, n_rep, seed);
        EXPECT_LT(std::abs(f.info_x / (p / 2.0) - 1.0), tol);
        EXPECT_LE(f.info_x, f.info_y + 2.0 * f.info_x_se);
        const auto r = efficiency_ratio(f);
        EXPECT_LT(std::abs(r.dep.value - mcar_measure(m).dep.value) / p, tol);
      }
    }
  }
}

TEST(MonteCarloFisher, Deterministic) {
  const McarGaussianModel m{0.0, 1.0, 0.7};
  const auto a = mc_fisher_mcar(m, 20000, 77);
  const auto b = mc_fisher_mcar(m, 20000, 77);
  EXPECT_EQ(a.info_x, b.info_x);
  EXPECT_EQ(a.info_x_se, b.info_x_se);
  EXPECT_NE(a.info_x, mc_fisher_mcar(m, 20000, 78).info_x);
}

TEST(EfficiencyRatio, Examples) {
  const auto half = efficiency_ratio({0.5, 1.0, 0.0, 0});
  EXPECT_EQ(half.dep.value, 0.5);
  EXPECT_EQ(half.diagnostics.at("sample_size_ratio"), 2.0);
  EXPECT_EQ(efficiency_ratio({1.0, 1.0, 0.0, 0}).dep.value, 1.0);
  const auto zero = efficiency_ratio({0.0, 1.0, 0.0, 0});
  EXPECT_EQ(zero.dep.value, 0.0);
  EXPECT_EQ(zero.diagnostics.count("sample_size_ratio"), 0u);
  try {
    efficiency_ratio({0.5, 0.0, 0.0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateTarget);
  }
}

TEST(BinaryR2, Examples) {
  EXPECT_NEAR(binary_r2(testutil::joint(testutil::example_2x2())).dep.raw, 0.36, 1e-15);
  Eigen::VectorXd a(2), b(2);
  a << 0.3, 0.7;
  b << 0.6, 0.4;
  EXPECT_NEAR(binary_r2(testutil::joint(a * b.transpose())).dep.raw, 0.0, 1e-15);
  Eigen::MatrixXd d(2, 2);
  d << 0.5, 0.0, 0.0, 0.5;
  EXPECT_EQ(binary_r2(testutil::joint(d)).dep.raw, 1.0);
}

TEST(BinaryR2, SymmetricExactlyAndMatchesOracle) {
  testutil::Gen g(10);
  for (int k = 0; k < 500; ++k) {
    const Eigen::MatrixXd p = g.pmf(2, 2);
    const Eigen::MatrixXd pt = p.transpose();
    const double r = binary_r2(testutil::joint(p)).dep.raw;
    EXPECT_EQ(r, binary_r2(testutil::joint(pt)).dep.raw);
    EXPECT_NEAR(r, oracle::binary_r2(testutil::to_table(p)), 1e-12);
  }
}

TEST(BinaryR2, DegenerateMargin) {
  Eigen::MatrixXd p(2, 2);
  p << 0.5, 0.5, 0.0, 0.0;
  EXPECT_THROW(binary_r2(testutil::joint(p)), Error);
  EXPECT_THROW(binary_r2(testutil::joint(Eigen::MatrixXd::Constant(3, 2, 1.0 / 6))), Error);
}
