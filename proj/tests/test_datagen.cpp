#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "infodep/datagen.hpp"
#include "infodep/discrete.hpp"
#include "test_util.hpp"

using namespace infodep;

namespace {

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = double(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i] / n;
    mb += b[i] / n;
  }
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

TEST(Random, StreamSeedsDiffer) {
  EXPECT_NE(stream_seed(1, 0), stream_seed(1, 1));
  EXPECT_NE(stream_seed(1, 0), stream_seed(2, 0));
  Rng a(5), b(5);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.normal(), b.normal());
}

TEST(Random, MomentsOfTransforms) {
  Rng rng(1);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0, sg = 0, sg_small = 0;
  for (int k = 0; k < n; ++k) {
    su += rng.uniform();
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    sg += rng.gamma(2.5);
    sg_small += rng.gamma(0.3);
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.01);
  EXPECT_NEAR(sg / n, 2.5, 0.02);
  EXPECT_NEAR(sg_small / n, 0.3, 0.01);
  for (int k = 0; k < 1000; ++k) EXPECT_LT(rng.below(7), 7u);
}

TEST(GenJointPmf, ValidDeterministicAndUniformLimit) {
  const auto a = gen_joint_pmf(3, 4, 1.0, 7);
  const auto b = gen_joint_pmf(3, 4, 1.0, 7);
  EXPECT_EQ(a.probs(), b.probs());
  EXPECT_EQ(a.nx(), 3);
  EXPECT_EQ(a.ny(), 4);
  EXPECT_NEAR(a.probs().sum(), 1.0, 1e-12);
  EXPECT_GT(a.probs().minCoeff(), 0.0);
  EXPECT_NE(a.probs(), gen_joint_pmf(3, 4, 1.0, 8).probs());

  const auto u = gen_joint_pmf(2, 2, std::numeric_limits<double>::infinity(), 1);
  EXPECT_LT((u.probs().array() - 0.25).abs().maxCoeff(), 1e-15);
  const auto near = gen_joint_pmf(2, 2, 1e6, 1);
  EXPECT_LT((near.probs().array() - 0.25).abs().maxCoeff(), 0.01);

  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto tiny = gen_joint_pmf(6, 6, 0.05, s);
    EXPECT_GT(tiny.probs().minCoeff(), 0.0);
  }
  EXPECT_THROW(gen_joint_pmf(1, 3, 1.0, 1), Error);
  EXPECT_THROW(gen_joint_pmf(2, 3, 0.0, 1), Error);
}

TEST(GenMcar, ObservedFraction) {
  const auto all = gen_mcar({0.0, 1.0, 1.0}, 500, 1);
  for (double v : all.column("observed").numeric()) EXPECT_EQ(v, 1.0);
  const auto none = gen_mcar({0.0, 1.0, 0.0}, 500, 1);
  for (double v : none.column("observed").numeric()) EXPECT_EQ(v, 0.0);
  for (double v : none.column("x_value").numeric()) EXPECT_EQ(v, 0.0);

  const auto half = gen_mcar({0.0, 1.0, 0.5}, 100000, 99);
  double obs = 0;
  for (double v : half.column("observed").numeric()) obs += v;
  EXPECT_NEAR(obs / 100000.0, 0.5, 0.01);
  EXPECT_TRUE(half == gen_mcar({0.0, 1.0, 0.5}, 100000, 99));
}

TEST(GenBivariateNormal, Correlation) {
  const auto zero = gen_bivariate_normal(0.0, 10000, 3);
  EXPECT_LT(std::abs(correlation(zero.column("x").numeric(), zero.column("y").numeric())), 3.0 / 100.0);
  const auto six = gen_bivariate_normal(0.6, 100000, 4);
  EXPECT_NEAR(correlation(six.column("x").numeric(), six.column("y").numeric()), 0.6, 0.01);
  EXPECT_TRUE(six == gen_bivariate_normal(0.6, 100000, 4));
  EXPECT_THROW(gen_bivariate_normal(1.0, 10, 1), Error);
}

TEST(FourierBasis, OrthonormalUnderTrapezoid) {
  for (Eigen::Index k : {1, 3, 6})
    for (Eigen::Index m : {2 * k + 2, 4 * k, Eigen::Index(100)}) {
      const auto b = fourier_basis(k, m);
      const auto w = trapezoid_weights(CurveSetd::uniform_grid(m));
      const Eigen::MatrixXd g = b * w.asDiagonal() * b.transpose();
      EXPECT_LT((g - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-12) << k << " " << m;
    }
}

TEST(GenFlmPair, ShapesDeterminismAndErrors) {
  const FlmConfig cfg{30, 16, {4, 2, 1}, {1, 0.5, 0}, 0.2, 5};
  const auto a = gen_flm_pair(cfg), b = gen_flm_pair(cfg);
  EXPECT_EQ(a.x.values(), b.x.values());
  EXPECT_EQ(a.y.values(), b.y.values());
  EXPECT_EQ(a.x.n(), 30);
  EXPECT_EQ(a.y.m(), 16);
  EXPECT_THROW(gen_flm_pair({30, 16, {4, 2}, {1}, 0.2, 5}), Error);
  EXPECT_THROW(gen_flm_pair({30, 11, {4, 2, 1}, {1, 1, 1}, 0.2, 5}), Error);
}

TEST(GenFlmPair, NoiselessYIsCapturedByKComponents) {
  const auto p = gen_flm_pair({100, 24, {4, 2, 1}, {1, 1, 1}, 0.0, 2});
  const auto s = fpca(center(p.y).curves, 1.0);
  EXPECT_LE(s.k, 3);
  EXPECT_NEAR(s.captured_fraction(), 1.0, 1e-10);
  FunctionalOptions opt;
  opt.threshold_x = opt.threshold_y = 1.0;
  EXPECT_NEAR(functional_measures(p.x, p.y, opt).d1.dep.raw, 1.0, 1e-8);
}

TEST(GenFlmPair, PopulationD1) {
  EXPECT_NEAR(population_d1({10, 16, {4, 2, 1}, {1, 1, 1}, std::sqrt(3.0), 0}), 0.7, 1e-15);
  EXPECT_EQ(population_d1({10, 16, {4, 2, 1}, {1, 1, 1}, 0.0, 0}), 1.0);
  EXPECT_EQ(population_d1({10, 16, {4, 2, 1}, {0, 0, 0}, 1.0, 0}), 0.0);
}
