#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "infodep/efficiency.hpp"
#include "infodep/functional.hpp"
#include "infodep/joint_pmf.hpp"
#include "infodep/sample_table.hpp"

namespace infodep {

/// Random strictly positive pmf: cells are independent Gamma(concentration)
/// draws, normalized (a symmetric Dirichlet on the nx*ny cells). An infinite
/// concentration gives the uniform pmf. Y codes are 0..ny-1.
JointPmfd gen_joint_pmf(Eigen::Index nx, Eigen::Index ny, double concentration, std::uint64_t seed);

/// Columns `x_value` (0 where unobserved) and `observed` (0/1). Each row draws
/// Y and then the observation flag.
SampleTable gen_mcar(const McarGaussianModel& model, std::size_t n, std::uint64_t seed);

/// Columns `x` and `y`: standard normal pairs with correlation rho.
SampleTable gen_bivariate_normal(double rho, std::size_t n, std::uint64_t seed);

/// Rows are sqrt(2) sin(2 pi j t), sqrt(2) cos(2 pi j t) for j = 1, 2, ... in
/// that order, sampled on the uniform grid t_a = a/(m-1). Orthonormal under
/// trapezoid quadrature whenever m >= 2k + 2.
Eigen::MatrixXd fourier_basis(Eigen::Index k, Eigen::Index m);

struct FlmConfig {
  std::size_t n = 200;
  Eigen::Index grid_size = 64;
  std::vector<double> x_variances{4.0, 2.0, 1.0};
  std::vector<double> beta_diag{1.0, 1.0, 1.0};
  double noise_sd = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// X_i = sum_j xi_ij phi_j with xi_ij ~ N(0, x_variances[j]);
/// Y_i = sum_j beta_j xi_ij phi_j + eps_i with eps_i(t_a) iid N(0, noise_sd^2).
struct FlmPair {
  CurveSetd x;
  CurveSetd y;
};

FlmPair gen_flm_pair(const FlmConfig& config);

/// Population D1 of the construction: sum b^2 s^2 / (sum b^2 s^2 + noise_sd^2).
double population_d1(const FlmConfig& config);

}  // namespace infodep
