#include "infodep/datagen.hpp"

#include <cmath>
#include <numbers>

#include "infodep/error.hpp"
#include "infodep/random.hpp"

namespace infodep {

JointPmfd gen_joint_pmf(Eigen::Index nx, Eigen::Index ny, double concentration, std::uint64_t seed) {
  if (nx < 2 || ny < 2) fail(ErrorKind::InvalidArgument, "a generated pmf needs at least 2 rows and 2 columns");
  if (!(concentration > 0.0)) fail(ErrorKind::InvalidArgument, "concentration must be positive");
  Eigen::MatrixXd cells(nx, ny);
  if (std::isinf(concentration)) {
    cells.setConstant(1.0);
  } else {
    Rng rng(seed);
    for (Eigen::Index i = 0; i < nx; ++i)
      for (Eigen::Index j = 0; j < ny; ++j) {
        double g = rng.gamma(concentration);
        // Very small shapes can underflow; a redraw keeps the pmf strictly positive.
        while (!(g > 0.0)) g = rng.gamma(concentration);
        cells(i, j) = g;
      }
  }
  cells /= cells.sum();
  return JointPmfd::from_matrix(cells);
}

SampleTable gen_mcar(const McarGaussianModel& model, std::size_t n, std::uint64_t seed) {
  model.validate();
  if (n < 1) fail(ErrorKind::InvalidArgument, "n must be at least 1");
  Rng rng(seed);
  std::vector<double> value(n), observed(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto obs = draw_mcar(model, rng);
    value[i] = obs.value;
    observed[i] = obs.observed ? 1.0 : 0.0;
  }
  SampleTable t;
  t.add_numeric("x_value", std::move(value));
  t.add_numeric("observed", std::move(observed));
  return t;
}

SampleTable gen_bivariate_normal(double rho, std::size_t n, std::uint64_t seed) {
  if (!(std::abs(rho) < 1.0)) fail(ErrorKind::InvalidArgument, "|rho| must be below 1");
  if (n < 1) fail(ErrorKind::InvalidArgument, "n must be at least 1");
  Rng rng(seed);
  const double s = std::sqrt(1.0 - rho * rho);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    x[i] = z1;
    y[i] = rho * z1 + s * z2;
  }
  SampleTable t;
  t.add_numeric("x", std::move(x));
  t.add_numeric("y", std::move(y));
  return t;
}

Eigen::MatrixXd fourier_basis(Eigen::Index k, Eigen::Index m) {
  if (k < 1 || m < 2) fail(ErrorKind::InvalidArgument, "fourier basis needs k >= 1 and m >= 2");
  Eigen::MatrixXd basis(k, m);
  const double two_pi = 2.0 * std::numbers::pi;
  for (Eigen::Index j = 0; j < k; ++j) {
    const double freq = double(j / 2 + 1);
    for (Eigen::Index a = 0; a < m; ++a) {
      const double t = double(a) / double(m - 1);
      basis(j, a) = std::numbers::sqrt2 * (j % 2 == 0 ? std::sin(two_pi * freq * t) : std::cos(two_pi * freq * t));
    }
  }
  return basis;
}

void FlmConfig::validate() const {
  const auto k = x_variances.size();
  if (k == 0) fail(ErrorKind::InvalidArgument, "at least one component is required");
  if (beta_diag.size() != k)
    fail(ErrorKind::InvalidArgument, "x_variances and beta_diag must have the same length");
  if (grid_size < Eigen::Index(4 * k)) fail(ErrorKind::InvalidArgument, "grid_size must be at least 4k");
  if (n < 3) fail(ErrorKind::InvalidArgument, "at least 3 curves are required");
  for (double v : x_variances)
    if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorKind::InvalidArgument, "component variances must be positive");
  for (double b : beta_diag)
    if (!std::isfinite(b)) fail(ErrorKind::InvalidArgument, "beta entries must be finite");
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) fail(ErrorKind::InvalidArgument, "noise_sd must be nonnegative");
}

FlmPair gen_flm_pair(const FlmConfig& config) {
  config.validate();
  const auto k = Eigen::Index(config.x_variances.size());
  const Eigen::Index m = config.grid_size;
  const auto n = Eigen::Index(config.n);
  const Eigen::MatrixXd basis = fourier_basis(k, m);

  Eigen::MatrixXd xi(n, k), noise(n, m);
  Rng rng(config.seed);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) xi(i, j) = std::sqrt(config.x_variances[j]) * rng.normal();
    for (Eigen::Index a = 0; a < m; ++a) noise(i, a) = config.noise_sd * rng.normal();
  }
  const Eigen::VectorXd beta = Eigen::Map<const Eigen::VectorXd>(config.beta_diag.data(), k);
  const Eigen::MatrixXd x = xi * basis;
  const Eigen::MatrixXd y = (xi * beta.asDiagonal()) * basis + noise;
  const Eigen::VectorXd grid = CurveSetd::uniform_grid(m);
  return {CurveSetd(grid, x, "x"), CurveSetd(grid, y, "y")};
}

double population_d1(const FlmConfig& config) {
  config.validate();
  double signal = 0.0;
  for (std::size_t j = 0; j < config.x_variances.size(); ++j)
    signal += config.beta_diag[j] * config.beta_diag[j] * config.x_variances[j];
  const double total = signal + config.noise_sd * config.noise_sd;
  if (!(total > 0.0)) fail(ErrorKind::DegenerateTarget, "Y has no variability");
  return signal / total;
}

}  // namespace infodep
