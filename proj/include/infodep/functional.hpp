#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "infodep/error.hpp"
#include "infodep/report.hpp"

namespace infodep {

/// n curves sampled on a shared, strictly increasing grid in [0,1].
template <typename Scalar>
class CurveSet {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  CurveSet(Vector grid, Matrix values, std::string name = {})
      : grid_(std::move(grid)), values_(std::move(values)), name_(std::move(name)) {
    validate();
  }

  const Vector& grid() const { return grid_; }
  const Matrix& values() const { return values_; }
  const std::string& name() const { return name_; }
  Eigen::Index n() const { return values_.rows(); }
  Eigen::Index m() const { return values_.cols(); }

  static Vector uniform_grid(Eigen::Index m) { return Vector::LinSpaced(m, Scalar(0), Scalar(1)); }

 private:
  void validate() const {
    if (grid_.size() < 4) fail(ErrorKind::InvalidArgument, "a curve set needs at least 4 grid points");
    if (values_.cols() != grid_.size())
      fail(ErrorKind::RaggedRows, "curves have " + std::to_string(values_.cols()) + " samples but the grid has " +
                                      std::to_string(grid_.size()));
    if (values_.rows() < 3) fail(ErrorKind::InvalidArgument, "a curve set needs at least 3 curves");
    for (Eigen::Index a = 1; a < grid_.size(); ++a)
      if (!(grid_(a) > grid_(a - 1))) fail(ErrorKind::GridNotIncreasing, "grid is not strictly increasing at index " + std::to_string(a));
    if (grid_(0) < Scalar(0) || grid_(grid_.size() - 1) > Scalar(1))
      fail(ErrorKind::InvalidArgument, "grid must lie within [0,1]");
    if (!values_.allFinite()) fail(ErrorKind::InvalidArgument, "curve values must be finite");
  }

  Vector grid_;
  Matrix values_;
  std::string name_;
};

using CurveSetd = CurveSet<double>;

/// Trapezoidal quadrature weights on a possibly non-uniform grid.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> trapezoid_weights(const Eigen::MatrixBase<Derived>& grid) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index m = grid.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(m);
  for (Eigen::Index a = 0; a + 1 < m; ++a) {
    const Scalar half = (grid(a + 1) - grid(a)) / Scalar(2);
    w(a) += half;
    w(a + 1) += half;
  }
  return w;
}

template <typename Scalar>
bool same_grid(const CurveSet<Scalar>& a, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& grid) {
  if (a.m() != grid.size()) return false;
  using std::abs;
  return ((a.grid() - grid).array().abs() <= Scalar(1e-12)).all();
}

template <typename Scalar>
struct Centered {
  CurveSet<Scalar> curves;
  typename CurveSet<Scalar>::Vector mean;
};

/// Subtracts the pointwise sample mean.
template <typename Scalar>
Centered<Scalar> center(const CurveSet<Scalar>& curves) {
  typename CurveSet<Scalar>::Vector mean = curves.values().colwise().mean().transpose();
  typename CurveSet<Scalar>::Matrix centered = curves.values().rowwise() - mean.transpose();
  return {CurveSet<Scalar>(curves.grid(), std::move(centered), curves.name()), std::move(mean)};
}

/// Sample covariance kernel C(s_a, s_b) = (1/n) sum_i v_ia v_ib of centered
/// curves, with the quadrature weights that turn it into an operator.
template <typename Scalar>
struct CovarianceOperator {
  typename CurveSet<Scalar>::Matrix kernel;
  typename CurveSet<Scalar>::Vector weights;

  /// Integral of C(t,t) dt.
  Scalar trace() const { return weights.dot(kernel.diagonal()); }
};

template <typename Scalar>
CovarianceOperator<Scalar> covariance(const CurveSet<Scalar>& centered) {
  const auto& v = centered.values();
  CovarianceOperator<Scalar> c;
  c.kernel = (v.transpose() * v) / Scalar(centered.n());
  c.weights = trapezoid_weights(centered.grid());
  return c;
}

/// Retained principal components of a curve set. Eigenfunctions are rows,
/// orthonormal under the quadrature inner product.
template <typename Scalar>
struct EigenSystem {
  using Matrix = typename CurveSet<Scalar>::Matrix;
  using Vector = typename CurveSet<Scalar>::Vector;

  Vector eigenvalues;     // retained, nonincreasing, positive
  Matrix eigenfunctions;  // k x m
  Vector cum_frac;        // cumulative variance fractions of the retained components
  Eigen::Index k = 0;
  Vector spectrum;        // every eigenvalue of the weighted operator, descending
  Scalar total_variance = 0;  // integral of C(t,t) dt
  Vector grid;
  Vector weights;

  /// Fraction of the total variance captured by the retained components.
  Scalar captured_fraction() const { return total_variance > Scalar(0) ? eigenvalues.sum() / total_variance : Scalar(0); }

  /// Components above the eigenvalue floor (1e-12 of the largest).
  Eigen::Index usable_components() const {
    const Scalar floor = Scalar(1e-12) * std::max(spectrum(0), Scalar(0));
    Eigen::Index c = 0;
    while (c < spectrum.size() && spectrum(c) > floor) ++c;
    return c;
  }
};

namespace detail {

template <typename Scalar>
struct FullDecomposition {
  typename CurveSet<Scalar>::Vector values;     // descending
  typename CurveSet<Scalar>::Matrix functions;  // rows, sign-fixed
  CovarianceOperator<Scalar> cov;
};

template <typename Scalar>
FullDecomposition<Scalar> decompose(const CurveSet<Scalar>& centered) {
  using Matrix = typename CurveSet<Scalar>::Matrix;
  using Vector = typename CurveSet<Scalar>::Vector;
  FullDecomposition<Scalar> out;
  out.cov = covariance(centered);
  const Vector sqrt_w = out.cov.weights.array().sqrt();
  // Symmetric form W^{1/2} C W^{1/2}; eigenvectors map back through W^{-1/2}.
  const Matrix sym = sqrt_w.asDiagonal() * out.cov.kernel * sqrt_w.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) fail(ErrorKind::RankDeficient, "eigendecomposition of the covariance operator failed");
  const Eigen::Index m = sym.rows();
  out.values = solver.eigenvalues().reverse();
  out.functions.resize(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Vector f = solver.eigenvectors().col(m - 1 - j).array() / sqrt_w.array();
    Eigen::Index arg = 0;
    for (Eigen::Index a = 1; a < m; ++a)
      if (std::abs(f(a)) > std::abs(f(arg))) arg = a;
    if (f(arg) < Scalar(0)) f = -f;
    out.functions.row(j) = f.transpose();
  }
  return out;
}

template <typename Scalar>
EigenSystem<Scalar> truncate(const FullDecomposition<Scalar>& full, const CurveSet<Scalar>& centered, Eigen::Index k) {
  EigenSystem<Scalar> sys;
  sys.spectrum = full.values;
  sys.total_variance = full.cov.trace();
  sys.grid = centered.grid();
  sys.weights = full.cov.weights;
  const Eigen::Index usable = sys.usable_components();
  if (k < 1 || k > usable)
    fail(ErrorKind::RankDeficient, "requested " + std::to_string(k) + " components but only " + std::to_string(usable) +
                                       " eigenvalues exceed the floor");
  const Scalar positive_total = full.values.cwiseMax(Scalar(0)).sum();
  sys.k = k;
  sys.eigenvalues = full.values.head(k);
  sys.eigenfunctions = full.functions.topRows(k);
  sys.cum_frac.resize(k);
  Scalar running = 0;
  for (Eigen::Index j = 0; j < k; ++j) {
    running += full.values(j);
    sys.cum_frac(j) = running / positive_total;
  }
  return sys;
}

template <typename Scalar>
Eigen::Index components_for(const typename CurveSet<Scalar>::Vector& spectrum, Scalar threshold) {
  const Scalar positive_total = spectrum.cwiseMax(Scalar(0)).sum();
  if (!(positive_total > Scalar(0))) fail(ErrorKind::RankDeficient, "curves have no variability");
  Scalar running = 0;
  for (Eigen::Index j = 0; j < spectrum.size(); ++j) {
    running += std::max(spectrum(j), Scalar(0));
    if (running / positive_total >= threshold - Scalar(1e-10)) return j + 1;
  }
  return spectrum.size();
}

}  // namespace detail

/// Functional PCA of centered curves: eigendecomposition of the quadrature
/// weighted covariance operator, keeping the fewest components whose
/// cumulative variance fraction reaches `threshold`. Eigenfunction signs make
/// the largest-magnitude entry positive (lowest index on ties).
template <typename Scalar>
EigenSystem<Scalar> fpca(const CurveSet<Scalar>& centered, Scalar threshold = Scalar(0.85)) {
  if (!(threshold > Scalar(0) && threshold <= Scalar(1)))
    fail(ErrorKind::InvalidArgument, "retention threshold must lie in (0,1]");
  const auto full = detail::decompose(centered);
  const Eigen::Index k = detail::components_for<Scalar>(full.values, threshold);
  return detail::truncate(full, centered, k);
}

/// Functional PCA keeping exactly `k` components.
template <typename Scalar>
EigenSystem<Scalar> fpca_components(const CurveSet<Scalar>& centered, Eigen::Index k) {
  return detail::truncate(detail::decompose(centered), centered, k);
}

/// Scores <v_i, u_j> by quadrature. Throws GridMismatch.
template <typename Scalar>
typename CurveSet<Scalar>::Matrix project(const CurveSet<Scalar>& curves, const EigenSystem<Scalar>& basis) {
  if (!same_grid(curves, basis.grid)) fail(ErrorKind::GridMismatch, "curves and basis are sampled on different grids");
  return curves.values() * (basis.eigenfunctions * basis.weights.asDiagonal()).transpose();
}

/// Least-squares regression of response scores on predictor scores.
template <typename Scalar>
struct ScoreModel {
  using Matrix = typename CurveSet<Scalar>::Matrix;
  Matrix x_scores;   // n x p
  Matrix y_scores;   // n x d
  Matrix beta_hat;   // p x d
  Matrix fitted;     // n x d
  Scalar condition_number = 0;  // of X^T X
};

inline constexpr double kMaxDesignCondition = 1e12;

template <typename Scalar>
ScoreModel<Scalar> fit_flm(const typename CurveSet<Scalar>::Matrix& x_scores,
                           const typename CurveSet<Scalar>::Matrix& y_scores) {
  using Matrix = typename CurveSet<Scalar>::Matrix;
  if (x_scores.rows() != y_scores.rows()) fail(ErrorKind::LengthMismatch, "score matrices differ in row count");
  if (x_scores.cols() < 1 || y_scores.cols() < 1) fail(ErrorKind::InvalidArgument, "empty score matrix");
  if (x_scores.rows() < x_scores.cols())
    fail(ErrorKind::SingularDesign, "fewer observations than predictor components");
  Eigen::JacobiSVD<Matrix> svd(x_scores);
  const auto& sv = svd.singularValues();
  const Scalar smin = sv(sv.size() - 1);
  const Scalar cond = smin > Scalar(0) ? (sv(0) / smin) * (sv(0) / smin) : std::numeric_limits<Scalar>::infinity();
  if (!(cond <= Scalar(kMaxDesignCondition)))
    fail(ErrorKind::SingularDesign, "design condition number " + std::to_string(double(cond)) + " exceeds 1e12");
  ScoreModel<Scalar> model;
  model.x_scores = x_scores;
  model.y_scores = y_scores;
  model.beta_hat = x_scores.colPivHouseholderQr().solve(y_scores);
  model.fitted = x_scores * model.beta_hat;
  model.condition_number = cond;
  return model;
}

struct FunctionalOptions {
  double threshold_x = 0.85;
  double threshold_y = 0.85;
  /// Choose the number of X components by k-fold cross-validated prediction
  /// of the Y scores instead of the X threshold.
  bool cv_select_p = false;
  int cv_folds = 5;
  /// Grid points whose variance falls below this fraction of the largest
  /// pointwise variance are dropped from the time-averaged measure.
  double variance_floor = 1e-10;
};

template <typename Scalar>
struct FunctionalResult {
  MeasureReport d1;
  MeasureReport d2;
  MeasureReport d3;
  EigenSystem<Scalar> x_basis;
  EigenSystem<Scalar> y_basis;
  ScoreModel<Scalar> model;
  typename CurveSet<Scalar>::Vector grid;
  typename CurveSet<Scalar>::Vector pointwise_r2;  // NaN where excluded
  std::vector<bool> excluded;
  std::vector<double> cv_errors;  // by candidate p, when cross-validated
};

namespace detail {

/// K-fold CV error of predicting Y scores from the first p X scores, for
/// p = 1..max_p. Fold of row i is i mod folds.
template <typename Scalar>
std::vector<double> cv_errors(const typename CurveSet<Scalar>::Matrix& x_scores,
                              const typename CurveSet<Scalar>::Matrix& y_scores, int folds) {
  using Matrix = typename CurveSet<Scalar>::Matrix;
  const Eigen::Index n = x_scores.rows();
  if (folds < 2 || folds > n) fail(ErrorKind::InvalidArgument, "cross-validation needs 2 <= folds <= n");
  const Eigen::Index smallest_train = n - (n + folds - 1) / folds;
  const Eigen::Index max_p = std::min<Eigen::Index>(x_scores.cols(), smallest_train - 1);
  std::vector<double> errors;
  for (Eigen::Index p = 1; p <= max_p; ++p) {
    double sse = 0.0;
    for (int f = 0; f < folds; ++f) {
      std::vector<Eigen::Index> train, test;
      for (Eigen::Index i = 0; i < n; ++i) (i % folds == f ? test : train).push_back(i);
      Matrix xt(train.size(), p), yt(train.size(), y_scores.cols());
      for (std::size_t r = 0; r < train.size(); ++r) {
        xt.row(r) = x_scores.row(train[r]).head(p);
        yt.row(r) = y_scores.row(train[r]);
      }
      const Matrix beta = xt.colPivHouseholderQr().solve(yt);
      for (auto i : test) sse += double((y_scores.row(i) - x_scores.row(i).head(p) * beta).squaredNorm());
    }
    errors.push_back(sse / double(n));
  }
  return errors;
}

}  // namespace detail

/// Functional dependence of Y on X through a functional linear model fitted
/// on principal component scores:
///   D1  share of the integrated L2 variability of Y explained,
///   D2  pointwise explained variability averaged over time,
///   D3  explained score variance averaged over the retained Y components
///       (each residual variance divided by its eigenvalue).
template <typename Scalar>
FunctionalResult<Scalar> functional_measures(const CurveSet<Scalar>& x, const CurveSet<Scalar>& y,
                                             const FunctionalOptions& options = {}) {
  using Matrix = typename CurveSet<Scalar>::Matrix;
  using Vector = typename CurveSet<Scalar>::Vector;
  if (x.n() != y.n()) fail(ErrorKind::LengthMismatch, "X and Y hold different numbers of curves");
  const auto xc = center(x).curves;
  const auto yc = center(y).curves;

  FunctionalResult<Scalar> res;
  res.y_basis = fpca(yc, Scalar(options.threshold_y));
  const auto x_full = detail::decompose(xc);
  Eigen::Index p = detail::components_for<Scalar>(x_full.values, Scalar(options.threshold_x));
  const Matrix y_scores = project(yc, res.y_basis);
  if (options.cv_select_p) {
    EigenSystem<Scalar> probe;
    probe.spectrum = x_full.values;
    const auto all_x = detail::truncate(x_full, xc, probe.usable_components());
    res.cv_errors = detail::cv_errors<Scalar>(project(xc, all_x), y_scores, options.cv_folds);
    p = 1;
    for (std::size_t c = 1; c < res.cv_errors.size(); ++c)
      if (res.cv_errors[c] < res.cv_errors[p - 1]) p = Eigen::Index(c) + 1;
  }
  res.x_basis = detail::truncate(x_full, xc, p);
  res.model = fit_flm<Scalar>(project(xc, res.x_basis), y_scores);

  const Eigen::Index n = y.n(), m = y.m(), d = res.y_basis.k;
  const Vector& w = res.y_basis.weights;
  const Matrix fitted_curves = res.model.fitted * res.y_basis.eigenfunctions;
  const Matrix resid = yc.values() - fitted_curves;

  // D1
  const Scalar resid_l2 = (resid.array().square().matrix() * w).sum();
  const Scalar total_l2 = (yc.values().array().square().matrix() * w).sum();
  if (!(total_l2 > Scalar(0))) fail(ErrorKind::DegenerateTarget, "Y curves have no variability");

  // D2
  const Vector s2 = yc.values().array().square().colwise().mean().transpose();
  const Vector resid_var = resid.array().square().colwise().mean().transpose();
  const Scalar s2_floor = Scalar(options.variance_floor) * s2.maxCoeff();
  res.grid = y.grid();
  res.pointwise_r2.resize(m);
  res.excluded.assign(m, false);
  Scalar kept_measure = 0, weighted_ratio = 0;
  Eigen::Index excluded = 0;
  for (Eigen::Index a = 0; a < m; ++a) {
    if (s2(a) < s2_floor || s2(a) <= Scalar(0)) {
      res.excluded[a] = true;
      res.pointwise_r2(a) = std::numeric_limits<Scalar>::quiet_NaN();
      ++excluded;
      continue;
    }
    const Scalar ratio = resid_var(a) / s2(a);
    res.pointwise_r2(a) = Scalar(1) - ratio;
    kept_measure += w(a);
    weighted_ratio += w(a) * ratio;
  }
  if (!(kept_measure > Scalar(0))) fail(ErrorKind::DegenerateTarget, "no grid point carries Y variability");

  // D3
  Scalar d3_loss = 0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const Scalar mse = (res.model.y_scores.col(j) - res.model.fitted.col(j)).squaredNorm() / Scalar(n);
    d3_loss += mse / res.y_basis.eigenvalues(j);
  }
  d3_loss /= Scalar(d);

  std::map<std::string, double> common = {
      {"n", double(n)},
      {"grid_points", double(m)},
      {"d_y_components", double(d)},
      {"p_x_components", double(p)},
      {"condition_number", double(res.model.condition_number)},
      {"x_captured_fraction", double(res.x_basis.captured_fraction())},
      {"y_captured_fraction", double(res.y_basis.captured_fraction())},
      {"excluded_grid_points", double(excluded)},
      {"threshold_x", options.threshold_x},
      {"threshold_y", options.threshold_y},
  };

  auto make = [&](const char* name, Scalar raw, std::string interpretation) {
    MeasureReport r;
    r.measure = name;
    r.dep = DepValue::from_raw(double(raw));
    r.interpretation = std::move(interpretation);
    r.diagnostics = common;
    if (r.dep.clamped) r.warnings.push_back("raw estimate outside [0,1]; value clamped");
    r.provenance = {{"x_curves", x.name()}, {"y_curves", y.name()}};
    return r;
  };
  const Scalar d1 = Scalar(1) - resid_l2 / total_l2;
  const Scalar d2 = Scalar(1) - weighted_ratio / kept_measure;
  const Scalar d3 = Scalar(1) - d3_loss;
  res.d1 = make("functional_d1", d1,
                "observing X explains " + percent(std::clamp(double(d1), 0.0, 1.0)) +
                    "% of the integrated L2 variability of the Y curves");
  res.d1.diagnostics["residual_l2"] = double(resid_l2);
  res.d1.diagnostics["total_l2"] = double(total_l2);
  res.d2 = make("functional_d2", d2,
                "observing X explains " + percent(std::clamp(double(d2), 0.0, 1.0)) +
                    "% of the pointwise variability of Y, averaged over time");
  res.d2.diagnostics["kept_measure"] = double(kept_measure);
  if (excluded > 0)
    res.d2.warnings.push_back(std::to_string(excluded) + " grid points with negligible Y variance were excluded");
  res.d3 = make("functional_d3", d3,
                "observing X explains " + percent(std::clamp(double(d3), 0.0, 1.0)) +
                    "% of the variability of the Y principal component scores, averaged over the " +
                    std::to_string(d) + " retained components");
  res.d3.diagnostics["eigenvalue_power"] = 1.0;
  return res;
}

}  // namespace infodep
