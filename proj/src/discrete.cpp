#include "infodep/discrete.hpp"

#include <cmath>
#include <limits>

namespace infodep {

namespace {

std::map<std::string, std::string> sample_provenance(const std::string& y_col, const std::string& x_col,
                                                     std::size_t n) {
  return {{"source", "sample"}, {"y_column", y_col}, {"x_column", x_col}, {"n", std::to_string(n)}};
}

const std::vector<double>& binary_outcome(const SampleTable& table, const std::string& y_col) {
  const auto& col = table.column(y_col);
  if (col.kind() != ColumnKind::Numeric) fail(ErrorKind::InvalidArgument, "column '" + y_col + "' must be 0/1");
  for (double v : col.numeric())
    if (v != 0.0 && v != 1.0) fail(ErrorKind::InvalidArgument, "column '" + y_col + "' must contain only 0 and 1");
  return col.numeric();
}

// Binomial deviance contribution of one observation against fitted p, with
// 0 log 0 = 0. Returns +inf for an impossible outcome.
double unit_deviance(double y, double p) {
  if (y == 1.0) return p > 0.0 ? -std::log(p) : std::numeric_limits<double>::infinity();
  return p < 1.0 ? -std::log1p(-p) : std::numeric_limits<double>::infinity();
}

}  // namespace

JointPmfd empirical_joint(const SampleTable& table, const std::string& y_col, const std::string& x_col) {
  const auto gx = categorize(table.column(x_col));
  const auto& ycol = table.column(y_col);
  const auto gy = categorize(ycol);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(gx.groups(), gy.groups());
  for (std::size_t i = 0; i < table.n(); ++i) counts(gx.codes[i], gy.codes[i]) += 1.0;
  std::optional<Eigen::VectorXd> codes;
  if (ycol.kind() == ColumnKind::Numeric) {
    codes = Eigen::VectorXd(gy.groups());
    const auto& v = ycol.numeric();
    for (std::size_t i = 0; i < v.size(); ++i) (*codes)(gy.codes[i]) = v[i];
  }
  return JointPmfd::from_counts(gx.labels, gy.labels, counts, codes);
}

MeasureReport deviance_ratio(const std::vector<double>& y, const std::vector<double>& fitted) {
  if (y.size() != fitted.size()) fail(ErrorKind::LengthMismatch, "outcomes and fitted values differ in length");
  if (y.empty()) fail(ErrorKind::EmptyInput, "no observations");
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= double(y.size());
  if (mean <= 0.0 || mean >= 1.0) fail(ErrorKind::DegenerateTarget, "binary outcome is constant");

  double model = 0.0, null = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (fitted[i] < 0.0 || fitted[i] > 1.0) fail(ErrorKind::InvalidArgument, "fitted probabilities must lie in [0,1]");
    const double d = unit_deviance(y[i], fitted[i]);
    if (!std::isfinite(d))
      fail(ErrorKind::InfiniteDeviance, "fitted value " + format_number(fitted[i]) + " contradicts outcome at row " +
                                            std::to_string(i + 1));
    model += d;
    null += unit_deviance(y[i], mean);
  }
  MeasureReport r;
  r.measure = "deviance_ratio";
  r.dep = DepValue::from_raw(1.0 - model / null);
  r.interpretation = "knowing X reduces the binomial deviance (log-likelihood loss) of Y by " + percent(r.dep.value) + "%";
  // Saturated deviance is 0 for 0/1 outcomes, so these are half-deviances
  // (sums of -log likelihood).
  r.diagnostics = {{"model_neg_loglik", model}, {"null_neg_loglik", null}, {"mean_y", mean}};
  return r;
}

EmpiricalTriplet empirical_triplet(const SampleTable& table, const std::string& y_col, const std::string& x_col) {
  const auto& y = binary_outcome(table, y_col);
  const auto groups = categorize(table.column(x_col));
  const std::size_t n = table.n();

  std::vector<double> sums(groups.groups(), 0.0), counts(groups.groups(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sums[groups.codes[i]] += y[i];
    counts[groups.codes[i]] += 1.0;
  }
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= double(n);
  if (mean <= 0.0 || mean >= 1.0) fail(ErrorKind::DegenerateTarget, "binary outcome is constant (mean " + format_number(mean) + ")");

  std::vector<double> fitted(n);
  for (std::size_t i = 0; i < n; ++i) fitted[i] = sums[groups.codes[i]] / counts[groups.codes[i]];

  const auto provenance = sample_provenance(y_col, x_col, n);
  EmpiricalTriplet out;

  // Correlation ratio.
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ss_res += (y[i] - fitted[i]) * (y[i] - fitted[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  auto& d1 = out.correlation_ratio;
  d1.measure = "correlation_ratio";
  d1.dep = DepValue::from_raw(1.0 - ss_res / ss_tot);
  d1.interpretation = "knowing X explains " + percent(d1.dep.value) +
                      "% of the variance of Y (reduction in mean squared prediction error)";
  d1.diagnostics = {{"ss_residual", ss_res}, {"ss_total", ss_tot}, {"mean_y", mean},
                    {"groups", double(groups.groups())}};
  d1.provenance = provenance;

  // Deviance ratio.
  out.deviance_ratio = deviance_ratio(y, fitted);
  out.deviance_ratio.diagnostics["groups"] = double(groups.groups());
  out.deviance_ratio.provenance = provenance;

  // 0-1 ratio; a fitted value of exactly 0.5 predicts 1.
  const double baseline_pred = mean >= 0.5 ? 1.0 : 0.0;
  double err_cond = 0.0, err_base = 0.0;
  bool tie = false;
  for (std::size_t i = 0; i < n; ++i) {
    tie = tie || fitted[i] == 0.5;
    const double pred = fitted[i] >= 0.5 ? 1.0 : 0.0;
    err_cond += (y[i] != pred);
    err_base += (y[i] != baseline_pred);
  }
  if (err_base == 0.0) fail(ErrorKind::ZeroBaseline, "baseline predictor makes no errors");
  auto& d3 = out.zero_one_ratio;
  d3.measure = "zero_one_ratio";
  d3.dep = DepValue::from_raw(1.0 - err_cond / err_base);
  d3.interpretation = "knowing X decreases the chance of misclassifying Y by " + percent(d3.dep.value) +
                      "% relative to the baseline predictor";
  d3.diagnostics = {{"errors_conditional", err_cond}, {"errors_baseline", err_base},
                    {"error_rate_conditional", err_cond / double(n)}, {"error_rate_baseline", err_base / double(n)}};
  if (tie) d3.warnings.push_back("TieWarning: a within-category mean equals 0.5 exactly; predicted 1");
  if (mean == 0.5) d3.warnings.push_back("TieWarning: the overall mean equals 0.5 exactly; baseline predicts 1");
  d3.provenance = provenance;
  return out;
}

}  // namespace infodep
