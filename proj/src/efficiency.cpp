#include "infodep/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "infodep/error.hpp"

namespace infodep {

void McarGaussianModel::validate() const {
  if (!std::isfinite(mu)) fail(ErrorKind::InvalidArgument, "mu must be finite");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) fail(ErrorKind::InvalidArgument, "sigma2 must be positive");
  if (!(p_obs >= 0.0 && p_obs <= 1.0)) fail(ErrorKind::InvalidArgument, "p_obs must lie in [0,1]");
}

McarObservation draw_mcar(const McarGaussianModel& model, Rng& rng) {
  const double y = rng.normal(model.mu, std::sqrt(model.sigma2));
  const bool observed = rng.bernoulli(model.p_obs);
  return {observed, observed ? y : 0.0};
}

MeasureReport mcar_measure(const McarGaussianModel& model) {
  model.validate();
  MeasureReport r;
  r.measure = "mcar_efficiency";
  r.dep = DepValue::from_raw(model.p_obs);
  r.interpretation = "estimating the mean from the incomplete data retains " + percent(r.dep.value) +
                     "% of the Fisher information of the complete data (the expected proportion of observed values)";
  r.diagnostics = {{"info_y", 1.0 / model.sigma2},
                   {"info_x", model.p_obs / model.sigma2},
                   {"mu", model.mu},
                   {"sigma2", model.sigma2},
                   {"p_obs", model.p_obs}};
  if (model.p_obs > 0.0) r.diagnostics["sample_size_ratio"] = 1.0 / model.p_obs;
  r.provenance = {{"source", "closed_form"}};
  return r;
}

FisherPair mc_fisher_mcar(const McarGaussianModel& model, std::size_t n_rep, std::uint64_t seed) {
  model.validate();
  if (n_rep < 1000) fail(ErrorKind::InvalidArgument, "Monte Carlo Fisher information needs n_rep >= 1000");

  std::vector<double> scores(n_rep);
  for (std::size_t start = 0, chunk = 0; start < n_rep; start += kFisherChunk, ++chunk) {
    Rng rng(stream_seed(seed, chunk));
    const std::size_t end = std::min(n_rep, start + kFisherChunk);
    for (std::size_t i = start; i < end; ++i) {
      const auto obs = draw_mcar(model, rng);
      // d/dmu log f(x; mu) is (x - mu)/sigma2 when observed; a missing value
      // has a density free of mu.
      scores[i] = obs.observed ? (obs.value - model.mu) / model.sigma2 : 0.0;
    }
  }

  const double n = double(n_rep);
  double mean = 0.0;
  for (double s : scores) mean += s;
  mean /= n;
  double var = 0.0;
  for (double s : scores) var += (s - mean) * (s - mean);
  var /= n - 1.0;
  double spread = 0.0;
  for (double s : scores) {
    const double d = (s - mean) * (s - mean) - var;
    spread += d * d;
  }

  FisherPair out;
  out.info_x = var;
  out.info_y = 1.0 / model.sigma2;
  out.info_x_se = std::sqrt(spread / (n - 1.0) / n);
  out.n_rep = n_rep;
  return out;
}

MeasureReport efficiency_ratio(const FisherPair& pair) {
  if (!(pair.info_x >= 0.0) || !std::isfinite(pair.info_x))
    fail(ErrorKind::InvalidArgument, "info_x must be finite and nonnegative");
  if (!std::isfinite(pair.info_y) || pair.info_y < 0.0) fail(ErrorKind::InvalidArgument, "info_y must be finite");
  if (pair.info_y == 0.0) fail(ErrorKind::DegenerateTarget, "I_Y(theta) = 0");

  MeasureReport r;
  r.measure = "efficiency_ratio";
  r.dep = DepValue::from_raw(pair.info_x / pair.info_y);
  r.diagnostics = {{"info_x", pair.info_x}, {"info_y", pair.info_y}};
  if (pair.n_rep > 0) {
    r.diagnostics["info_x_se"] = pair.info_x_se;
    r.diagnostics["n_rep"] = double(pair.n_rep);
  }
  if (r.dep.value > 0.0) {
    const double ratio = 1.0 / r.dep.value;
    r.diagnostics["sample_size_ratio"] = ratio;
    r.interpretation = "inference with X is " + percent(r.dep.value) +
                       "% as efficient as with Y: about " + fixed(ratio, 3) +
                       " times as many X observations give the same precision or power as Y";
  } else {
    r.interpretation = "X carries no information about the parameter: no sample size of X matches Y";
  }
  if (r.dep.clamped) r.warnings.push_back("raw estimate outside [0,1]; value clamped");
  return r;
}

MeasureReport binary_r2(const JointPmfd& joint) {
  if (joint.nx() != 2 || joint.ny() != 2) fail(ErrorKind::InvalidArgument, "binary r^2 needs a 2x2 pmf");
  const double p_a = joint.x_marginal()(1);
  const double p_b = joint.y_marginal()(1);
  const double var_a = p_a * (1.0 - p_a);
  const double var_b = p_b * (1.0 - p_b);
  if (var_a <= 0.0 || var_b <= 0.0) fail(ErrorKind::DegenerateTarget, "a margin is degenerate");
  const double cov = joint.probs()(1, 1) - p_a * p_b;

  MeasureReport r;
  r.measure = "binary_r2";
  r.dep = DepValue::from_raw(cov * cov / (var_a * var_b));
  r.diagnostics = {{"covariance", cov}, {"var_x", var_a}, {"var_y", var_b}, {"freq_x", p_a}, {"freq_y", p_b}};
  if (r.dep.value > 0.0) {
    const double ratio = 1.0 / r.dep.value;
    r.diagnostics["sample_size_ratio"] = ratio;
    r.interpretation = "r^2 = " + fixed(r.dep.value) + ": testing the proxy instead of the causal variant needs about " +
                       fixed(ratio, 3) + " times the sample size for the same power";
  } else {
    r.interpretation = "r^2 = 0: the proxy carries no information about the causal variant";
  }
  r.provenance = {{"source", "pmf"}, {"nx", "2"}, {"ny", "2"}};
  return r;
}

}  // namespace infodep
