#pragma once

#include <cmath>
#include <string>

#include "infodep/axioms.hpp"
#include "infodep/joint_pmf.hpp"
#include "infodep/report.hpp"
#include "infodep/sample_table.hpp"

namespace infodep {

namespace detail {

/// -p log p with 0 log 0 = 0, in nats.
template <typename Scalar>
Scalar neg_plogp(Scalar p) {
  using std::log;
  return p > Scalar(0) ? -p * log(p) : Scalar(0);
}

template <typename Scalar>
std::map<std::string, std::string> pmf_provenance(const JointPmf<Scalar>& joint) {
  return {{"source", "pmf"}, {"nx", std::to_string(joint.nx())}, {"ny", std::to_string(joint.ny())}};
}

}  // namespace detail

template <typename Scalar>
struct VarianceSplit {
  Scalar total;      // Var(Y)
  Scalar explained;  // Var(E[Y|X])
};

template <typename Scalar>
VarianceSplit<Scalar> variance_split(const JointPmf<Scalar>& joint) {
  if (!joint.y_codes()) fail(ErrorKind::MissingCodes, "the correlation ratio needs numeric Y codes");
  const auto& codes = *joint.y_codes();
  const auto px = joint.x_marginal();
  const auto py = joint.y_marginal();
  const Scalar mean = py.dot(codes);
  VarianceSplit<Scalar> out{(py.array() * (codes.array() - mean).square()).sum(), Scalar(0)};
  for (Eigen::Index i = 0; i < joint.nx(); ++i) {
    if (px(i) <= Scalar(0)) continue;
    const Scalar cond_mean = joint.probs().row(i).dot(codes) / px(i);
    out.explained += px(i) * (cond_mean - mean) * (cond_mean - mean);
  }
  return out;
}

template <typename Scalar>
struct EntropySplit {
  Scalar h_y;          // H(Y)
  Scalar h_y_given_x;  // H(Y|X)
};

template <typename Scalar>
EntropySplit<Scalar> entropy_split(const JointPmf<Scalar>& joint) {
  const auto px = joint.x_marginal();
  const auto py = joint.y_marginal();
  EntropySplit<Scalar> out{Scalar(0), Scalar(0)};
  for (Eigen::Index j = 0; j < joint.ny(); ++j) out.h_y += detail::neg_plogp(py(j));
  for (Eigen::Index i = 0; i < joint.nx(); ++i) {
    if (px(i) <= Scalar(0)) continue;
    for (Eigen::Index j = 0; j < joint.ny(); ++j) out.h_y_given_x += px(i) * detail::neg_plogp(joint.probs()(i, j) / px(i));
  }
  return out;
}

template <typename Scalar>
struct ErrorSplit {
  Scalar baseline;     // 1 - max_y P(Y=y)
  Scalar conditional;  // E_X[1 - max_y p(y|X)]
};

template <typename Scalar>
ErrorSplit<Scalar> argmax_error_split(const JointPmf<Scalar>& joint) {
  ErrorSplit<Scalar> out{Scalar(1) - joint.y_marginal().maxCoeff(), Scalar(1) - joint.probs().rowwise().maxCoeff().sum()};
  return out;
}

// Information links evaluated exactly on a pmf.

template <typename Scalar>
class L2PredictionLink : public InformationLink<Scalar> {
 public:
  std::string name() const override { return "l2_prediction"; }
  InfoValue info(const JointPmf<Scalar>& joint) const override {
    return InfoValue::from_estimate(double(variance_split(joint).explained));
  }
  InfoValue self_info(const JointPmf<Scalar>& joint) const override {
    return InfoValue::from_estimate(double(variance_split(joint).total));
  }
};

template <typename Scalar>
class EntropyLink : public InformationLink<Scalar> {
 public:
  std::string name() const override { return "entropy"; }
  InfoValue info(const JointPmf<Scalar>& joint) const override {
    const auto e = entropy_split(joint);
    return InfoValue::from_estimate(double(e.h_y - e.h_y_given_x));
  }
  InfoValue self_info(const JointPmf<Scalar>& joint) const override {
    return InfoValue::from_estimate(double(entropy_split(joint).h_y));
  }
};

template <typename Scalar>
class ZeroOneLink : public InformationLink<Scalar> {
 public:
  std::string name() const override { return "zero_one_prediction"; }
  InfoValue info(const JointPmf<Scalar>& joint) const override {
    const auto e = argmax_error_split(joint);
    return InfoValue::from_estimate(double(e.baseline - e.conditional));
  }
  InfoValue self_info(const JointPmf<Scalar>& joint) const override {
    return InfoValue::from_estimate(double(argmax_error_split(joint).baseline));
  }
};

// Population measures on a pmf.

template <typename Scalar>
MeasureReport correlation_ratio_pmf(const JointPmf<Scalar>& joint) {
  const auto v = variance_split(joint);
  if (v.total <= Scalar(0)) fail(ErrorKind::DegenerateTarget, "Var(Y) = 0");
  MeasureReport r;
  r.measure = "correlation_ratio";
  r.dep = DepValue::from_raw(double(v.explained / v.total));
  r.interpretation = "knowing X explains " + percent(r.dep.value) +
                     "% of the variance of Y (reduction in mean squared prediction error)";
  r.diagnostics = {{"var_y", double(v.total)}, {"var_cond_mean", double(v.explained)}};
  r.provenance = detail::pmf_provenance(joint);
  return r;
}

template <typename Scalar>
MeasureReport entropy_ratio_pmf(const JointPmf<Scalar>& joint) {
  const auto e = entropy_split(joint);
  if (e.h_y <= Scalar(0)) fail(ErrorKind::DegenerateTarget, "H(Y) = 0: Y is almost surely constant");
  MeasureReport r;
  r.measure = "entropy_ratio";
  r.dep = DepValue::from_raw(double((e.h_y - e.h_y_given_x) / e.h_y));
  r.interpretation = "knowing X reduces the entropy of Y by " + percent(r.dep.value) + "%";
  r.diagnostics = {{"entropy_y_nats", double(e.h_y)},
                   {"cond_entropy_y_given_x_nats", double(e.h_y_given_x)},
                   {"mutual_information_nats", double(e.h_y - e.h_y_given_x)}};
  r.provenance = detail::pmf_provenance(joint);
  return r;
}

template <typename Scalar>
MeasureReport zero_one_ratio_pmf(const JointPmf<Scalar>& joint) {
  const auto e = argmax_error_split(joint);
  if (e.baseline <= Scalar(0)) fail(ErrorKind::DegenerateTarget, "baseline 0-1 error is 0: one Y label has probability 1");
  MeasureReport r;
  r.measure = "zero_one_ratio";
  r.dep = DepValue::from_raw(double(Scalar(1) - e.conditional / e.baseline));
  r.interpretation = "knowing X decreases the chance of misclassifying Y by " + percent(r.dep.value) +
                     "% relative to the baseline predictor";
  r.diagnostics = {{"baseline_error", double(e.baseline)}, {"conditional_error", double(e.conditional)}};
  r.provenance = detail::pmf_provenance(joint);
  return r;
}

// Plug-in estimators on a sample.

/// Empirical joint pmf of (x_col, y_col). Numeric Y columns carry their
/// values as codes.
JointPmfd empirical_joint(const SampleTable& table, const std::string& y_col, const std::string& x_col);

/// Correlation ratio (Efron's R^2), deviance ratio and 0-1 ratio of a binary
/// Y on a categorical X, using within-category means as fitted values.
struct EmpiricalTriplet {
  MeasureReport correlation_ratio;
  MeasureReport deviance_ratio;
  MeasureReport zero_one_ratio;
};

EmpiricalTriplet empirical_triplet(const SampleTable& table, const std::string& y_col, const std::string& x_col);

/// Deviance ratio for binary outcomes against externally supplied fitted
/// probabilities. Throws InfiniteDeviance when a fitted value of exactly 0 or 1
/// contradicts the observed outcome.
MeasureReport deviance_ratio(const std::vector<double>& y, const std::vector<double>& fitted);

}  // namespace infodep
