#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "infodep/error.hpp"

namespace infodep {

/// Finite joint probability mass function p(x, y). Rows index the X support,
/// columns the Y support. Optional numeric codes place Y on a scale, which
/// the correlation ratio needs.
template <typename Scalar>
class JointPmf {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  JointPmf(std::vector<std::string> x_labels, std::vector<std::string> y_labels, Matrix probs,
           std::optional<Vector> y_codes = std::nullopt)
      : x_labels_(std::move(x_labels)),
        y_labels_(std::move(y_labels)),
        probs_(std::move(probs)),
        y_codes_(std::move(y_codes)) {
    validate();
  }

  /// Labels default to "0", "1", ...; Y codes default to 0, 1, ...
  static JointPmf from_matrix(const Matrix& probs) {
    std::vector<std::string> xl, yl;
    for (Eigen::Index i = 0; i < probs.rows(); ++i) xl.push_back(std::to_string(i));
    for (Eigen::Index j = 0; j < probs.cols(); ++j) yl.push_back(std::to_string(j));
    Vector codes = Vector::LinSpaced(probs.cols(), Scalar(0), Scalar(probs.cols() - 1));
    return JointPmf(std::move(xl), std::move(yl), probs, codes);
  }

  /// Normalizes a nonnegative count table.
  static JointPmf from_counts(std::vector<std::string> x_labels, std::vector<std::string> y_labels,
                              const Matrix& counts, std::optional<Vector> y_codes = std::nullopt) {
    const Scalar total = counts.sum();
    if (!(total > Scalar(0))) fail(ErrorKind::EmptyInput, "count table has zero total");
    return JointPmf(std::move(x_labels), std::move(y_labels), counts / total, std::move(y_codes));
  }

  const std::vector<std::string>& x_labels() const { return x_labels_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }
  const Matrix& probs() const { return probs_; }
  const std::optional<Vector>& y_codes() const { return y_codes_; }
  Eigen::Index nx() const { return probs_.rows(); }
  Eigen::Index ny() const { return probs_.cols(); }

  Vector x_marginal() const { return probs_.rowwise().sum(); }
  Vector y_marginal() const { return probs_.colwise().sum().transpose(); }

  /// Joint of (f(X), Y) for a deterministic map given as target index per
  /// X row. Targets need not be surjective; unused targets are dropped.
  JointPmf coarsen_x(const std::vector<Eigen::Index>& target) const {
    if (static_cast<Eigen::Index>(target.size()) != nx())
      fail(ErrorKind::LengthMismatch, "coarsening map must have one entry per X label");
    Eigen::Index k = 0;
    for (auto t : target) {
      if (t < 0) fail(ErrorKind::InvalidArgument, "coarsening map has a negative target");
      k = std::max(k, t + 1);
    }
    Matrix merged = Matrix::Zero(k, ny());
    std::vector<bool> used(k, false);
    for (Eigen::Index i = 0; i < nx(); ++i) {
      merged.row(target[i]) += probs_.row(i);
      used[target[i]] = true;
    }
    std::vector<std::string> labels;
    Matrix kept(std::count(used.begin(), used.end(), true), ny());
    Eigen::Index r = 0;
    for (Eigen::Index t = 0; t < k; ++t) {
      if (!used[t]) continue;
      kept.row(r++) = merged.row(t);
      std::string label;
      for (Eigen::Index i = 0; i < nx(); ++i)
        if (target[i] == t) label += (label.empty() ? "" : "+") + x_labels_[i];
      labels.push_back(label);
    }
    return JointPmf(std::move(labels), y_labels_, kept, y_codes_);
  }

  /// p(x) p(y): the factorized joint with the same marginals.
  JointPmf independent_version() const {
    Matrix prod = x_marginal() * y_marginal().transpose();
    return JointPmf(x_labels_, y_labels_, prod, y_codes_);
  }

  /// Joint of (Y, Y): the diagonal pmf carrying the Y marginal.
  JointPmf self_joint() const {
    Matrix diag = y_marginal().asDiagonal();
    return JointPmf(y_labels_, y_labels_, diag, y_codes_);
  }

 private:
  void validate() const {
    if (nx() < 1 || ny() < 1) fail(ErrorKind::InvalidArgument, "joint pmf needs a nonempty support");
    if (static_cast<Eigen::Index>(x_labels_.size()) != nx() ||
        static_cast<Eigen::Index>(y_labels_.size()) != ny())
      fail(ErrorKind::LengthMismatch, "label counts do not match the probability matrix");
    if (!probs_.allFinite() || (probs_.array() < Scalar(0)).any())
      fail(ErrorKind::InvalidArgument, "probabilities must be finite and nonnegative");
    using std::abs;
    if (abs(probs_.sum() - Scalar(1)) > Scalar(1e-12))
      fail(ErrorKind::InvalidArgument, "probabilities must sum to 1 within 1e-12");
    if (y_codes_) {
      if (y_codes_->size() != ny()) fail(ErrorKind::LengthMismatch, "need one numeric code per Y label");
      if (!y_codes_->allFinite()) fail(ErrorKind::InvalidArgument, "Y codes must be finite");
    }
  }

  std::vector<std::string> x_labels_;
  std::vector<std::string> y_labels_;
  Matrix probs_;
  std::optional<Vector> y_codes_;
};

using JointPmfd = JointPmf<double>;

}  // namespace infodep
