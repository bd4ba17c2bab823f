#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infodep/report.hpp"
#include "infodep/sample_table.hpp"

namespace infodep {

enum class PenaltyKind { L2, L1, ZeroOne };

/// Nonnegative penalty g with g(0) = 0.
struct Penalty {
  PenaltyKind kind = PenaltyKind::L2;

  double evaluate(double residual) const;
  std::string name() const;
  /// Accepts "l2", "l1", "zero-one" (or "zero_one", "01").
  static Penalty parse(const std::string& text);
};

/// Fitted predictor of Y: a single constant, one value per category, or one
/// value per equal-frequency bin of a numeric X.
struct Predictor {
  enum class Kind { Constant, PerGroup, Binned };

  Kind kind = Kind::Constant;
  std::vector<double> values;
  std::vector<std::string> group_labels;  // PerGroup
  std::vector<double> bin_upper;          // Binned: largest fitted x in each bin
  std::vector<std::size_t> group_sizes;

  double predict() const;  // Constant
  /// PerGroup: throws EmptyGroup for a label not seen in the fit.
  double predict(const std::string& label) const;
  /// Binned: the first bin whose upper edge is >= x, else the last bin.
  double predict(double x) const;
};

/// Risk-minimizing constant: mean (L2), lower median (L1), smallest mode
/// (ZeroOne). Throws EmptyInput.
double best_constant(std::span<const double> y, Penalty g);
Predictor fit_constant(std::span<const double> y, Penalty g);

/// Smallest b with b^3 >= n, i.e. ceil(n^(1/3)).
std::size_t default_bin_count(std::size_t n);

/// Equal-frequency bins by rank. Tied x values always share a bin, so fewer
/// than `bins` bins can result.
struct Binning {
  std::vector<std::size_t> codes;
  std::vector<double> upper;
  std::size_t bins() const { return upper.size(); }
};
Binning equal_frequency_bins(std::span<const double> x, std::size_t bins);

Predictor fit_conditional(std::span<const double> y, const Grouping& groups, Penalty g);
Predictor fit_conditional(std::span<const double> y, std::span<const double> x, Penalty g,
                          std::optional<std::size_t> bins = std::nullopt);

struct PredictionOptions {
  Penalty penalty;
  std::optional<std::size_t> bins;  // numeric X only; default ceil(n^(1/3))
  bool categorical_x = false;       // group a numeric X by value instead of binning
  double holdout_fraction = 0.0;    // 0 = in-sample
  std::uint64_t seed = 0;           // holdout split
};

/// 1 - E[g(Y - Yhat(X))] / E[g(Y - Yhat0)] with empirical risks.
MeasureReport prediction_measure(std::span<const double> y, const Column& x, const PredictionOptions& options);
MeasureReport prediction_measure(const SampleTable& table, const std::string& y_col, const std::string& x_col,
                                 const PredictionOptions& options);

}  // namespace infodep
