#include "infodep/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "infodep/error.hpp"
#include "infodep/random.hpp"

namespace infodep {

double Penalty::evaluate(double residual) const {
  switch (kind) {
    case PenaltyKind::L2: return residual * residual;
    case PenaltyKind::L1: return std::abs(residual);
    case PenaltyKind::ZeroOne: return residual == 0.0 ? 0.0 : 1.0;
  }
  return 0.0;
}

std::string Penalty::name() const {
  switch (kind) {
    case PenaltyKind::L2: return "l2";
    case PenaltyKind::L1: return "l1";
    case PenaltyKind::ZeroOne: return "zero_one";
  }
  return "?";
}

Penalty Penalty::parse(const std::string& text) {
  if (text == "l2" || text == "L2") return {PenaltyKind::L2};
  if (text == "l1" || text == "L1") return {PenaltyKind::L1};
  if (text == "zero-one" || text == "zero_one" || text == "01") return {PenaltyKind::ZeroOne};
  fail(ErrorKind::InvalidArgument, "unknown penalty '" + text + "' (expected l2, l1 or zero-one)");
}

double Predictor::predict() const {
  if (values.empty()) fail(ErrorKind::EmptyInput, "predictor has no fitted values");
  return values.front();
}

double Predictor::predict(const std::string& label) const {
  if (kind == Kind::Constant) return predict();
  for (std::size_t g = 0; g < group_labels.size(); ++g)
    if (group_labels[g] == label) return values[g];
  fail(ErrorKind::EmptyGroup, "no fitted value for category '" + label + "'");
}

double Predictor::predict(double x) const {
  if (kind == Kind::Constant) return predict();
  if (kind != Kind::Binned) fail(ErrorKind::InvalidArgument, "numeric lookup on a categorical predictor");
  const auto it = std::lower_bound(bin_upper.begin(), bin_upper.end(), x);
  const std::size_t b = it == bin_upper.end() ? bin_upper.size() - 1 : std::size_t(it - bin_upper.begin());
  return values[b];
}

double best_constant(std::span<const double> y, Penalty g) {
  if (y.empty()) fail(ErrorKind::EmptyInput, "cannot fit a constant to an empty sample");
  switch (g.kind) {
    case PenaltyKind::L2: {
      double s = 0.0;
      for (double v : y) s += v;
      return s / double(y.size());
    }
    case PenaltyKind::L1: {
      std::vector<double> sorted(y.begin(), y.end());
      const auto mid = sorted.begin() + (sorted.size() - 1) / 2;
      std::nth_element(sorted.begin(), mid, sorted.end());
      return *mid;
    }
    case PenaltyKind::ZeroOne: {
      std::map<double, std::size_t> counts;
      for (double v : y) ++counts[v];
      double mode = counts.begin()->first;
      std::size_t best = 0;
      for (const auto& [value, count] : counts)
        if (count > best) {
          best = count;
          mode = value;
        }
      return mode;
    }
  }
  return 0.0;
}

Predictor fit_constant(std::span<const double> y, Penalty g) {
  Predictor p;
  p.kind = Predictor::Kind::Constant;
  p.values = {best_constant(y, g)};
  p.group_sizes = {y.size()};
  return p;
}

std::size_t default_bin_count(std::size_t n) {
  std::size_t b = 1;
  while (b * b * b < n) ++b;
  return b;
}

Binning equal_frequency_bins(std::span<const double> x, std::size_t bins) {
  if (x.empty()) fail(ErrorKind::EmptyInput, "cannot bin an empty sample");
  if (bins == 0) fail(ErrorKind::InvalidArgument, "bin count must be positive");
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  Binning out;
  out.codes.resize(n);
  std::size_t current = 0;
  bool open = false;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    const bool continues_tie = k > 0 && x[i] == x[order[k - 1]];
    const std::size_t target = (k * bins) / n;
    if (!open) {
      open = true;
      out.upper.push_back(x[i]);
    } else if (!continues_tie && target > current) {
      out.upper.push_back(x[i]);
    }
    if (!continues_tie) current = std::max(current, target);
    out.codes[i] = out.upper.size() - 1;
    out.upper.back() = x[i];
  }
  return out;
}

namespace {

Predictor fit_by_codes(std::span<const double> y, const std::vector<std::size_t>& codes, std::size_t groups, Penalty g) {
  std::vector<std::vector<double>> members(groups);
  for (std::size_t i = 0; i < y.size(); ++i) members[codes[i]].push_back(y[i]);
  Predictor p;
  for (std::size_t k = 0; k < groups; ++k) {
    if (members[k].empty()) fail(ErrorKind::EmptyGroup, "group " + std::to_string(k) + " has no observations");
    p.values.push_back(best_constant(members[k], g));
    p.group_sizes.push_back(members[k].size());
  }
  return p;
}

}  // namespace

Predictor fit_conditional(std::span<const double> y, const Grouping& groups, Penalty g) {
  if (y.size() != groups.codes.size()) fail(ErrorKind::LengthMismatch, "y and x differ in length");
  Predictor p = fit_by_codes(y, groups.codes, groups.groups(), g);
  p.kind = Predictor::Kind::PerGroup;
  p.group_labels = groups.labels;
  return p;
}

Predictor fit_conditional(std::span<const double> y, std::span<const double> x, Penalty g,
                          std::optional<std::size_t> bins) {
  if (y.size() != x.size()) fail(ErrorKind::LengthMismatch, "y and x differ in length");
  const auto binning = equal_frequency_bins(x, bins.value_or(default_bin_count(x.size())));
  Predictor p = fit_by_codes(y, binning.codes, binning.bins(), g);
  p.kind = Predictor::Kind::Binned;
  p.bin_upper = binning.upper;
  return p;
}

namespace {

std::string interpretation_for(Penalty g, double value) {
  switch (g.kind) {
    case PenaltyKind::L2:
      return "knowing X reduces the mean squared prediction error of Y by " + percent(value) +
             "% (share of the variance of Y explained)";
    case PenaltyKind::L1:
      return "knowing X reduces the mean absolute prediction error of Y by " + percent(value) + "%";
    case PenaltyKind::ZeroOne:
      return "knowing X decreases the chance of misclassifying Y by " + percent(value) +
             "% relative to the baseline predictor";
  }
  return {};
}

template <typename T>
std::vector<T> gather(const std::vector<T>& v, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

}  // namespace

MeasureReport prediction_measure(std::span<const double> y, const Column& x, const PredictionOptions& options) {
  const std::size_t n = y.size();
  if (n == 0) fail(ErrorKind::EmptyInput, "no observations");
  if (x.size() != n) fail(ErrorKind::LengthMismatch, "y and x differ in length");
  if (!(options.holdout_fraction >= 0.0 && options.holdout_fraction < 1.0))
    fail(ErrorKind::InvalidArgument, "holdout fraction must lie in [0,1)");
  const Penalty g = options.penalty;
  const bool binned = x.kind() == ColumnKind::Numeric && !options.categorical_x;

  std::vector<std::size_t> fit_idx(n), eval_idx;
  std::iota(fit_idx.begin(), fit_idx.end(), std::size_t(0));
  const std::size_t n_hold = std::size_t(std::llround(options.holdout_fraction * double(n)));
  if (n_hold > 0) {
    if (n_hold >= n) fail(ErrorKind::InvalidArgument, "holdout leaves no fit sample");
    Rng rng(options.seed);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(fit_idx[i], fit_idx[rng.below(i + 1)]);
    eval_idx.assign(fit_idx.begin() + std::ptrdiff_t(n - n_hold), fit_idx.end());
    fit_idx.resize(n - n_hold);
    std::sort(fit_idx.begin(), fit_idx.end());
    std::sort(eval_idx.begin(), eval_idx.end());
  } else {
    eval_idx = fit_idx;
  }

  const std::vector<double> yv(y.begin(), y.end());
  const auto y_fit = gather(yv, fit_idx);
  const double constant = best_constant(y_fit, g);

  // Conditional predictions on the evaluation rows.
  std::vector<double> cond(eval_idx.size());
  std::size_t unseen = 0;
  Predictor predictor;
  if (binned) {
    const auto x_fit = gather(x.numeric(), fit_idx);
    predictor = fit_conditional(y_fit, x_fit, g, options.bins);
    if (n_hold == 0) {
      const auto binning = equal_frequency_bins(x_fit, options.bins.value_or(default_bin_count(x_fit.size())));
      for (std::size_t k = 0; k < eval_idx.size(); ++k) cond[k] = predictor.values[binning.codes[k]];
    } else {
      for (std::size_t k = 0; k < eval_idx.size(); ++k) cond[k] = predictor.predict(x.numeric()[eval_idx[k]]);
    }
  } else {
    const auto full = categorize(x);
    Grouping fit_groups;
    std::map<std::size_t, std::size_t> renumber;
    for (auto i : fit_idx) renumber.emplace(full.codes[i], 0);
    for (auto& [code, local] : renumber) {
      local = fit_groups.labels.size();
      fit_groups.labels.push_back(full.labels[code]);
    }
    for (auto i : fit_idx) fit_groups.codes.push_back(renumber.at(full.codes[i]));
    predictor = fit_conditional(y_fit, fit_groups, g);
    for (std::size_t k = 0; k < eval_idx.size(); ++k) {
      const auto it = renumber.find(full.codes[eval_idx[k]]);
      if (it == renumber.end()) {
        cond[k] = constant;
        ++unseen;
      } else {
        cond[k] = predictor.values[it->second];
      }
    }
  }

  double base_risk = 0.0, cond_risk = 0.0;
  for (std::size_t k = 0; k < eval_idx.size(); ++k) {
    const double yk = yv[eval_idx[k]];
    base_risk += g.evaluate(yk - constant);
    cond_risk += g.evaluate(yk - cond[k]);
  }
  base_risk /= double(eval_idx.size());
  cond_risk /= double(eval_idx.size());
  if (base_risk <= 0.0) fail(ErrorKind::DegenerateTarget, "baseline risk is 0: y is constant");

  MeasureReport r;
  r.measure = "prediction_" + g.name();
  r.dep = DepValue::from_raw(1.0 - cond_risk / base_risk);
  r.interpretation = interpretation_for(g, r.dep.value);
  r.diagnostics = {{"baseline_risk", base_risk},
                   {"conditional_risk", cond_risk},
                   {"baseline_constant", constant},
                   {"n_fit", double(fit_idx.size())},
                   {"n_eval", double(eval_idx.size())},
                   {binned ? "bins" : "groups", double(predictor.values.size())}};
  if (unseen > 0) {
    r.diagnostics["unseen_eval_rows"] = double(unseen);
    r.warnings.push_back("holdout rows in categories absent from the fit sample use the constant predictor");
  }
  if (r.dep.clamped) r.warnings.push_back("raw estimate outside [0,1]; value clamped");
  r.provenance = {{"penalty", g.name()},
                  {"x_handling", binned ? "equal_frequency_bins" : "categories"},
                  {"evaluation", n_hold > 0 ? "holdout" : "in_sample"},
                  {"n", std::to_string(n)}};
  return r;
}

MeasureReport prediction_measure(const SampleTable& table, const std::string& y_col, const std::string& x_col,
                                 const PredictionOptions& options) {
  const auto& ycol = table.column(y_col);
  if (ycol.kind() != ColumnKind::Numeric) fail(ErrorKind::InvalidArgument, "column '" + y_col + "' must be numeric");
  auto r = prediction_measure(ycol.numeric(), table.column(x_col), options);
  r.provenance["y_column"] = y_col;
  r.provenance["x_column"] = x_col;
  return r;
}

}  // namespace infodep
