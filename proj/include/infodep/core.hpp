#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "infodep/error.hpp"

namespace infodep {

/// Amount of information one variable carries about another, in the units of
/// the link that produced it (variance, nats, Fisher information, ...).
class InfoValue {
 public:
  explicit InfoValue(double value) : value_(value) {
    if (!std::isfinite(value) || value < 0.0)
      fail(ErrorKind::InvalidArgument, "information must be finite and nonnegative, got " + std::to_string(value));
  }

  /// Accepts a computed quantity whose exact value is nonnegative but which
  /// may carry round-off below zero. Values within `tol` of zero snap to 0.
  static InfoValue from_estimate(double value, double tol = 1e-12) {
    if (value < 0.0 && value >= -tol) value = 0.0;
    return InfoValue(value);
  }

  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// A dependence value in [0,1]. `raw` keeps the unclamped estimate so that
/// sample plug-ins falling slightly outside the range remain visible.
struct DepValue {
  double value = 0.0;
  double raw = 0.0;
  bool clamped = false;

  static DepValue from_raw(double raw) {
    if (!std::isfinite(raw)) fail(ErrorKind::InvalidArgument, "dependence estimate is not finite");
    DepValue d;
    d.raw = raw;
    d.value = std::clamp(raw, 0.0, 1.0);
    d.clamped = raw < 0.0 || raw > 1.0;
    return d;
  }
};

/// D = I(X;Y) / I(Y;Y).
inline DepValue normalize(InfoValue i_xy, InfoValue i_yy) {
  if (i_yy.value() == 0.0)
    fail(ErrorKind::DegenerateTarget, "I(Y;Y) = 0: Y carries no information about itself under this link");
  return DepValue::from_raw(i_xy.value() / i_yy.value());
}

/// (I(X;Y) + I(Y;X)) / (I(X;X) + I(Y;Y)).
inline DepValue symmetrize_arithmetic(InfoValue i_xy, InfoValue i_yx, InfoValue i_xx, InfoValue i_yy) {
  const double denom = i_xx.value() + i_yy.value();
  if (denom == 0.0) fail(ErrorKind::DegenerateTarget, "I(X;X) + I(Y;Y) = 0");
  return DepValue::from_raw((i_xy.value() + i_yx.value()) / denom);
}

/// sqrt(I(X;Y) I(Y;X) / (I(X;X) I(Y;Y))).
inline DepValue symmetrize_geometric(InfoValue i_xy, InfoValue i_yx, InfoValue i_xx, InfoValue i_yy) {
  if (i_xx.value() == 0.0 || i_yy.value() == 0.0)
    fail(ErrorKind::DegenerateTarget, "geometric symmetrization needs positive self-information on both sides");
  return DepValue::from_raw(std::sqrt((i_xy.value() * i_yx.value()) / (i_xx.value() * i_yy.value())));
}

}  // namespace infodep
