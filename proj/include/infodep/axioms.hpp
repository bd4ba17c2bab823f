#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "infodep/core.hpp"
#include "infodep/joint_pmf.hpp"

namespace infodep {

/// An information link I(X;Y) evaluated exactly on a finite joint pmf.
/// `self_info` is I(Y;Y) and only depends on the Y marginal.
template <typename Scalar>
class InformationLink {
 public:
  virtual ~InformationLink() = default;
  virtual std::string name() const = 0;
  virtual InfoValue info(const JointPmf<Scalar>& joint) const = 0;
  virtual InfoValue self_info(const JointPmf<Scalar>& joint) const = 0;
};

/// A deterministic map on the X support, as target index per X label.
struct CoarseningMap {
  std::string name;
  std::vector<Eigen::Index> target;

  static CoarseningMap identity(Eigen::Index n) {
    CoarseningMap m{"identity", std::vector<Eigen::Index>(n)};
    std::iota(m.target.begin(), m.target.end(), Eigen::Index(0));
    return m;
  }
  static CoarseningMap collapse(Eigen::Index n) { return {"collapse", std::vector<Eigen::Index>(n, 0)}; }
  static CoarseningMap reverse(Eigen::Index n) {
    CoarseningMap m{"reverse", std::vector<Eigen::Index>(n)};
    for (Eigen::Index i = 0; i < n; ++i) m.target[i] = n - 1 - i;
    return m;
  }

  bool is_bijection() const {
    std::vector<Eigen::Index> sorted = target;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != static_cast<Eigen::Index>(i)) return false;
    return true;
  }
};

struct TransformCheck {
  std::string name;
  double info = 0.0;
  bool monotone = false;  // I(f(X);Y) <= I(X;Y)
  bool bijective = false;
  bool invariant = true;  // only meaningful for bijections
};

struct AxiomReport {
  std::string link;
  double info_xy = 0.0;
  double info_yy = 0.0;
  double info_independent = 0.0;
  bool nonnegative = false;
  bool bounded_by_self = false;
  bool self_dependence_one = false;  // I evaluated on (Y,Y) equals I(Y;Y)
  bool independence_zero = false;
  std::vector<TransformCheck> transforms;

  bool passed() const {
    return nonnegative && bounded_by_self && self_dependence_one && independence_zero &&
           std::all_of(transforms.begin(), transforms.end(),
                       [](const TransformCheck& t) { return t.monotone && t.invariant; });
  }
};

/// Checks the information-link properties of `link` on one joint pmf:
/// nonnegativity, I(X;Y) <= I(Y;Y), I(Y;Y) attained by Y itself, zero under
/// the factorized joint, and I(f(X);Y) <= I(X;Y) for each supplied map
/// (with equality for bijections).
template <typename Scalar>
AxiomReport axiom_check(const InformationLink<Scalar>& link, const JointPmf<Scalar>& joint,
                        const std::vector<CoarseningMap>& transforms, double tol = 1e-12) {
  AxiomReport r;
  r.link = link.name();
  r.info_xy = link.info(joint).value();
  r.info_yy = link.self_info(joint).value();
  r.nonnegative = r.info_xy >= 0.0 && r.info_yy >= 0.0;
  r.bounded_by_self = r.info_xy <= r.info_yy + tol;
  r.self_dependence_one = std::abs(link.info(joint.self_joint()).value() - r.info_yy) <= tol;
  r.info_independent = link.info(joint.independent_version()).value();
  r.independence_zero = r.info_independent <= tol;
  for (const auto& f : transforms) {
    TransformCheck t;
    t.name = f.name;
    t.info = link.info(joint.coarsen_x(f.target)).value();
    t.monotone = t.info <= r.info_xy + tol;
    t.bijective = f.is_bijection();
    t.invariant = !t.bijective || std::abs(t.info - r.info_xy) <= tol;
    r.transforms.push_back(t);
  }
  return r;
}

}  // namespace infodep
