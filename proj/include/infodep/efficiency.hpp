#pragma once

#include <cstddef>
#include <cstdint>

#include "infodep/joint_pmf.hpp"
#include "infodep/random.hpp"
#include "infodep/report.hpp"

namespace infodep {

/// Y ~ N(mu, sigma2) observed with probability p_obs, independently of Y.
/// The parameter of interest is mu.
struct McarGaussianModel {
  double mu = 0.0;
  double sigma2 = 1.0;
  double p_obs = 1.0;

  void validate() const;
};

struct McarObservation {
  bool observed = false;
  double value = 0.0;  // meaningful only when observed
};

/// One draw of the observed proxy. Always consumes the Y draw before the
/// observation flag so streams line up across callers.
McarObservation draw_mcar(const McarGaussianModel& model, Rng& rng);

/// Fisher information about theta carried by the proxy X and by Y.
struct FisherPair {
  double info_x = 0.0;
  double info_y = 1.0;
  double info_x_se = 0.0;  // Monte Carlo standard error of info_x (0 when exact)
  std::size_t n_rep = 0;
};

/// Closed form: I_Y(mu) = 1/sigma2, I_X(mu) = p/sigma2, so D = p.
MeasureReport mcar_measure(const McarGaussianModel& model);

/// Monte Carlo I_X(mu): sample variance of the per-observation score at the
/// true mu over n_rep simulated proxies. Draws come in fixed-size chunks,
/// chunk c seeded from stream_seed(seed, c), summed in chunk order.
FisherPair mc_fisher_mcar(const McarGaussianModel& model, std::size_t n_rep, std::uint64_t seed);

inline constexpr std::size_t kFisherChunk = 8192;

/// D = I_X / I_Y, rendered both as relative efficiency and as the ratio of
/// sample sizes giving equal precision.
MeasureReport efficiency_ratio(const FisherPair& pair);

/// Squared correlation of two 0/1 variables from their 2x2 pmf (row/column
/// index 1 is the coded 1).
MeasureReport binary_r2(const JointPmfd& joint);

}  // namespace infodep
