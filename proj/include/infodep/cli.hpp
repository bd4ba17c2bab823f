#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace infodep {

/// Fully resolved options of one tool invocation. Fields not used by the
/// chosen subcommand are ignored and left out of the echoed config.
struct RunConfig {
  std::string subcommand;

  // Shared
  std::string output;      // report path; empty writes the report to the output stream
  std::string output_dir;  // base for relative output paths; defaults to $INFODEP_OUTPUT_DIR
  std::uint64_t seed = 0;

  // discrete / predict
  std::string input;
  std::string pmf;
  std::string y_column = "y";
  std::string x_column = "x";
  bool pmf_measures = false;  // also report population measures of the empirical joint
  std::string penalty = "l2";
  std::optional<std::size_t> bins;
  bool x_categorical = false;
  double holdout = 0.0;

  // efficiency
  std::string efficiency_mode = "closed-form";  // closed-form | monte-carlo | r2 | fisher
  double p_obs = 0.5;
  double mu = 0.0;
  double sigma2 = 1.0;
  std::size_t n_rep = 100000;
  std::string r2_pmf;
  double fisher_x = 0.0;
  double fisher_y = 1.0;

  // functional
  std::string x_curves;
  std::string y_curves;
  double threshold_x = 0.85;
  double threshold_y = 0.85;
  bool uniform_grid = false;
  bool resample = false;
  bool cv_select_p = false;
  std::string curve_out;

  // simulate
  std::string kind = "joint";  // joint | mcar | normal | flm
  std::string out;             // file, or file prefix for flm
  std::size_t n = 1000;
  long nx = 3;
  long ny = 3;
  double concentration = 1.0;
  double rho = 0.5;
  long grid_size = 64;
  std::vector<double> x_variances{4.0, 2.0, 1.0};
  std::vector<double> beta_diag{1.0, 1.0, 1.0};
  double noise_sd = 1.0;

  // check
  std::size_t instances = 200;
};

/// The subset of `config` relevant to its subcommand, as echoed in reports.
nlohmann::json config_json(const RunConfig& config);

/// Executes one subcommand. Reports go to `config.output` or `out`; an error
/// is written to `err` as a JSON error object. Returns the process exit
/// status: 0 success, 1 failed axiom check, 2 input error, 3 degenerate
/// statistics, 4 numerical failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace infodep
