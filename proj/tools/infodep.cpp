#include <iostream>

#include "CLI11.hpp"
#include "infodep/cli.hpp"
#include "infodep/error.hpp"
#include "infodep/report_json.hpp"

int main(int argc, char** argv) {
  infodep::RunConfig c;
  CLI::App app{"Interpretable dependence measures built from information link functions"};
  app.set_version_flag("--version", INFODEP_VERSION);
  app.require_subcommand(1);
  app.add_option("-o,--output", c.output, "Write the JSON report here instead of stdout");
  app.add_option("--output-dir", c.output_dir, "Base directory for relative output paths (default $INFODEP_OUTPUT_DIR)");

  auto* discrete = app.add_subcommand("discrete", "Correlation, deviance and 0-1 ratios of binary Y on categorical X");
  discrete->add_option("--input", c.input, "Sample CSV with a header row");
  discrete->add_option("--pmf", c.pmf, "Joint pmf CSV (x,y,prob or x,y,count)");
  discrete->add_option("--y", c.y_column, "Outcome column")->capture_default_str();
  discrete->add_option("--x", c.x_column, "Explanatory column")->capture_default_str();
  discrete->add_flag("--pmf-measures", c.pmf_measures, "Also report population measures of the empirical joint");

  auto* predict = app.add_subcommand("predict", "Prediction-error dependence measure under a penalty");
  predict->add_option("--input", c.input, "Sample CSV with a header row")->required();
  predict->add_option("--y", c.y_column, "Outcome column")->capture_default_str();
  predict->add_option("--x", c.x_column, "Explanatory column")->capture_default_str();
  predict->add_option("--penalty", c.penalty, "l2, l1 or zero-one")->capture_default_str();
  predict->add_option("--bins", c.bins, "Equal-frequency bins for numeric X (default ceil(n^(1/3)))");
  predict->add_flag("--x-categorical", c.x_categorical, "Group numeric X by value instead of binning");
  predict->add_option("--holdout", c.holdout, "Fraction of rows held out for evaluation")->capture_default_str();
  predict->add_option("--seed", c.seed, "Seed of the holdout split")->capture_default_str();

  auto* efficiency = app.add_subcommand("efficiency", "Fisher-information efficiency measures");
  bool closed = false, mc = false;
  efficiency->add_flag("--closed-form", closed, "MCAR Gaussian closed form");
  efficiency->add_flag("--monte-carlo", mc, "MCAR Gaussian Monte Carlo Fisher information");
  efficiency->add_option("--p", c.p_obs, "Observation probability")->capture_default_str();
  efficiency->add_option("--mu", c.mu, "Mean of Y")->capture_default_str();
  efficiency->add_option("--sigma2", c.sigma2, "Variance of Y")->capture_default_str();
  efficiency->add_option("--n-rep", c.n_rep, "Monte Carlo replicates")->capture_default_str();
  efficiency->add_option("--seed", c.seed, "Monte Carlo seed")->capture_default_str();
  auto* r2 = efficiency->add_option("--r2-pmf", c.r2_pmf, "2x2 pmf of two binary variables");
  auto* fx = efficiency->add_option("--fisher-x", c.fisher_x, "Fisher information carried by X");
  auto* fy = efficiency->add_option("--fisher-y", c.fisher_y, "Fisher information carried by Y");
  fx->needs(fy);
  fy->needs(fx);

  auto* functional = app.add_subcommand("functional", "Functional dependence measures D1, D2, D3");
  functional->add_option("--x", c.x_curves, "X curves CSV")->required();
  functional->add_option("--y", c.y_curves, "Y curves CSV")->required();
  functional->add_option("--threshold-x", c.threshold_x, "Variance fraction retained for X")->capture_default_str();
  functional->add_option("--threshold-y", c.threshold_y, "Variance fraction retained for Y")->capture_default_str();
  functional->add_flag("--uniform-grid", c.uniform_grid, "Files have no grid row; use a uniform grid on [0,1]");
  functional->add_flag("--resample", c.resample, "Interpolate both sets onto a shared uniform grid when grids differ");
  std::string select_p = "threshold";
  functional->add_option("--select-p", select_p, "threshold or cv")
      ->check(CLI::IsMember({"threshold", "cv"}))
      ->capture_default_str();
  functional->add_option("--curve-out", c.curve_out, "CSV of the pointwise R^2 curve");

  auto* simulate = app.add_subcommand("simulate", "Write seeded synthetic data");
  simulate->add_option("--kind", c.kind, "joint, mcar, normal or flm")
      ->check(CLI::IsMember({"joint", "mcar", "normal", "flm"}))
      ->capture_default_str();
  simulate->add_option("--out", c.out, "Output file (prefix for flm)")->required();
  simulate->add_option("--seed", c.seed)->capture_default_str();
  simulate->add_option("--n", c.n, "Rows or curves")->capture_default_str();
  simulate->add_option("--nx", c.nx)->capture_default_str();
  simulate->add_option("--ny", c.ny)->capture_default_str();
  simulate->add_option("--concentration", c.concentration, "Dirichlet concentration (inf for uniform)")->capture_default_str();
  simulate->add_option("--p", c.p_obs)->capture_default_str();
  simulate->add_option("--mu", c.mu)->capture_default_str();
  simulate->add_option("--sigma2", c.sigma2)->capture_default_str();
  simulate->add_option("--rho", c.rho)->capture_default_str();
  simulate->add_option("--grid-size", c.grid_size)->capture_default_str();
  simulate->add_option("--x-variances", c.x_variances)->delimiter(',');
  simulate->add_option("--beta", c.beta_diag)->delimiter(',');
  simulate->add_option("--noise-sd", c.noise_sd)->capture_default_str();

  auto* check = app.add_subcommand("check", "Information-link axiom checks on generated joints");
  check->add_option("--instances", c.instances)->capture_default_str();
  check->add_option("--seed", c.seed)->capture_default_str();
  check->add_option("--concentration", c.concentration)->capture_default_str();
  check->add_option("--pmf", c.pmf, "Check one pmf file instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const infodep::Error err(infodep::ErrorKind::InvalidArgument, e.what());
    std::cerr << infodep::render(infodep::error_document(err));
    return infodep::exit_code(err.kind());
  }

  c.subcommand = app.get_subcommands().front()->get_name();
  if (c.subcommand == "efficiency") {
    const int modes = int(closed) + int(mc) + int(!r2->empty()) + int(!fx->empty());
    if (modes != 1) {
      const infodep::Error err(infodep::ErrorKind::InvalidArgument,
                               "efficiency needs exactly one of --closed-form, --monte-carlo, --r2-pmf, --fisher-x/--fisher-y");
      std::cerr << infodep::render(infodep::error_document(err));
      return 2;
    }
    c.efficiency_mode = closed ? "closed-form" : mc ? "monte-carlo" : !r2->empty() ? "r2" : "fisher";
  }
  c.cv_select_p = select_p == "cv";
  return infodep::run(c, std::cout, std::cerr);
}
