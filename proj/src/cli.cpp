#include "infodep/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "infodep/datagen.hpp"
#include "infodep/discrete.hpp"
#include "infodep/efficiency.hpp"
#include "infodep/functional.hpp"
#include "infodep/io.hpp"
#include "infodep/prediction.hpp"
#include "infodep/random.hpp"
#include "infodep/report_json.hpp"

namespace infodep {

namespace {

namespace fs = std::filesystem;

std::string resolve_output(const RunConfig& c, const std::string& path) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  std::string dir = c.output_dir;
  if (dir.empty())
    if (const char* env = std::getenv("INFODEP_OUTPUT_DIR")) dir = env;
  if (dir.empty()) return path;
  return (fs::path(dir) / path).string();
}

std::ofstream open_output(const std::string& path) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    fs::create_directories(parent, ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  return f;
}

void emit(const RunConfig& c, const nlohmann::json& doc, std::ostream& out) {
  const auto path = resolve_output(c, c.output);
  if (path.empty()) {
    out << render(doc);
  } else {
    auto f = open_output(path);
    f << render(doc);
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) fail(ErrorKind::InvalidArgument, message);
}

nlohmann::json run_discrete(const RunConfig& c, std::vector<MeasureReport>& reports) {
  require(c.input.empty() != c.pmf.empty(), "discrete needs exactly one of --input or --pmf");
  if (!c.pmf.empty()) {
    const auto joint = ingest_pmf(c.pmf);
    reports.push_back(correlation_ratio_pmf(joint));
    reports.push_back(entropy_ratio_pmf(joint));
    reports.push_back(zero_one_ratio_pmf(joint));
    for (auto& r : reports) r.provenance["pmf_file"] = c.pmf;
    return nlohmann::json::object();
  }
  const auto table = ingest_table(c.input, {{c.x_column}});
  auto triplet = empirical_triplet(table, c.y_column, c.x_column);
  reports.push_back(triplet.correlation_ratio);
  reports.push_back(triplet.deviance_ratio);
  reports.push_back(triplet.zero_one_ratio);
  if (c.pmf_measures) {
    const auto joint = empirical_joint(table, c.y_column, c.x_column);
    reports.push_back(correlation_ratio_pmf(joint));
    reports.push_back(entropy_ratio_pmf(joint));
    reports.push_back(zero_one_ratio_pmf(joint));
  }
  for (auto& r : reports) r.provenance["input_file"] = c.input;
  return nlohmann::json::object();
}

nlohmann::json run_predict(const RunConfig& c, std::vector<MeasureReport>& reports) {
  require(!c.input.empty(), "predict needs --input");
  PredictionOptions opt;
  opt.penalty = Penalty::parse(c.penalty);
  opt.bins = c.bins;
  opt.categorical_x = c.x_categorical;
  opt.holdout_fraction = c.holdout;
  opt.seed = c.seed;
  const auto table = ingest_table(c.input);
  auto r = prediction_measure(table, c.y_column, c.x_column, opt);
  r.provenance["input_file"] = c.input;
  reports.push_back(std::move(r));
  return nlohmann::json::object();
}

nlohmann::json run_efficiency(const RunConfig& c, std::vector<MeasureReport>& reports) {
  const McarGaussianModel model{c.mu, c.sigma2, c.p_obs};
  if (c.efficiency_mode == "closed-form") {
    reports.push_back(mcar_measure(model));
  } else if (c.efficiency_mode == "monte-carlo") {
    auto r = efficiency_ratio(mc_fisher_mcar(model, c.n_rep, c.seed));
    r.measure = "mcar_efficiency_monte_carlo";
    r.diagnostics["closed_form_value"] = model.p_obs;
    r.provenance = {{"source", "monte_carlo"}, {"seed", std::to_string(c.seed)}};
    reports.push_back(std::move(r));
  } else if (c.efficiency_mode == "r2") {
    require(!c.r2_pmf.empty(), "--r2-pmf needs a pmf file");
    auto r = binary_r2(ingest_pmf(c.r2_pmf));
    r.provenance["pmf_file"] = c.r2_pmf;
    reports.push_back(std::move(r));
  } else if (c.efficiency_mode == "fisher") {
    auto r = efficiency_ratio(FisherPair{c.fisher_x, c.fisher_y, 0.0, 0});
    r.provenance = {{"source", "supplied_fisher_information"}};
    reports.push_back(std::move(r));
  } else {
    fail(ErrorKind::InvalidArgument, "unknown efficiency mode '" + c.efficiency_mode + "'");
  }
  return nlohmann::json::object();
}

nlohmann::json run_functional(const RunConfig& c, std::vector<MeasureReport>& reports) {
  require(!c.x_curves.empty() && !c.y_curves.empty(), "functional needs --x and --y curve files");
  const CurveReadOptions read{c.uniform_grid};
  auto x = ingest_curves(c.x_curves, read);
  auto y = ingest_curves(c.y_curves, read);
  const bool aligned = x.m() == y.m() && same_grid(x, y.grid());
  if (!aligned && c.resample) {
    const Eigen::VectorXd grid = CurveSetd::uniform_grid(std::max(x.m(), y.m()));
    x = resample_linear(x, grid);
    y = resample_linear(y, grid);
  }
  FunctionalOptions opt;
  opt.threshold_x = c.threshold_x;
  opt.threshold_y = c.threshold_y;
  opt.cv_select_p = c.cv_select_p;
  auto res = functional_measures(x, y, opt);
  for (auto* r : {&res.d1, &res.d2, &res.d3}) {
    r->provenance["x_curves"] = c.x_curves;
    r->provenance["y_curves"] = c.y_curves;
    r->provenance["resampled"] = !aligned && c.resample ? "true" : "false";
    reports.push_back(*r);
  }
  nlohmann::json extra = nlohmann::json::object();
  if (!res.cv_errors.empty()) {
    nlohmann::json errs = nlohmann::json::array();
    for (double e : res.cv_errors) errs.push_back(json_number(e));
    extra["cv_errors_by_p"] = errs;
  }
  if (!c.curve_out.empty()) {
    const auto path = resolve_output(c, c.curve_out);
    auto f = open_output(path);
    f << "t,pointwise_r2\n";
    for (Eigen::Index a = 0; a < res.grid.size(); ++a) {
      f << format_number(res.grid(a)) << ',';
      if (!res.excluded[std::size_t(a)]) f << format_number(res.pointwise_r2(a));
      f << '\n';
    }
    extra["artifacts"] = {path};
  }
  return extra;
}

nlohmann::json run_simulate(const RunConfig& c, std::vector<MeasureReport>&) {
  require(!c.out.empty(), "simulate needs --out");
  nlohmann::json artifacts = nlohmann::json::array();
  nlohmann::json extra = nlohmann::json::object();
  auto write = [&](const std::string& path, const auto& writer) {
    const auto resolved = resolve_output(c, path);
    auto f = open_output(resolved);
    writer(f);
    artifacts.push_back(resolved);
  };
  if (c.kind == "joint") {
    const auto joint = gen_joint_pmf(c.nx, c.ny, c.concentration, c.seed);
    write(c.out, [&](std::ostream& f) { write_pmf_csv(joint, f); });
  } else if (c.kind == "mcar") {
    const auto t = gen_mcar({c.mu, c.sigma2, c.p_obs}, c.n, c.seed);
    write(c.out, [&](std::ostream& f) { write_table_csv(t, f); });
  } else if (c.kind == "normal") {
    const auto t = gen_bivariate_normal(c.rho, c.n, c.seed);
    write(c.out, [&](std::ostream& f) { write_table_csv(t, f); });
  } else if (c.kind == "flm") {
    FlmConfig fc{c.n, c.grid_size, c.x_variances, c.beta_diag, c.noise_sd, c.seed};
    const auto pair = gen_flm_pair(fc);
    write(c.out + "_x.csv", [&](std::ostream& f) { write_curves_csv(pair.x, f); });
    write(c.out + "_y.csv", [&](std::ostream& f) { write_curves_csv(pair.y, f); });
    extra["population_d1"] = json_number(population_d1(fc));
  } else {
    fail(ErrorKind::InvalidArgument, "unknown simulate kind '" + c.kind + "'");
  }
  extra["artifacts"] = artifacts;
  return extra;
}

struct MergeFirstTwo {
  static CoarseningMap make(Eigen::Index n) {
    CoarseningMap m{"merge_first_two", {}};
    for (Eigen::Index i = 0; i < n; ++i) m.target.push_back(i == 0 ? 0 : i - 1);
    return m;
  }
};

nlohmann::json run_check(const RunConfig& c, std::vector<MeasureReport>&, bool& failed) {
  std::vector<JointPmfd> joints;
  if (!c.pmf.empty()) {
    joints.push_back(ingest_pmf(c.pmf));
  } else {
    require(c.instances >= 1, "--instances must be positive");
    Rng shape(c.seed);
    for (std::size_t k = 0; k < c.instances; ++k) {
      const auto nx = Eigen::Index(2 + shape.below(5));
      const auto ny = Eigen::Index(2 + shape.below(5));
      joints.push_back(gen_joint_pmf(nx, ny, c.concentration, stream_seed(c.seed, k)));
    }
  }
  const L2PredictionLink<double> l2;
  const EntropyLink<double> entropy;
  const ZeroOneLink<double> zero_one;
  const std::vector<const InformationLink<double>*> links{&l2, &entropy, &zero_one};

  nlohmann::json summary = nlohmann::json::array();
  for (const auto* link : links) {
    std::size_t passed = 0;
    nlohmann::json failures = nlohmann::json::array();
    for (std::size_t k = 0; k < joints.size(); ++k) {
      const auto& j = joints[k];
      const std::vector<CoarseningMap> maps{CoarseningMap::identity(j.nx()), CoarseningMap::reverse(j.nx()),
                                            CoarseningMap::collapse(j.nx()), MergeFirstTwo::make(j.nx())};
      const auto rep = axiom_check(*link, j, maps);
      if (rep.passed()) {
        ++passed;
      } else {
        failures.push_back({{"instance", k},
                            {"nonnegative", rep.nonnegative},
                            {"bounded_by_self", rep.bounded_by_self},
                            {"self_dependence_one", rep.self_dependence_one},
                            {"independence_zero", rep.independence_zero}});
      }
    }
    failed = failed || passed != joints.size();
    summary.push_back({{"link", link->name()},
                       {"instances", joints.size()},
                       {"passed", passed},
                       {"failures", failures}});
  }
  return {{"axiom_checks", summary}, {"all_passed", !failed}};
}

}  // namespace

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  j["subcommand"] = c.subcommand;
  if (!c.output.empty()) j["output"] = c.output;
  const auto& s = c.subcommand;
  if (s == "discrete") {
    if (!c.input.empty()) {
      j["input"] = c.input;
      j["y_column"] = c.y_column;
      j["x_column"] = c.x_column;
      j["pmf_measures"] = c.pmf_measures;
    } else {
      j["pmf"] = c.pmf;
    }
  } else if (s == "predict") {
    j["input"] = c.input;
    j["y_column"] = c.y_column;
    j["x_column"] = c.x_column;
    j["penalty"] = c.penalty;
    j["bins"] = c.bins ? nlohmann::json(*c.bins) : nlohmann::json("default");
    j["x_categorical"] = c.x_categorical;
    j["holdout"] = json_number(c.holdout);
    j["seed"] = c.seed;
  } else if (s == "efficiency") {
    j["mode"] = c.efficiency_mode;
    if (c.efficiency_mode == "closed-form" || c.efficiency_mode == "monte-carlo") {
      j["p_obs"] = json_number(c.p_obs);
      j["mu"] = json_number(c.mu);
      j["sigma2"] = json_number(c.sigma2);
    }
    if (c.efficiency_mode == "monte-carlo") {
      j["n_rep"] = c.n_rep;
      j["seed"] = c.seed;
    }
    if (c.efficiency_mode == "r2") j["r2_pmf"] = c.r2_pmf;
    if (c.efficiency_mode == "fisher") {
      j["fisher_x"] = json_number(c.fisher_x);
      j["fisher_y"] = json_number(c.fisher_y);
    }
  } else if (s == "functional") {
    j["x_curves"] = c.x_curves;
    j["y_curves"] = c.y_curves;
    j["threshold_x"] = json_number(c.threshold_x);
    j["threshold_y"] = json_number(c.threshold_y);
    j["uniform_grid"] = c.uniform_grid;
    j["resample"] = c.resample;
    j["select_p"] = c.cv_select_p ? "cv" : "threshold";
    if (!c.curve_out.empty()) j["curve_out"] = c.curve_out;
  } else if (s == "simulate") {
    j["kind"] = c.kind;
    j["out"] = c.out;
    j["seed"] = c.seed;
    if (c.kind == "joint") {
      j["nx"] = c.nx;
      j["ny"] = c.ny;
      j["concentration"] = json_number(c.concentration);
    } else if (c.kind == "mcar") {
      j["n"] = c.n;
      j["p_obs"] = json_number(c.p_obs);
      j["mu"] = json_number(c.mu);
      j["sigma2"] = json_number(c.sigma2);
    } else if (c.kind == "normal") {
      j["n"] = c.n;
      j["rho"] = json_number(c.rho);
    } else if (c.kind == "flm") {
      j["n"] = c.n;
      j["grid_size"] = c.grid_size;
      nlohmann::json v = nlohmann::json::array(), b = nlohmann::json::array();
      for (double x : c.x_variances) v.push_back(json_number(x));
      for (double x : c.beta_diag) b.push_back(json_number(x));
      j["x_variances"] = v;
      j["beta_diag"] = b;
      j["noise_sd"] = json_number(c.noise_sd);
    }
  } else if (s == "check") {
    if (!c.pmf.empty()) {
      j["pmf"] = c.pmf;
    } else {
      j["instances"] = c.instances;
      j["concentration"] = json_number(c.concentration);
      j["seed"] = c.seed;
    }
  }
  return j;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::vector<MeasureReport> reports;
    nlohmann::json extra;
    bool failed = false;
    const auto& s = config.subcommand;
    if (s == "discrete") extra = run_discrete(config, reports);
    else if (s == "predict") extra = run_predict(config, reports);
    else if (s == "efficiency") extra = run_efficiency(config, reports);
    else if (s == "functional") extra = run_functional(config, reports);
    else if (s == "simulate") extra = run_simulate(config, reports);
    else if (s == "check") extra = run_check(config, reports, failed);
    else fail(ErrorKind::InvalidArgument, "unknown subcommand '" + s + "'");
    emit(config, report_document(s, config_json(config), reports, extra), out);
    return failed ? 1 : 0;
  } catch (const Error& e) {
    err << render(error_document(e));
    return exit_code(e.kind());
  }
}

}  // namespace infodep
