// Acceptance runs. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "infodep/cli.hpp"
#include "infodep/datagen.hpp"
#include "infodep/discrete.hpp"
#include "infodep/efficiency.hpp"
#include "infodep/functional.hpp"
#include "infodep/prediction.hpp"
#include "oracle/brute_force.hpp"
#include "test_util.hpp"

using namespace infodep;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail = what;
      ok = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool criterion(const char* id, const char* title, const std::function<Check()>& body) {
  const auto start = Clock::now();
  Check c;
  try {
    c = body();
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = std::string("exception: ") + e.what();
  }
  std::printf("%s %s: %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", id, title, seconds_since(start),
              c.detail.empty() ? "" : " ", c.detail.c_str());
  std::fflush(stdout);
  return c.ok;
}

Check ac1() {
  Check c;
  for (double p : {0.25, 0.5, 0.7, 0.9}) {
    const auto start = Clock::now();
    const McarGaussianModel model{0.0, 1.0, p};
    const double closed = mcar_measure(model).dep.value;
    c.expect(closed == p, "closed form " + fmt(closed) + " != " + fmt(p));
    const double mc = efficiency_ratio(mc_fisher_mcar(model, 100000, 20240601)).dep.value;
    c.expect(std::abs(mc - p) / p <= 0.05, "monte carlo " + fmt(mc) + " at p=" + fmt(p));
    const double t = seconds_since(start);
    c.expect(t < 5.0, "p=" + fmt(p) + " took " + fmt(t) + "s");
  }
  return c;
}

Check ac2() {
  Check c;
  const auto start = Clock::now();
  const auto table = gen_bivariate_normal(0.6, 100000, 20240602);
  PredictionOptions opt;
  opt.penalty = Penalty::parse("l2");
  const double v = prediction_measure(table, "y", "x", opt).dep.raw;
  c.expect(v >= 0.33 && v <= 0.39, "L2 measure " + fmt(v));
  c.expect(seconds_since(start) < 10.0, "runtime over 10s");
  if (c.ok) c.detail = "value " + fmt(v);
  return c;
}

Check ac3() {
  Check c;
  const auto start = Clock::now();
  testutil::Gen g(20240603);
  const L2PredictionLink<double> l2;
  const EntropyLink<double> ent;
  const ZeroOneLink<double> zo;
  const std::vector<const InformationLink<double>*> links{&l2, &ent, &zo};
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int nx = g.integer(2, 6), ny = g.integer(2, 6);
    const Eigen::MatrixXd p = g.pmf(nx, ny, k % 4 == 0 ? 0.2 : 0.0);
    const auto j = testutil::joint(p);
    const auto t = testutil::to_table(p);
    std::vector<double> codes(ny);
    for (int v = 0; v < ny; ++v) codes[v] = v;
    worst = std::max({worst, std::abs(correlation_ratio_pmf(j).dep.raw - oracle::correlation_ratio(t, codes)),
                      std::abs(entropy_ratio_pmf(j).dep.raw - oracle::entropy_ratio(t)),
                      std::abs(zero_one_ratio_pmf(j).dep.raw - oracle::zero_one_ratio(t))});
    const std::vector<CoarseningMap> maps{CoarseningMap::identity(nx), CoarseningMap::reverse(nx),
                                          CoarseningMap::collapse(nx), {"random", g.surjection(nx, g.integer(1, nx))},
                                          {"bijection", g.permutation(nx)}};
    for (const auto* link : links)
      c.expect(axiom_check(*link, j, maps).passed(), std::string(link->name()) + " axioms, instance " + std::to_string(k));
  }
  c.expect(worst <= 1e-10, "max oracle deviation " + fmt(worst));
  c.expect(seconds_since(start) < 30.0, "runtime over 30s");
  if (c.ok) c.detail = "max oracle deviation " + fmt(worst);
  return c;
}

Check ac4() {
  Check c;
  testutil::Gen g(20240604);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int groups = g.integer(2, 5), n = g.integer(40, 400);
    std::vector<double> probs(groups);
    for (auto& p : probs) p = g.real(0.05, 0.95);
    std::vector<double> y(n);
    std::vector<std::string> x(n);
    for (int i = 0; i < n; ++i) {
      const int cat = i % groups;
      y[i] = i < groups ? 0.0 : i < 2 * groups ? 1.0 : (g.coin(probs[cat]) ? 1.0 : 0.0);
      x[i] = "c" + std::to_string(cat);
    }
    SampleTable t;
    t.add_numeric("y", y);
    t.add_categorical("x", x);
    const double d2 = empirical_triplet(t, "y", "x").deviance_ratio.dep.raw;
    const double ent = entropy_ratio_pmf(empirical_joint(t, "y", "x")).dep.raw;
    worst = std::max(worst, std::abs(d2 - ent));
  }
  c.expect(worst <= 1e-10, "max deviation " + fmt(worst));
  if (c.ok) c.detail = "max deviation " + fmt(worst);
  return c;
}

Check ac5() {
  Check c;
  std::vector<double> y;
  std::vector<std::string> x;
  const std::pair<double, const char*> cells[] = {{1, "a"}, {0, "a"}, {1, "b"}, {0, "b"}};
  const int counts[] = {40, 10, 10, 40};
  for (int k = 0; k < 4; ++k)
    for (int r = 0; r < counts[k]; ++r) {
      y.push_back(cells[k].first);
      x.push_back(cells[k].second);
    }
  SampleTable t;
  t.add_numeric("y", y);
  t.add_categorical("x", x);
  const auto r = empirical_triplet(t, "y", "x");
  const double d1 = r.correlation_ratio.dep.raw, d2 = r.deviance_ratio.dep.raw, d3 = r.zero_one_ratio.dep.raw;
  c.expect(std::abs(d1 - 0.36) <= 1e-12, "D1 " + fmt(d1));
  c.expect(std::abs(d3 - 0.6) <= 1e-12, "D3 " + fmt(d3));
  c.expect(std::abs(d2 - 0.27807) <= 1e-5, "D2 " + fmt(d2));
  if (c.ok) c.detail = "D1 " + fmt(d1) + ", D2 " + fmt(d2) + ", D3 " + fmt(d3);
  return c;
}

FlmConfig ac6_config(std::size_t n, std::uint64_t seed) {
  return {n, 64, {4.0, 2.0, 1.0}, {1.0, 1.0, 1.0}, std::sqrt(3.0), seed};
}

Check ac6() {
  Check c;
  const auto start = Clock::now();
  c.expect(population_d1(ac6_config(3, 0)) == 0.7, "population D1 is not 0.7");

  {
    // With beta = I on the X basis, E[Y | X] is X itself.
    const auto big = gen_flm_pair(ac6_config(50000, 20240606));
    const Eigen::VectorXd& grid = big.x.grid();
    const std::vector<double> t(grid.data(), grid.data() + grid.size());
    std::vector<std::vector<double>> yv(big.y.n()), mean(big.x.n());
    for (Eigen::Index i = 0; i < big.y.n(); ++i) {
      yv[i].assign(big.y.values().row(i).begin(), big.y.values().row(i).end());
      mean[i].assign(big.x.values().row(i).begin(), big.x.values().row(i).end());
    }
    const double brute = oracle::d1_with_known_mean(t, yv, mean);
    c.expect(std::abs(brute - 0.7) <= 0.01, "brute force D1 " + fmt(brute));
    c.detail = "brute " + fmt(brute);
  }

  FunctionalOptions opt;
  opt.threshold_x = 0.95;
  for (auto [n, tol] : {std::pair<std::size_t, double>{2000, 0.05}, {20000, 0.02}}) {
    const auto pair = gen_flm_pair(ac6_config(n, 20240607 + n));
    const double d1 = functional_measures(pair.x, pair.y, opt).d1.dep.raw;
    c.expect(std::abs(d1 - 0.7) <= tol, "D1 " + fmt(d1) + " at n=" + std::to_string(n));
    if (c.ok) c.detail += ", n=" + std::to_string(n) + " " + fmt(d1);
  }

  // Finite-rank curves, all components retained.
  FunctionalOptions full;
  full.threshold_x = full.threshold_y = 1.0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto pair = gen_flm_pair({300, 48, {4.0, 2.0, 1.0}, {1.0, 1.0, 1.0}, 0.0, seed});
    const auto r = functional_measures(pair.x, pair.x, full);
    for (const auto* m : {&r.d1, &r.d2, &r.d3})
      c.expect(std::abs(m->dep.raw - 1.0) <= 1e-8, m->measure + " self-pair " + fmt(m->dep.raw));
  }

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto a = gen_flm_pair({200, 64, {4.0, 2.0, 1.0}, {1.0, 1.0, 1.0}, 1.0, 30000 + seed});
    const auto b = gen_flm_pair({200, 64, {4.0, 2.0, 1.0}, {1.0, 1.0, 1.0}, 1.0, 40000 + seed});
    const auto r = functional_measures(a.x, b.y);
    for (const auto* m : {&r.d1, &r.d2, &r.d3})
      c.expect(m->dep.raw <= 0.15, m->measure + " independent " + fmt(m->dep.raw));
  }
  c.expect(seconds_since(start) < 60.0, "runtime over 60s");
  return c;
}

Check ac7() {
  Check c;
  const Eigen::Index m = 64;
  const double pattern[4][2] = {{2, 1}, {-2, 1}, {2, -1}, {-2, -1}};
  const Eigen::MatrixXd basis = fourier_basis(2, m);
  Eigen::MatrixXd v(4, m);
  for (int i = 0; i < 4; ++i) v.row(i) = pattern[i][0] * basis.row(0) + pattern[i][1] * basis.row(1);
  const CurveSetd curves(CurveSetd::uniform_grid(m), v);
  const auto s = fpca(center(curves).curves);

  c.expect(s.k == 2, "k = " + std::to_string(s.k));
  const double e0 = std::abs(s.eigenvalues(0) - 4.0), e1 = std::abs(s.eigenvalues(1) - 1.0);
  c.expect(e0 <= 1e-6 && e1 <= 1e-6, "eigenvalues " + fmt(s.eigenvalues(0)) + ", " + fmt(s.eigenvalues(1)));

  const Eigen::MatrixXd gram = s.eigenfunctions * s.weights.asDiagonal() * s.eigenfunctions.transpose();
  const double orth = (gram - Eigen::MatrixXd::Identity(s.k, s.k)).cwiseAbs().maxCoeff();
  c.expect(orth <= 1e-6, "orthonormality error " + fmt(orth));

  // Trace of the sample covariance by direct summation.
  const std::vector<double> t(curves.grid().data(), curves.grid().data() + m);
  std::vector<double> diag(m, 0.0);
  for (Eigen::Index a = 0; a < m; ++a) {
    double mean = 0.0;
    for (int i = 0; i < 4; ++i) mean += v(i, a) / 4.0;
    for (int i = 0; i < 4; ++i) diag[a] += (v(i, a) - mean) * (v(i, a) - mean) / 4.0;
  }
  const double trace = oracle::trapezoid(t, diag);
  const double gap = std::abs(s.spectrum.sum() - trace);
  c.expect(gap <= 1e-8, "trace gap " + fmt(gap));
  if (c.ok) c.detail = "orthonormality " + fmt(orth) + ", trace gap " + fmt(gap);
  return c;
}

std::string report_of(const RunConfig& config) {
  std::ostringstream out, err;
  if (run(config, out, err) != 0) throw std::runtime_error("run failed: " + err.str());
  return out.str();
}

Check ac8() {
  Check c;
  std::vector<RunConfig> configs;
  {
    RunConfig e;
    e.subcommand = "efficiency";
    e.efficiency_mode = "monte-carlo";
    e.p_obs = 0.7;
    e.n_rep = 100000;
    e.seed = 20240608;
    configs.push_back(e);
    e.efficiency_mode = "closed-form";
    configs.push_back(e);
    RunConfig k;
    k.subcommand = "check";
    k.instances = 200;
    k.seed = 20240608;
    configs.push_back(k);
  }
  for (const auto& cfg : configs) {
    const auto a = report_of(cfg), b = report_of(cfg);
    c.expect(!a.empty() && a == b, cfg.subcommand + " reports differ between runs");
  }

  // Data-level determinism of the seeded generators behind the other runs.
  const auto t1 = gen_bivariate_normal(0.6, 100000, 20240602), t2 = gen_bivariate_normal(0.6, 100000, 20240602);
  c.expect(t1 == t2, "bivariate normal draws differ");
  const auto f1 = gen_flm_pair(ac6_config(2000, 5)), f2 = gen_flm_pair(ac6_config(2000, 5));
  c.expect(f1.x.values() == f2.x.values() && f1.y.values() == f2.y.values(), "flm draws differ");
  const auto r1 = functional_measures(f1.x, f1.y), r2 = functional_measures(f2.x, f2.y);
  c.expect(r1.d1.dep.raw == r2.d1.dep.raw && r1.d2.dep.raw == r2.d2.dep.raw && r1.d3.dep.raw == r2.d3.dep.raw,
           "functional measures differ");
  return c;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= criterion("AC1", "MCAR closed form and Monte Carlo efficiency", ac1);
  ok &= criterion("AC2", "joint-normal L2 prediction measure", ac2);
  ok &= criterion("AC3", "discrete oracle equivalence and axioms", ac3);
  ok &= criterion("AC4", "deviance ratio equals empirical entropy ratio", ac4);
  ok &= criterion("AC5", "exact-frequency triplet", ac5);
  ok &= criterion("AC6", "functional consistency", ac6);
  ok &= criterion("AC7", "FPCA numerics", ac7);
  ok &= criterion("AC8", "determinism of seeded reports", ac8);
  return ok ? 0 : 1;
}
