// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion 3   run one (exit status reflects it)

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "spde/harness.hpp"

using namespace spde;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char *format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

/// Shared settings of the two convergence studies: sine(1), small horizon
/// so the dynamics are still in the transient where the rates show.
StudyConfig study_base() {
  StudyConfig cfg;
  cfg.scheme.horizon = 0.005;
  cfg.scheme.sigma = 1.0;
  cfg.scheme.nonlinearity = NonlinearitySpec::sine(1.0);
  cfg.scheme.initial = InitialProfile::single({1, 0}, 0.5);
  cfg.samples = 16;
  cfg.seed = 1;
  return cfg;
}

StudyConfig temporal_study() {
  auto cfg = study_base();
  cfg.axis = StudyAxis::temporal;
  cfg.levels = {8, 16, 32, 64};
  cfg.scheme.cutoff = 16;
  cfg.ref_cutoff = 16;
  cfg.ref_steps = 512;
  return cfg;
}

StudyConfig spatial_study() {
  auto cfg = study_base();
  cfg.axis = StudyAxis::spatial;
  cfg.levels = {4, 8, 16, 32};
  cfg.scheme.steps = 256;
  cfg.ref_cutoff = 64;
  cfg.ref_steps = 256;
  return cfg;
}

Outcome slope_outcome(const ConvergenceReport &report, double lo, double hi) {
  if (!report.fit) return {false, "no rate fit"};
  const double s = report.fit->slope;
  return {s >= lo && s <= hi, fmt("slope %.4f (R^2 %.4f), target [%.2f, %.2f]", s, report.fit->r2, lo, hi)};
}

Outcome linear_exactness() {
  const auto start = std::chrono::steady_clock::now();
  const auto result = linear_exact(LinearExactConfig{});
  const double elapsed = seconds_since(start);
  return {result.passed && elapsed < 5.0,
          fmt("max relative deviation %.3e (limit 1e-12), %.2f s (limit 5 s)",
              result.max_relative_deviation, elapsed)};
}

Outcome noise_variance() {
  const auto start = std::chrono::steady_clock::now();
  const auto result = noise_check(NoiseCheckConfig{});
  const double elapsed = seconds_since(start);
  double worst = 0.0;
  for (const auto &row : result.modes) worst = std::max(worst, std::abs(row.z_score));
  return {result.passed && elapsed < 30.0,
          fmt("energy z %.3f (limit 3), worst mode |z| %.3f (limit 4), %.2f s (limit 30 s)",
              result.energy_z, worst, elapsed)};
}

Outcome temporal_rate() {
  return slope_outcome(run_convergence_study(temporal_study()), -1.35, -0.65);
}

Outcome spatial_rate() {
  return slope_outcome(run_convergence_study(spatial_study()), -1.4, -0.6);
}

Outcome time_regularity() {
  const auto fit = noise_time_regularity(HolderCheckConfig{});
  return {fit.exponent >= 0.17 && fit.exponent <= 0.33,
          fmt("exponent %.4f over lags 2^-10..2^-6, target 0.25 +/- 0.08", fit.exponent)};
}

Outcome semigroup_smoothing_rate() {
  const auto result = semigroup_smoothing(SmoothingCheckConfig{});
  return {result.min_slope >= -0.35,
          fmt("min slope %.4f over t in [1e-6, 1e-2], target >= -0.35", result.min_slope)};
}

Outcome mild_form() {
  SchemeConfig cfg;
  cfg.cutoff = 1;
  cfg.steps = 4;
  cfg.horizon = 0.0025;
  cfg.sigma = 0.0;
  cfg.nonlinearity = NonlinearitySpec::sine(1.0);
  cfg.initial = InitialProfile::single({1, 0}, 0.5);
  const auto path = sample_ou_path(1, ModeLattice::make(cfg.cutoff, cfg.oversample), cfg.steps,
                                   cfg.horizon, cfg.sigma);
  const auto traj = run(cfg, path);
  const auto oracle = testing::mild_form_oracle(cfg.initial.on(path.lattice_ptr()),
                                                [](double u) { return std::sin(u); }, cfg.steps,
                                                cfg.horizon, 10000, 64);
  double worst = 0.0;
  for (int j = 0; j <= cfg.steps; ++j) worst = std::max(worst, l2_distance(traj.at(j), oracle[j]));
  return {worst <= 1e-6, fmt("max L2 deviation %.3e (limit 1e-6)", worst)};
}

std::string read_all(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const auto root = fs::temp_directory_path() / "spde_acceptance_determinism";
  fs::remove_all(root);
  auto cfg = temporal_study();
  std::vector<fs::path> dirs;
  for (int workers : {1, 1, 4}) {
    cfg.workers = workers;
    dirs.push_back(root / std::to_string(dirs.size()));
    write_report(dirs.back(), run_convergence_study(cfg));
  }
  bool same = true;
  for (const char *name : {"convergence_samples.csv", "convergence_summary.csv"}) {
    const auto ref = read_all(dirs[0] / name);
    same = same && !ref.empty();
    for (std::size_t i = 1; i < dirs.size(); ++i) same = same && read_all(dirs[i] / name) == ref;
  }
  fs::remove_all(root);
  return {same, same ? "CSV bytes identical across reruns and workers 1 vs 4"
                     : "CSV bytes differ"};
}

struct Criterion {
  int id;
  const char *name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "linear exactness", linear_exactness},
      {2, "noise variance", noise_variance},
      {3, "temporal convergence rate", temporal_rate},
      {4, "spatial convergence rate", spatial_rate},
      {5, "noise time regularity", time_regularity},
      {6, "semigroup smoothing", semigroup_smoothing_rate},
      {7, "mild-form consistency", mild_form},
      {8, "determinism", determinism},
  };
  int failures = 0;
  for (const auto &c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %d (%s): %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    failures += o.passed ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
