// Experiment drivers shared by the CLI and the acceptance suite.
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "spde/analysis.hpp"
#include "spde/noise.hpp"
#include "spde/report.hpp"
#include "spde/scheme.hpp"
#include "spde/study_config.hpp"

namespace spde {

/// Run body(i) for i in [0, count) on `workers` threads. Each index runs
/// exactly once; the first exception is rethrown after all threads join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)> &body);

/// Coupled-noise convergence study.
///
/// Sample s draws one path at (N_ref, n_ref) from derive_seed(seed, s), runs
/// the reference on it and every ladder level on its restriction, and records
/// sup_error against the reference. Results do not depend on `workers`.
ConvergenceReport run_convergence_study(const StudyConfig &cfg);

struct ModeVarianceRow {
  Mode mode;
  double empirical = 0.0;  ///< mean of |U_k(T)|^2
  double analytic = 0.0;
  double z_score = 0.0;
};

struct NoiseCheckResult {
  std::vector<ModeVarianceRow> modes;  ///< one row per {k, -k} representative
  SampleStats energy;                  ///< ||U^N(T)||^2 over samples
  double analytic_energy = 0.0;
  double energy_z = 0.0;
  bool passed = false;  ///< |energy_z| <= 3 and every |z| <= 4
};

struct NoiseCheckConfig {
  int cutoff = 4;
  double horizon = 0.1;
  double sigma = 1.0;
  int samples = 2000;
  std::uint64_t seed = 7;
};

NoiseCheckResult noise_check(const NoiseCheckConfig &cfg);
std::string noise_check_csv(const NoiseCheckResult &result);

struct LinearExactConfig {
  int cutoff = 16;
  std::vector<int> step_counts{8, 16, 32, 64};
  double horizon = 0.01;
  double sigma = 1.0;
  InitialProfile initial = InitialProfile::smooth_bump(1.0);
  std::uint64_t seed = 1;
};

struct LinearExactResult {
  double max_relative_deviation = 0.0;  ///< over step counts and grid times
  bool passed = false;                  ///< deviation <= 1e-12
};

/// G = zero: compare the scheme with P_t u_0 + U^N(t) at every grid time.
LinearExactResult linear_exact(const LinearExactConfig &cfg);

struct HolderCheckConfig {
  int cutoff = 32;
  double lambda = 1.0;
  double epsilon = 0.05;
  double p = 2.0;
  int min_lag_log2 = -10;  ///< lags 2^min .. 2^max
  int max_lag_log2 = -6;
  int samples = 200;
  double sigma = 1.0;
  std::uint64_t seed = 11;
};

/// Ensemble of paths on the grid of spacing 2^min_lag over [0, 2^(max_lag+1)],
/// with pairs (t_end - lag, t_end) per lag; fits E||U_t - U_s||^p_{C^{1-lambda-eps}}.
HolderFit noise_time_regularity(const HolderCheckConfig &cfg);

struct SmoothingCheckConfig {
  int cutoff = 64;
  double alpha = 1.0;
  double beta = 0.0;
  double t_min = 1e-6;
  double t_max = 1e-2;
  int points = 9;  ///< log-spaced times in [t_min, t_max]
  int fields = 4;  ///< slopes are checked on every field
  std::uint64_t seed = 5;
};

struct SmoothingCheckResult {
  std::vector<double> slopes;  ///< one per random field
  double min_slope = 0.0;
};

/// Slope of log ||P_t f||_{C^alpha} against log t for equal-block-energy fields.
SmoothingCheckResult semigroup_smoothing(const SmoothingCheckConfig &cfg);

/// One path plus one trajectory at the config's (N, n); snapshots every
/// `stride` steps as snapshot_<j>.bin under `out`. Returns the trajectory.
Trajectory simulate(const SchemeConfig &cfg, std::uint64_t seed, int stride,
                    const std::filesystem::path &out);

}  // namespace spde
