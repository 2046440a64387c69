#include "spde/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "spde/random.hpp"
#include "spde/snapshot_io.hpp"

namespace spde {

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)> &body) {
  const std::size_t threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto &t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ConvergenceReport run_convergence_study(const StudyConfig &cfg) {
  cfg.validate();
  const auto samples = static_cast<std::size_t>(cfg.samples);
  ConvergenceReport report;
  report.axis = cfg.axis;
  report.levels = cfg.levels;
  report.config_digest = cfg.digest();
  report.errors.assign(cfg.levels.size(), std::vector<double>(samples, 0.0));
  for (std::size_t s = 0; s < samples; ++s) report.seeds.push_back(derive_seed(cfg.seed, s));

  const auto ref_lattice = ModeLattice::make(cfg.ref_cutoff, cfg.scheme.oversample);
  // Each sample writes only its own column of report.errors.
  parallel_for(samples, cfg.workers, [&](std::size_t s) {
    const NoisePath path = sample_ou_path(report.seeds[s], ref_lattice, cfg.ref_steps,
                                          cfg.scheme.horizon, cfg.scheme.sigma);
    const Trajectory reference = run_reference(cfg.scheme, path);
    for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
      const SchemeConfig level = cfg.level_config(cfg.levels[l]);
      const NoisePath coarse = restrict(path, level.cutoff, level.steps);
      report.errors[l][s] = sup_error(run(level, coarse), reference);
    }
  });
  report.finalize();
  return report;
}

NoiseCheckResult noise_check(const NoiseCheckConfig &cfg) {
  if (cfg.samples < 2) throw std::invalid_argument("noise_check: need at least 2 samples");
  const auto lattice = ModeLattice::make(cfg.cutoff);
  const auto &lat = *lattice;
  const auto samples = static_cast<std::size_t>(cfg.samples);

  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (lat.is_representative(i)) reps.push_back(i);
  }
  std::vector<std::vector<double>> mode_sq(reps.size(), std::vector<double>(samples));
  std::vector<double> energy(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    // One exact transition from 0 to T gives U(T) without intermediate steps.
    const NoisePath path = sample_ou_path(derive_seed(cfg.seed, s), lattice, 1, cfg.horizon, cfg.sigma);
    const auto end = path.slice(1);
    std::vector<double> sq(lat.size());
    for (std::size_t i = 0; i < lat.size(); ++i) sq[i] = std::norm(end[i]);
    energy[s] = pairwise_sum(sq);
    for (std::size_t r = 0; r < reps.size(); ++r) mode_sq[r][s] = sq[reps[r]];
  }

  NoiseCheckResult result;
  result.passed = true;
  for (std::size_t r = 0; r < reps.size(); ++r) {
    const auto stats = summarize(mode_sq[r]);
    ModeVarianceRow row;
    row.mode = lat.mode(reps[r]);
    row.empirical = stats.mean;
    row.analytic = mode_variance(cfg.horizon, lat.mu(reps[r]), cfg.sigma);
    row.z_score = (stats.mean - row.analytic) / stats.std_error;
    if (!(std::abs(row.z_score) <= 4.0)) result.passed = false;
    result.modes.push_back(row);
  }
  result.energy = summarize(energy);
  result.analytic_energy = analytic_variance(cfg.horizon, lat, cfg.sigma);
  result.energy_z = (result.energy.mean - result.analytic_energy) / result.energy.std_error;
  if (!(std::abs(result.energy_z) <= 3.0)) result.passed = false;
  return result;
}

std::string noise_check_csv(const NoiseCheckResult &result) {
  std::ostringstream out;
  out << "k1,k2,empirical_var,analytic_var,z_score\n";
  for (const auto &row : result.modes) {
    out << row.mode.k1 << ',' << row.mode.k2 << ',' << format_real(row.empirical) << ','
        << format_real(row.analytic) << ',' << format_real(row.z_score) << '\n';
  }
  out << "# energy mean=" << format_real(result.energy.mean)
      << " std_error=" << format_real(result.energy.std_error)
      << " analytic=" << format_real(result.analytic_energy)
      << " z=" << format_real(result.energy_z) << '\n';
  return out.str();
}

LinearExactResult linear_exact(const LinearExactConfig &cfg) {
  if (cfg.step_counts.empty()) throw std::invalid_argument("linear_exact: no step counts");
  int finest = 1;
  for (int n : cfg.step_counts) finest = std::lcm(finest, n);
  const auto lattice = ModeLattice::make(cfg.cutoff);
  const NoisePath path = sample_ou_path(cfg.seed, lattice, finest, cfg.horizon, cfg.sigma);
  const SpectralField u0 = cfg.initial.on(lattice);

  LinearExactResult result;
  for (int n : cfg.step_counts) {
    SchemeConfig sc;
    sc.cutoff = cfg.cutoff;
    sc.steps = n;
    sc.horizon = cfg.horizon;
    sc.sigma = cfg.sigma;
    sc.initial = cfg.initial;
    sc.nonlinearity = NonlinearitySpec::zero();
    const NoisePath coarse = restrict(path, cfg.cutoff, n);
    const Trajectory traj = run(sc, coarse);
    for (int j = 0; j <= n; ++j) {
      const SpectralField expected = semigroup_apply(u0, traj.time(j)) + coarse.at(j);
      const double scale = l2_norm(expected);
      const double diff = l2_distance(traj.at(j), expected);
      const double rel = scale > 0.0 ? diff / scale : diff;
      result.max_relative_deviation = std::max(result.max_relative_deviation, rel);
    }
  }
  result.passed = result.max_relative_deviation <= 1e-12;
  return result;
}

HolderFit noise_time_regularity(const HolderCheckConfig &cfg) {
  if (cfg.max_lag_log2 <= cfg.min_lag_log2) {
    throw std::invalid_argument("noise_time_regularity: empty lag range");
  }
  const int steps = 1 << (cfg.max_lag_log2 + 1 - cfg.min_lag_log2);
  const double horizon = std::ldexp(1.0, cfg.max_lag_log2 + 1);
  const auto lattice = ModeLattice::make(cfg.cutoff);
  std::vector<NoisePath> ensemble;
  ensemble.reserve(static_cast<std::size_t>(cfg.samples));
  for (int s = 0; s < cfg.samples; ++s) {
    ensemble.push_back(sample_ou_path(derive_seed(cfg.seed, static_cast<std::uint64_t>(s)),
                                      lattice, steps, horizon, cfg.sigma));
  }
  std::vector<TimePair> pairs;
  for (int e = 0; e <= cfg.max_lag_log2 - cfg.min_lag_log2; ++e) {
    pairs.push_back({steps - (1 << e), steps});
  }
  const double alpha = 1.0 - cfg.lambda - cfg.epsilon;
  return time_holder_fit(ensemble, alpha, cfg.p, pairs);
}

SmoothingCheckResult semigroup_smoothing(const SmoothingCheckConfig &cfg) {
  if (cfg.points < 3 || !(cfg.t_max > cfg.t_min) || !(cfg.t_min > 0.0)) {
    throw std::invalid_argument("semigroup_smoothing: need >= 3 points on 0 < t_min < t_max");
  }
  std::vector<double> times;
  const double a = std::log(cfg.t_min);
  const double b = std::log(cfg.t_max);
  for (int i = 0; i < cfg.points; ++i) {
    times.push_back(std::exp(a + (b - a) * i / (cfg.points - 1)));
  }
  const auto lattice = ModeLattice::make(cfg.cutoff);
  SmoothingCheckResult result;
  for (int f = 0; f < cfg.fields; ++f) {
    const SpectralField field =
        equal_block_energy_field(lattice, derive_seed(cfg.seed, static_cast<std::uint64_t>(f)));
    result.slopes.push_back(smoothing_slope(field, cfg.alpha, times).slope);
  }
  result.min_slope = *std::min_element(result.slopes.begin(), result.slopes.end());
  return result;
}

Trajectory simulate(const SchemeConfig &cfg, std::uint64_t seed, int stride,
                    const std::filesystem::path &out) {
  cfg.validate();
  if (stride < 1) throw std::invalid_argument("simulate: stride must be >= 1");
  const auto lattice = ModeLattice::make(cfg.cutoff, cfg.oversample);
  const NoisePath path = sample_ou_path(seed, lattice, cfg.steps, cfg.horizon, cfg.sigma);
  Trajectory traj = run(cfg, path);
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    for (int j = 0; j <= traj.steps(); j += stride) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%06d.bin", j);
      write_snapshot_file(out / name, traj.at(j));
    }
  }
  return traj;
}

}  // namespace spde
