// spde_cli: simulation, convergence studies and self-checks.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage or config error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "spde/harness.hpp"
#include "spde/study_config.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> samples;
  std::optional<int> workers;
  bool quiet = false;
  int stride = 1;
  std::optional<double> slope_min;
  std::optional<double> slope_max;
};

void write_text(const std::string &dir, const std::string &name, const std::string &text) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + name);
  out << text;
}

spde::StudyConfig study_from(const Options &o, bool require_config) {
  spde::StudyConfig cfg;
  if (!o.config.empty()) {
    cfg = spde::load_study_config(o.config);
  } else if (require_config) {
    throw spde::ConfigError("--config is required");
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.samples) cfg.samples = *o.samples;
  if (o.workers) cfg.workers = *o.workers;
  if (!o.out.empty()) cfg.output_dir = o.out;
  cfg.validate();
  return cfg;
}

int cmd_simulate(const Options &o) {
  const auto cfg = study_from(o, false);
  const std::string out = o.out.empty() ? cfg.output_dir.string() : o.out;
  const auto traj = spde::simulate(cfg.scheme, cfg.seed, o.stride, out);
  if (!o.quiet) {
    std::printf("simulated N=%d n=%d T=%s; ||u(T)||_L2 = %s; snapshots in %s\n", cfg.scheme.cutoff,
                cfg.scheme.steps, spde::format_real(cfg.scheme.horizon).c_str(),
                spde::format_real(spde::l2_norm(traj.states.back())).c_str(), out.c_str());
  }
  return kOk;
}

int cmd_convergence(const Options &o) {
  const auto cfg = study_from(o, true);
  const auto report = spde::run_convergence_study(cfg);
  spde::write_report(cfg.output_dir, report);
  if (!o.quiet) std::cout << spde::summary_csv(report);
  if (o.slope_min || o.slope_max) {
    if (!report.fit) {
      std::cerr << "no rate fit available (need >= 3 levels with nonzero error)\n";
      return kCheckFailed;
    }
    const double s = report.fit->slope;
    if ((o.slope_min && s < *o.slope_min) || (o.slope_max && s > *o.slope_max)) {
      std::cerr << "fitted slope " << s << " outside the requested range\n";
      return kCheckFailed;
    }
  }
  return kOk;
}

int cmd_noise_check(const Options &o) {
  spde::NoiseCheckConfig cfg;
  if (o.seed) cfg.seed = *o.seed;
  if (o.samples) cfg.samples = *o.samples;
  const auto result = spde::noise_check(cfg);
  const auto csv = spde::noise_check_csv(result);
  if (!o.out.empty()) write_text(o.out, "noise_check.csv", csv);
  if (!o.quiet) std::cout << csv;
  std::cout << (result.passed ? "noise-check: PASS\n" : "noise-check: FAIL\n");
  return result.passed ? kOk : kCheckFailed;
}

int cmd_regularity(const Options &o) {
  spde::HolderCheckConfig holder;
  if (o.seed) holder.seed = *o.seed;
  if (o.samples) holder.samples = *o.samples;
  const auto fit = spde::noise_time_regularity(holder);
  spde::SmoothingCheckConfig smoothing;
  if (o.seed) smoothing.seed = *o.seed;
  const auto smooth = spde::semigroup_smoothing(smoothing);

  const bool holder_ok = fit.exponent >= 0.17 && fit.exponent <= 0.33;
  const bool smooth_ok = smooth.min_slope >= -0.35;
  std::string text = "lag,moment\n";
  for (std::size_t i = 0; i < fit.lags.size(); ++i) {
    text += spde::format_real(fit.lags[i]) + "," + spde::format_real(fit.moments[i]) + "\n";
  }
  text += "# time_holder_exponent=" + spde::format_real(fit.exponent) + " target=[0.17,0.33]\n";
  text += "# smoothing_min_slope=" + spde::format_real(smooth.min_slope) + " target=>=-0.35\n";
  if (!o.out.empty()) write_text(o.out, "regularity.csv", text);
  if (!o.quiet) std::cout << text;
  std::cout << "time-regularity: " << (holder_ok ? "PASS" : "FAIL") << "\n"
            << "semigroup-smoothing: " << (smooth_ok ? "PASS" : "FAIL") << "\n";
  return holder_ok && smooth_ok ? kOk : kCheckFailed;
}

int cmd_linear_exact(const Options &o) {
  spde::LinearExactConfig cfg;
  if (o.seed) cfg.seed = *o.seed;
  const auto result = spde::linear_exact(cfg);
  std::printf("linear-exact: max relative deviation = %.3e (limit 1e-12): %s\n",
              result.max_relative_deviation, result.passed ? "PASS" : "FAIL");
  return result.passed ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Spectral-Galerkin / exponential-Euler solver for the stochastic biharmonic equation"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--config", o.config, "Study/run configuration file");
    sub->add_option("--seed", o.seed, "Master seed (u64)");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--samples", o.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", o.quiet, "Suppress tables on stdout");
  };
  auto *simulate = app.add_subcommand("simulate", "Run one path and write snapshots");
  add_common(simulate);
  simulate->add_option("--stride", o.stride, "Snapshot every k-th step")->check(CLI::PositiveNumber);
  auto *convergence = app.add_subcommand("convergence", "Coupled-noise convergence study");
  add_common(convergence);
  convergence->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  convergence->add_option("--slope-min", o.slope_min, "Fail if the fitted slope is below this");
  convergence->add_option("--slope-max", o.slope_max, "Fail if the fitted slope is above this");
  auto *noise = app.add_subcommand("noise-check", "Noise variance against the closed form");
  add_common(noise);
  auto *regularity = app.add_subcommand("regularity", "Time-Hoelder and smoothing exponents");
  add_common(regularity);
  auto *linear = app.add_subcommand("linear-exact", "G = 0 exactness check");
  add_common(linear);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(o);
    if (convergence->parsed()) return cmd_convergence(o);
    if (noise->parsed()) return cmd_noise_check(o);
    if (regularity->parsed()) return cmd_regularity(o);
    if (linear->parsed()) return cmd_linear_exact(o);
  } catch (const spde::ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
