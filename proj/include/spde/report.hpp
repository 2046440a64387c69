// Convergence-study results and their CSV encodings.
//
//   samples CSV:  axis,level,sample,seed,sup_l2_error
//   summary CSV:  axis,level,mean_error,std_error,n_samples
//                 # slope=<v> intercept=<v> r2=<v>
//
// Reals are printed with %.17g so that files round-trip exactly and identical
// results give identical bytes.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spde/analysis.hpp"

namespace spde {

enum class StudyAxis { spatial, temporal };

StudyAxis parse_axis(const std::string &name);
std::string to_string(StudyAxis axis);

struct ConvergenceReport {
  StudyAxis axis = StudyAxis::temporal;
  std::vector<int> levels;
  std::vector<std::uint64_t> seeds;          ///< per sample
  std::vector<std::vector<double>> errors;   ///< [level][sample], sup over coarse grid times
  std::vector<SampleStats> stats;            ///< per level
  std::optional<RateFit> fit;                ///< absent if < 3 levels or a zero mean error
  std::string config_digest;

  /// Fill stats and fit from errors.
  void finalize();
};

std::string samples_csv(const ConvergenceReport &report);
std::string summary_csv(const ConvergenceReport &report);

/// Writes convergence_samples.csv and convergence_summary.csv into `dir`.
void write_report(const std::filesystem::path &dir, const ConvergenceReport &report);

/// %.17g
std::string format_real(double v);

}  // namespace spde
