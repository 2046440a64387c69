// Study configuration and its TOML-style key/value file format.
//
//   # comment
//   axis = "temporal"
//   levels = [8, 16, 32, 64]
//   N = 16
//   T = 0.01
//
// One `key = value` per line; values are numbers, "strings", true/false or
// flat [number, ...] arrays. Unknown keys are errors.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spde/report.hpp"
#include "spde/scheme.hpp"

namespace spde {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ConfigValue = std::variant<double, std::string, bool, std::vector<double>>;
using ConfigDocument = std::map<std::string, ConfigValue>;

/// Throws ConfigError with the offending line number.
ConfigDocument parse_config_text(const std::string &text);

struct StudyConfig {
  SchemeConfig scheme;  ///< N is used on the temporal axis, n on the spatial axis
  StudyAxis axis = StudyAxis::temporal;
  std::vector<int> levels{8, 16, 32, 64};
  int ref_cutoff = 64;
  int ref_steps = 512;
  int samples = 16;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "out";
  int workers = 1;

  /// Throws ConfigError when the ladder or reference is inconsistent.
  void validate() const;
  /// Scheme configuration of ladder level `level`.
  SchemeConfig level_config(int level) const;
  /// Canonical one-line description; excludes output_dir and workers.
  std::string canonical() const;
  /// 16 hex digits of FNV-1a over canonical().
  std::string digest() const;
};

StudyConfig study_config_from_document(const ConfigDocument &doc);
StudyConfig load_study_config(const std::filesystem::path &path);

}  // namespace spde
