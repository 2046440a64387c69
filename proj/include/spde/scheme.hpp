// Spectral-Galerkin / exponential-Euler discretization of
//
//   u(t) = P_t u_0 + int_0^t P_{t-s} G(u(k_n(s))) ds + U(t),   k_n(s) = floor(ns)/n,
//
// on T^2, advanced mode by mode:
//
//   u_k(t_{j+1}) = e^{-h mu_k^2} u_k(t_j) + D_k(h) G_k(u(t_j))
//                  + [U_k(t_{j+1}) - e^{-h mu_k^2} U_k(t_j)],
//
// where U is the exact OU noise path and D_k(h) the drift factor. The linear
// part and the noise increment are exact; only the nonlinearity is frozen on
// each step.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "spde/grid_transform.hpp"
#include "spde/noise.hpp"
#include "spde/nonlinearity.hpp"
#include "spde/torus_spectral.hpp"

namespace spde {

enum class DriftVariant {
  integrated,  ///< (1 - e^{-h mu^2}) / mu^2, the exact step integral
  literal,     ///< h e^{-h mu^2}
};

DriftVariant parse_drift_variant(const std::string &name);
std::string to_string(DriftVariant variant);

/// int_0^h e^{-(h-s) mu^2} ds for the integrated variant, h e^{-h mu^2} for
/// the literal one. `mu` is the Laplacian eigenvalue of the mode.
double drift_factor(double mu, double h, DriftVariant variant);
double drift_factor(Mode k, double h, DriftVariant variant);

/// Named mean-zero initial data.
struct InitialProfile {
  enum class Kind { zero, single_mode, smooth_bump };
  Kind kind = Kind::zero;
  Mode mode{1, 0};         // single_mode
  double amplitude = 0.0;  // single_mode, smooth_bump
  double width = 2.0;      // smooth_bump: coefficients amp * exp(-|k|^2 / (2 width^2))

  static InitialProfile zero() { return {}; }
  static InitialProfile single(Mode k, double amplitude) {
    return {Kind::single_mode, k, amplitude, 2.0};
  }
  static InitialProfile smooth_bump(double amplitude, double width = 2.0) {
    return {Kind::smooth_bump, Mode{1, 0}, amplitude, width};
  }
  static InitialProfile parse(const std::string &name, const std::vector<double> &params);

  /// Pi_N u_0 on the given lattice.
  SpectralField on(LatticePtr lattice) const;
  std::string to_string() const;
};

struct SchemeConfig {
  int cutoff = 16;  ///< N
  int steps = 64;   ///< n
  double horizon = 1.0;
  double sigma = 1.0;
  InitialProfile initial;
  NonlinearitySpec nonlinearity;
  DriftVariant drift = DriftVariant::integrated;
  double oversample = 2.0;

  double step_size() const { return horizon / steps; }
  /// Throws std::invalid_argument on n < 1, T <= 0, N < 1, sigma < 0 or
  /// oversample < 1.
  void validate() const;
};

/// States u(t_j), j = 0..n.
struct Trajectory {
  SchemeConfig config;
  std::vector<SpectralField> states;

  int steps() const { return static_cast<int>(states.size()) - 1; }
  double time(int j) const { return config.horizon * static_cast<double>(j) / steps(); }
  const SpectralField &at(int j) const { return states[static_cast<std::size_t>(j)]; }
};

/// Stepper bound to one configuration and lattice; precomputes the per-mode
/// decay and drift factors. Not safe for concurrent use.
class ExponentialEuler {
 public:
  ExponentialEuler(SchemeConfig config, LatticePtr lattice);

  const SchemeConfig &config() const { return config_; }
  const LatticePtr &lattice_ptr() const { return lattice_; }

  /// State at t_{j+1} from the state at t_j. The path must be at the
  /// stepper's (N, n, T).
  SpectralField step(const SpectralField &u, int j, const NoisePath &path);

  /// Throws std::invalid_argument unless the path matches (N, n, T).
  void check_path(const NoisePath &path) const;

 private:
  SchemeConfig config_;
  LatticePtr lattice_;
  GridTransform transform_;
  std::vector<double> decay_;
  std::vector<double> drift_;
};

/// One step as a free function; builds a stepper per call.
SpectralField step(const SpectralField &u, int j, const NoisePath &path, const SchemeConfig &config);

/// Iterate from Pi_N u_0 over n steps. The path must already be restricted
/// to (N, n).
Trajectory run(const SchemeConfig &config, const NoisePath &path);

/// The same algorithm at the reference level (N_ref, n_ref) of `path`; the
/// config's N and n are replaced by the path's.
Trajectory run_reference(SchemeConfig config, const NoisePath &path);

}  // namespace spde
