// Exact sampling of the truncated stochastic convolution
//
//   U^N(t) = sum_{0<|k|<=N} int_0^t exp(-(t-s) mu_k^2) d beta_k(s) e_k
//
// on a uniform time grid. Each mode is an Ornstein-Uhlenbeck process with
// rate mu_k^2, advanced by its exact Gaussian transition, so there is no
// time-discretization error at grid times.
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "spde/torus_spectral.hpp"

namespace spde {

/// Values U_k(t_j), t_j = j T / steps, for every lattice mode.
class NoisePath {
 public:
  NoisePath(LatticePtr lattice, int steps, double horizon, double sigma, std::uint64_t seed,
            std::vector<Complex> values);

  const ModeLattice &lattice() const { return *lattice_; }
  const LatticePtr &lattice_ptr() const { return lattice_; }
  int steps() const { return steps_; }
  double horizon() const { return horizon_; }
  double sigma() const { return sigma_; }
  std::uint64_t seed() const { return seed_; }
  double time(int j) const { return horizon_ * static_cast<double>(j) / steps_; }

  /// Coefficients at t_j, in lattice order.
  std::span<const Complex> slice(int j) const;
  SpectralField at(int j) const;

  bool operator==(const NoisePath &other) const;

 private:
  LatticePtr lattice_;
  int steps_;
  double horizon_;
  double sigma_;
  std::uint64_t seed_;
  std::vector<Complex> values_;  // (steps + 1) x modes, time-major
};

/// Marginal variance E|U_k(t)|^2 = sigma^2 (1 - exp(-2 t mu^2)) / (2 mu^2).
double mode_variance(double t, double mu, double sigma);

/// Exact OU path on `lattice` with `steps` uniform steps over [0, horizon].
///
/// Innovations for the representative k of each {k, -k} pair at step j come
/// from gaussian_pair(seed, k1, k2, j), so a draw depends only on (seed, k, j)
/// and never on the lattice size.
NoisePath sample_ou_path(std::uint64_t seed, LatticePtr lattice, int steps, double horizon,
                         double sigma);

/// The same path seen at cutoff N and `steps` coarse steps. Values are copied,
/// not resampled. Throws unless N <= path cutoff and steps divides path steps.
NoisePath restrict(const NoisePath &path, int cutoff, int steps);

/// Q_N(t) = sigma^2 sum_{0<|k|<=N} (1 - exp(-2 t mu_k^2)) / (2 mu_k^2),
/// the expected squared L^2 norm of U^N(t).
double analytic_variance(double t, const ModeLattice &lattice, double sigma);

/// File name that identifies a path by (seed, N, steps, T, sigma).
std::string path_cache_name(std::uint64_t seed, int cutoff, int steps, double horizon,
                            double sigma);
/// Store the path as steps + 1 consecutive snapshot records.
std::filesystem::path write_path_cache(const std::filesystem::path &dir, const NoisePath &path);
/// Load a cached path if the file exists; returns false otherwise.
bool read_path_cache(const std::filesystem::path &dir, std::uint64_t seed, int cutoff, int steps,
                     double horizon, double sigma, NoisePath &out);

}  // namespace spde
