// Norms, dyadic (Littlewood-Paley) blocks, error metrics and rate fitting.
//
// Dyadic blocks use sharp annuli: block j >= 0 holds modes with
// 2^{j-1} < |k| <= 2^j, block -1 holds only k = 0 and is therefore empty for
// mean-zero fields. Sharp blocks give a norm equivalent to the smooth
// Littlewood-Paley one on bandlimited fields and reconstruct f exactly.
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "spde/grid_transform.hpp"
#include "spde/noise.hpp"
#include "spde/scheme.hpp"
#include "spde/torus_spectral.hpp"

namespace spde {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Sum in a fixed pairwise tree; the result depends only on the order of
/// `values`, and the rounding error grows as O(log n).
double pairwise_sum(std::span<const double> values);

/// sqrt(sum_k |c_k|^2).
double l2_norm(const SpectralField &f);

/// ||a - b||_{L^2} with the smaller field zero-extended to the larger lattice.
double l2_distance(const SpectralField &a, const SpectralField &b);

/// Block index j of a nonzero mode: the smallest j >= 0 with |k| <= 2^j.
int dyadic_index(Mode k);

/// Block bookkeeping for one lattice: j runs over -1..max_block.
struct DyadicPartition {
  int max_block = 0;
  std::vector<int> block_of;  // per mode, in lattice order

  static DyadicPartition of(const ModeLattice &lattice);
  /// Modes (lattice indices) in block j.
  std::vector<std::size_t> members(int j) const;
};

/// Delta_j f.
SpectralField dyadic_block(const SpectralField &f, int j);

/// (M^-2 sum |g|^p)^{1/p} on the grid, or max |g| for p = inf.
double grid_lp_norm(const PhysicalGrid &g, double p);

/// || (2^{j alpha} ||Delta_j f||_{L^p})_{j >= -1} ||_{l^q}; p, q in [1, inf].
/// Block L^p norms are taken on the lattice's physical grid.
double besov_norm(const SpectralField &f, double alpha, double p, double q);
double besov_norm(const SpectralField &f, double alpha, double p, double q, GridTransform &transform);

/// C^alpha = B^alpha_{inf,inf}.
inline double holder_norm(const SpectralField &f, double alpha) {
  return besov_norm(f, alpha, kInf, kInf);
}

/// max over shared grid times of ||a(t) - b(t)||_{L^2}. One step count must
/// divide the other; the coarser field is zero-extended to the finer lattice.
/// Throws if the horizons differ or neither step count divides the other.
double sup_error(const Trajectory &a, const Trajectory &b);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least squares of log(error) on log(level). Needs >= 3 points and strictly
/// positive inputs. R^2 is 1 when the errors are exactly constant.
RateFit fit_rate(std::span<const double> levels, std::span<const double> errors);

struct SampleStats {
  double mean = 0.0;
  double std_error = 0.0;  ///< sample standard deviation / sqrt(count); 0 if count < 2
  std::size_t count = 0;
};

SampleStats summarize(std::span<const double> samples);

/// Pair of time-grid indices (s, t) with s < t.
using TimePair = std::pair<int, int>;

struct HolderFit {
  double exponent = 0.0;  ///< slope / p
  RateFit fit;
  std::vector<double> lags;
  std::vector<double> moments;  ///< E ||U_t - U_s||^p_{C^alpha} per lag
};

/// Fit log E||U_t - U_s||^p_{C^alpha} against log|t - s| over an ensemble of
/// paths sharing one grid. Pairs are grouped by lag. Requires >= 4 distinct
/// lags, >= 100 (sample, pair) evaluations per lag and nonzero moments.
HolderFit time_holder_fit(std::span<const NoisePath> ensemble, double alpha, double p,
                          std::span<const TimePair> pairs);

/// Random field whose dyadic blocks each carry unit L^2 energy.
SpectralField equal_block_energy_field(LatticePtr lattice, std::uint64_t seed);

/// Slope of log ||P_t f||_{C^alpha} against log t.
RateFit smoothing_slope(const SpectralField &f, double alpha, std::span<const double> times);

}  // namespace spde
