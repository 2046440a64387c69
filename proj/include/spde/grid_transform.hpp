// Transforms between mode space and the M x M physical grid x_ab = (a/M, b/M).
#pragma once

#include <memory>
#include <vector>

#include "spde/torus_spectral.hpp"

namespace spde {

/// Real samples on the M x M grid, row-major with the first index along x1.
struct PhysicalGrid {
  int size = 0;
  std::vector<double> values;

  double &operator()(int a, int b) { return values[static_cast<std::size_t>(a) * size + b]; }
  double operator()(int a, int b) const { return values[static_cast<std::size_t>(a) * size + b]; }
};

/// Owns FFTW plans and buffers for one lattice's grid.
///
/// An instance is not safe for concurrent calls; give each worker its own.
/// Construction and destruction serialize on a process-wide planner lock.
class GridTransform {
 public:
  explicit GridTransform(LatticePtr lattice);
  ~GridTransform();
  GridTransform(const GridTransform &) = delete;
  GridTransform &operator=(const GridTransform &) = delete;

  const ModeLattice &lattice() const { return *lattice_; }

  /// Evaluate u(x_ab) = sum_k c_k exp(2 pi i k . x_ab).
  PhysicalGrid to_physical(const SpectralField &f);
  /// c_k = M^-2 sum_ab g(x_ab) exp(-2 pi i k . x_ab) for every lattice mode.
  /// The zero mode (grid mean) is discarded; modes beyond the lattice are
  /// dropped. The result is exactly Hermitian.
  SpectralField from_physical(const PhysicalGrid &g);

 private:
  struct Plans;
  LatticePtr lattice_;
  std::unique_ptr<Plans> plans_;
};

/// One-shot helpers; they build a GridTransform per call.
PhysicalGrid to_physical(const SpectralField &f);
SpectralField from_physical(const PhysicalGrid &g, LatticePtr lattice);

}  // namespace spde
