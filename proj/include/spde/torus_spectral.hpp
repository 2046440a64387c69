// Fourier-mode bookkeeping for real, mean-zero fields on the unit torus
// T^2 = R^2 / Z^2, together with the biharmonic semigroup exp(-t Delta^2).
//
// Fields are expanded in the orthonormal basis e_k(x) = exp(2 pi i k.x), so
// that -Delta e_k = mu_k e_k with mu_k = 4 pi^2 |k|^2.  The L^2 norm of a field
// is the l^2 norm of its coefficient vector.
#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace spde {

using Complex = std::complex<double>;

/// Integer wave vector k = (k1, k2).
struct Mode {
  int k1 = 0;
  int k2 = 0;

  constexpr int norm2() const { return k1 * k1 + k2 * k2; }
  constexpr Mode operator-() const { return {-k1, -k2}; }
  constexpr auto operator<=>(const Mode &) const = default;
};

/// mu_k = 4 pi^2 |k|^2, the eigenvalue of -Delta at k. Throws for k = (0,0).
double eigenvalue(Mode k);

/// The truncated frequency set {k != 0 : |k| <= N} plus the size M of the
/// oversampled physical grid used for pointwise operations.
///
/// Modes are sorted lexicographically (k1, then k2).  Lattices are immutable
/// and shared through LatticePtr.
class ModeLattice {
 public:
  /// M is the smallest even integer >= oversample * (2N + 2).
  static std::shared_ptr<const ModeLattice> make(int cutoff, double oversample = 2.0);
  /// Explicit grid size; M must be even and >= 2N + 2.
  static std::shared_ptr<const ModeLattice> with_grid(int cutoff, int grid_size);

  int cutoff() const { return cutoff_; }
  int grid_size() const { return grid_size_; }
  /// Ratio M / (2N + 2); used to build sibling lattices with matching aliasing.
  double oversample() const { return static_cast<double>(grid_size_) / (2.0 * cutoff_ + 2.0); }

  std::size_t size() const { return modes_.size(); }
  std::span<const Mode> modes() const { return modes_; }
  const Mode &mode(std::size_t i) const { return modes_[i]; }
  double mu(std::size_t i) const { return mu_[i]; }

  /// Index of k in modes(), or -1 when |k| > N or k = 0.
  std::ptrdiff_t index_of(Mode k) const;
  /// Index of -modes()[i].
  std::size_t negated(std::size_t i) const { return negated_[i]; }
  /// One member of each {k, -k} pair: k2 > 0, or k2 == 0 and k1 > 0.
  bool is_representative(std::size_t i) const;

  bool same_as(const ModeLattice &other) const {
    return cutoff_ == other.cutoff_ && grid_size_ == other.grid_size_;
  }

 private:
  ModeLattice(int cutoff, int grid_size);

  int cutoff_;
  int grid_size_;
  std::vector<Mode> modes_;
  std::vector<double> mu_;
  std::vector<std::size_t> negated_;
  std::vector<std::ptrdiff_t> lookup_;  // (2N+1)^2 dense table
};

using LatticePtr = std::shared_ptr<const ModeLattice>;

/// Number of k in Z^2 \ {0} with |k| <= N, by direct counting.
std::size_t lattice_point_count(int cutoff);

/// Coefficients of a real mean-zero field on a ModeLattice.
///
/// The Hermitian pairing c[-k] = conj(c[k]) is an invariant; constructors that
/// accept raw coefficients check it.
class SpectralField {
 public:
  explicit SpectralField(LatticePtr lattice);
  SpectralField(LatticePtr lattice, std::vector<Complex> coeffs);

  static SpectralField zero(LatticePtr lattice) { return SpectralField(std::move(lattice)); }
  /// Field amplitude * (e_k + e_{-k}) for a real amplitude, or the Hermitian
  /// pair (a e_k + conj(a) e_{-k}) for complex a.
  static SpectralField single_mode(LatticePtr lattice, Mode k, Complex amplitude);

  const ModeLattice &lattice() const { return *lattice_; }
  const LatticePtr &lattice_ptr() const { return lattice_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> mutable_coeffs() { return coeffs_; }
  const Complex &operator[](std::size_t i) const { return coeffs_[i]; }
  Complex &operator[](std::size_t i) { return coeffs_[i]; }
  /// Coefficient at k, zero if k is outside the lattice.
  Complex at(Mode k) const;

  /// Largest |c[-k] - conj(c[k])| over the lattice.
  double hermitian_defect() const;

  SpectralField &operator+=(const SpectralField &other);
  SpectralField &operator-=(const SpectralField &other);
  SpectralField &operator*=(double scale);

 private:
  void require_same_lattice(const SpectralField &other) const;

  LatticePtr lattice_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField &b);
SpectralField operator-(SpectralField a, const SpectralField &b);
SpectralField operator*(double scale, SpectralField f);

/// Pi_{N'}: keep modes with |k| <= N'. The result lives on a lattice with cutoff
/// N' and the same oversampling ratio. Throws if N' > N or N' < 1.
SpectralField project(const SpectralField &f, int cutoff);

/// Copy f onto a larger (or equal) lattice, filling new modes with zero.
SpectralField zero_extend(const SpectralField &f, LatticePtr target);

/// P_t^N f: multiply each coefficient by exp(-t mu_k^2). Throws if t < 0.
SpectralField semigroup_apply(const SpectralField &f, double t);

/// Coefficients exp(-t mu_k^2) of the truncated kernel p_t^N. Throws if t <= 0.
SpectralField heat_kernel_coeffs(double t, LatticePtr lattice);

/// Convolution on the torus: coefficientwise product in the e_k basis.
SpectralField convolve(const SpectralField &kernel, const SpectralField &f);

}  // namespace spde
