#include "spde/torus_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace spde {

double eigenvalue(Mode k) {
  if (k.norm2() == 0) {
    throw std::invalid_argument("eigenvalue: the zero mode is excluded");
  }
  return 4.0 * std::numbers::pi * std::numbers::pi * static_cast<double>(k.norm2());
}

std::size_t lattice_point_count(int cutoff) {
  std::size_t count = 0;
  for (int a = -cutoff; a <= cutoff; ++a) {
    for (int b = -cutoff; b <= cutoff; ++b) {
      if ((a != 0 || b != 0) && a * a + b * b <= cutoff * cutoff) ++count;
    }
  }
  return count;
}

ModeLattice::ModeLattice(int cutoff, int grid_size) : cutoff_(cutoff), grid_size_(grid_size) {
  const int side = 2 * cutoff + 1;
  lookup_.assign(static_cast<std::size_t>(side) * side, -1);
  // Nested loops in (k1, k2) order produce the lexicographic ordering directly.
  for (int a = -cutoff; a <= cutoff; ++a) {
    for (int b = -cutoff; b <= cutoff; ++b) {
      const Mode k{a, b};
      if (k.norm2() == 0 || k.norm2() > cutoff * cutoff) continue;
      lookup_[static_cast<std::size_t>(a + cutoff) * side + (b + cutoff)] =
          static_cast<std::ptrdiff_t>(modes_.size());
      modes_.push_back(k);
      mu_.push_back(eigenvalue(k));
    }
  }
  negated_.resize(modes_.size());
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    negated_[i] = static_cast<std::size_t>(index_of(-modes_[i]));
  }
}

std::shared_ptr<const ModeLattice> ModeLattice::make(int cutoff, double oversample) {
  if (cutoff < 1) {
    throw std::invalid_argument("ModeLattice: cutoff N must be >= 1");
  }
  if (!(oversample >= 1.0) || !std::isfinite(oversample)) {
    throw std::invalid_argument("ModeLattice: oversample must be >= 1");
  }
  // Guard against 2.0000000001 * 6 rounding up to the next integer.
  int m = static_cast<int>(std::ceil(oversample * (2.0 * cutoff + 2.0) - 1e-9));
  if (m % 2 != 0) ++m;
  return with_grid(cutoff, m);
}

std::shared_ptr<const ModeLattice> ModeLattice::with_grid(int cutoff, int grid_size) {
  if (cutoff < 1) {
    throw std::invalid_argument("ModeLattice: cutoff N must be >= 1");
  }
  if (grid_size < 2 * cutoff + 2 || grid_size % 2 != 0) {
    throw std::invalid_argument("ModeLattice: grid size must be even and >= 2N+2, got " +
                                std::to_string(grid_size));
  }
  return std::shared_ptr<const ModeLattice>(new ModeLattice(cutoff, grid_size));
}

std::ptrdiff_t ModeLattice::index_of(Mode k) const {
  if (std::abs(k.k1) > cutoff_ || std::abs(k.k2) > cutoff_) return -1;
  const int side = 2 * cutoff_ + 1;
  return lookup_[static_cast<std::size_t>(k.k1 + cutoff_) * side + (k.k2 + cutoff_)];
}

bool ModeLattice::is_representative(std::size_t i) const {
  const Mode &k = modes_[i];
  return k.k2 > 0 || (k.k2 == 0 && k.k1 > 0);
}

SpectralField::SpectralField(LatticePtr lattice)
    : lattice_(std::move(lattice)), coeffs_(lattice_->size(), Complex{}) {}

SpectralField::SpectralField(LatticePtr lattice, std::vector<Complex> coeffs)
    : lattice_(std::move(lattice)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != lattice_->size()) {
    throw std::invalid_argument("SpectralField: coefficient count does not match lattice");
  }
  double scale = 1.0;
  for (const auto &c : coeffs_) scale = std::max(scale, std::abs(c));
  if (hermitian_defect() > 1e-12 * scale) {
    throw std::invalid_argument("SpectralField: coefficients are not Hermitian-symmetric");
  }
}

SpectralField SpectralField::single_mode(LatticePtr lattice, Mode k, Complex amplitude) {
  SpectralField f(std::move(lattice));
  const auto i = f.lattice().index_of(k);
  if (i < 0) {
    throw std::invalid_argument("single_mode: mode outside the lattice");
  }
  f.coeffs_[static_cast<std::size_t>(i)] = amplitude;
  f.coeffs_[f.lattice().negated(static_cast<std::size_t>(i))] = std::conj(amplitude);
  return f;
}

Complex SpectralField::at(Mode k) const {
  const auto i = lattice_->index_of(k);
  return i < 0 ? Complex{} : coeffs_[static_cast<std::size_t>(i)];
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    worst = std::max(worst, std::abs(coeffs_[lattice_->negated(i)] - std::conj(coeffs_[i])));
  }
  return worst;
}

void SpectralField::require_same_lattice(const SpectralField &other) const {
  if (!lattice_->same_as(*other.lattice_)) {
    throw std::invalid_argument("SpectralField: lattice mismatch");
  }
}

SpectralField &SpectralField::operator+=(const SpectralField &other) {
  require_same_lattice(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField &SpectralField::operator-=(const SpectralField &other) {
  require_same_lattice(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField &SpectralField::operator*=(double scale) {
  for (auto &c : coeffs_) c *= scale;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField &b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField &b) { return a -= b; }
SpectralField operator*(double scale, SpectralField f) { return f *= scale; }

SpectralField project(const SpectralField &f, int cutoff) {
  const auto &src = f.lattice();
  if (cutoff < 1 || cutoff > src.cutoff()) {
    throw std::invalid_argument("project: target cutoff must lie in [1, N]");
  }
  if (cutoff == src.cutoff()) return f;
  auto target = ModeLattice::make(cutoff, src.oversample());
  SpectralField out(target);
  for (std::size_t i = 0; i < target->size(); ++i) {
    out[i] = f[static_cast<std::size_t>(src.index_of(target->mode(i)))];
  }
  return out;
}

SpectralField zero_extend(const SpectralField &f, LatticePtr target) {
  if (target->cutoff() < f.lattice().cutoff()) {
    throw std::invalid_argument("zero_extend: target lattice is smaller than the source");
  }
  SpectralField out(target);
  const auto &src = f.lattice();
  for (std::size_t i = 0; i < src.size(); ++i) {
    out[static_cast<std::size_t>(target->index_of(src.mode(i)))] = f[i];
  }
  return out;
}

SpectralField semigroup_apply(const SpectralField &f, double t) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("semigroup_apply: t must be >= 0");
  }
  SpectralField out = f;
  if (t == 0.0) return out;
  const auto &lat = f.lattice();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    out[i] *= std::exp(-t * lat.mu(i) * lat.mu(i));
  }
  return out;
}

SpectralField heat_kernel_coeffs(double t, LatticePtr lattice) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("heat_kernel_coeffs: t must be > 0");
  }
  SpectralField kernel(lattice);
  for (std::size_t i = 0; i < lattice->size(); ++i) {
    kernel[i] = std::exp(-t * lattice->mu(i) * lattice->mu(i));
  }
  return kernel;
}

SpectralField convolve(const SpectralField &kernel, const SpectralField &f) {
  if (!kernel.lattice().same_as(f.lattice())) {
    throw std::invalid_argument("convolve: lattice mismatch");
  }
  SpectralField out = f;
  for (std::size_t i = 0; i < out.lattice().size(); ++i) out[i] *= kernel[i];
  return out;
}

}  // namespace spde
