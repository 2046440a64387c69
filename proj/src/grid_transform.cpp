#include "spde/grid_transform.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace spde {

namespace {

std::mutex &planner_mutex() {
  static std::mutex m;
  return m;
}

// Position of mode k in the r2c half-spectrum of an M x M grid, together with
// whether the stored value must be conjugated to obtain c_k.
struct HalfIndex {
  std::size_t offset;
  bool conjugate;
};

HalfIndex half_index(Mode k, int m) {
  const int half = m / 2 + 1;
  bool conj = false;
  if (k.k2 < 0) {
    k = -k;
    conj = true;
  }
  const int row = k.k1 < 0 ? k.k1 + m : k.k1;
  return {static_cast<std::size_t>(row) * half + static_cast<std::size_t>(k.k2), conj};
}

}  // namespace

struct GridTransform::Plans {
  int m = 0;
  double *real = nullptr;
  fftw_complex *spectrum = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

GridTransform::GridTransform(LatticePtr lattice)
    : lattice_(std::move(lattice)), plans_(std::make_unique<Plans>()) {
  const int m = lattice_->grid_size();
  plans_->m = m;
  const std::size_t half = static_cast<std::size_t>(m / 2 + 1);
  std::lock_guard lock(planner_mutex());
  plans_->real = fftw_alloc_real(static_cast<std::size_t>(m) * m);
  plans_->spectrum = fftw_alloc_complex(static_cast<std::size_t>(m) * half);
  // FFTW_ESTIMATE picks plans deterministically, which keeps results
  // bit-reproducible across runs.
  plans_->forward =
      fftw_plan_dft_r2c_2d(m, m, plans_->real, plans_->spectrum, FFTW_ESTIMATE);
  plans_->backward =
      fftw_plan_dft_c2r_2d(m, m, plans_->spectrum, plans_->real, FFTW_ESTIMATE);
  if (plans_->forward == nullptr || plans_->backward == nullptr) {
    throw std::runtime_error("GridTransform: FFTW planning failed");
  }
}

GridTransform::~GridTransform() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plans_->forward);
  fftw_destroy_plan(plans_->backward);
  fftw_free(plans_->real);
  fftw_free(plans_->spectrum);
}

PhysicalGrid GridTransform::to_physical(const SpectralField &f) {
  if (!f.lattice().same_as(*lattice_)) {
    throw std::invalid_argument("to_physical: field lattice does not match transform");
  }
  const int m = plans_->m;
  const std::size_t half = static_cast<std::size_t>(m / 2 + 1);
  auto *spec = reinterpret_cast<Complex *>(plans_->spectrum);
  std::fill(spec, spec + static_cast<std::size_t>(m) * half, Complex{});
  const auto &lat = *lattice_;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const Mode &k = lat.mode(i);
    if (k.k2 < 0) continue;
    // Only k2 >= 0 is stored; for k2 == 0 both k and -k occupy column 0.
    spec[half_index(k, m).offset] = f[i];
  }
  fftw_execute(plans_->backward);
  PhysicalGrid g{m, std::vector<double>(plans_->real, plans_->real + static_cast<std::size_t>(m) * m)};
  return g;
}

SpectralField GridTransform::from_physical(const PhysicalGrid &g) {
  const int m = plans_->m;
  if (g.size != m || g.values.size() != static_cast<std::size_t>(m) * m) {
    throw std::invalid_argument("from_physical: grid size does not match lattice");
  }
  std::copy(g.values.begin(), g.values.end(), plans_->real);
  fftw_execute(plans_->forward);
  const auto *spec = reinterpret_cast<const Complex *>(plans_->spectrum);
  const double norm = 1.0 / (static_cast<double>(m) * m);
  SpectralField out(lattice_);
  const auto &lat = *lattice_;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (!lat.is_representative(i)) continue;
    const auto [offset, conj] = half_index(lat.mode(i), m);
    Complex c = spec[offset] * norm;
    if (conj) c = std::conj(c);
    out[i] = c;
    out[lat.negated(i)] = std::conj(c);
  }
  return out;
}

PhysicalGrid to_physical(const SpectralField &f) {
  GridTransform t(f.lattice_ptr());
  return t.to_physical(f);
}

SpectralField from_physical(const PhysicalGrid &g, LatticePtr lattice) {
  GridTransform t(std::move(lattice));
  return t.from_physical(g);
}

}  // namespace spde
