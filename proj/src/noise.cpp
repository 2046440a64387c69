#include "spde/noise.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "spde/random.hpp"
#include "spde/snapshot_io.hpp"

namespace spde {

NoisePath::NoisePath(LatticePtr lattice, int steps, double horizon, double sigma,
                     std::uint64_t seed, std::vector<Complex> values)
    : lattice_(std::move(lattice)),
      steps_(steps),
      horizon_(horizon),
      sigma_(sigma),
      seed_(seed),
      values_(std::move(values)) {
  if (steps_ < 1 || !(horizon_ > 0.0)) {
    throw std::invalid_argument("NoisePath: need steps >= 1 and horizon > 0");
  }
  if (values_.size() != static_cast<std::size_t>(steps_ + 1) * lattice_->size()) {
    throw std::invalid_argument("NoisePath: value count does not match grid");
  }
}

std::span<const Complex> NoisePath::slice(int j) const {
  if (j < 0 || j > steps_) throw std::out_of_range("NoisePath: time index out of range");
  const std::size_t modes = lattice_->size();
  return std::span<const Complex>(values_).subspan(static_cast<std::size_t>(j) * modes, modes);
}

SpectralField NoisePath::at(int j) const {
  const auto s = slice(j);
  SpectralField f(lattice_);
  std::copy(s.begin(), s.end(), f.mutable_coeffs().begin());
  return f;
}

bool NoisePath::operator==(const NoisePath &other) const {
  return lattice_->same_as(*other.lattice_) && steps_ == other.steps_ &&
         horizon_ == other.horizon_ && sigma_ == other.sigma_ && seed_ == other.seed_ &&
         values_ == other.values_;
}

double mode_variance(double t, double mu, double sigma) {
  const double rate = mu * mu;
  return sigma * sigma * (-std::expm1(-2.0 * t * rate)) / (2.0 * rate);
}

NoisePath sample_ou_path(std::uint64_t seed, LatticePtr lattice, int steps, double horizon,
                         double sigma) {
  if (steps < 1 || !(horizon > 0.0)) {
    throw std::invalid_argument("sample_ou_path: need steps >= 1 and horizon > 0");
  }
  const auto &lat = *lattice;
  const std::size_t modes = lat.size();
  const double dt = horizon / steps;

  std::vector<double> decay(modes);
  std::vector<double> innovation_sd(modes);  // per real/imaginary component
  for (std::size_t i = 0; i < modes; ++i) {
    const double rate = lat.mu(i) * lat.mu(i);
    decay[i] = std::exp(-dt * rate);
    innovation_sd[i] = std::sqrt(0.5 * mode_variance(dt, lat.mu(i), sigma));
  }

  std::vector<Complex> values(static_cast<std::size_t>(steps + 1) * modes, Complex{});
  for (int j = 0; j < steps; ++j) {
    const Complex *prev = values.data() + static_cast<std::size_t>(j) * modes;
    Complex *next = values.data() + static_cast<std::size_t>(j + 1) * modes;
    for (std::size_t i = 0; i < modes; ++i) {
      if (!lat.is_representative(i)) continue;
      const Mode &k = lat.mode(i);
      const auto [re, im] = gaussian_pair(seed, k.k1, k.k2, static_cast<std::uint64_t>(j));
      const Complex value = decay[i] * prev[i] + innovation_sd[i] * Complex(re, im);
      next[i] = value;
      next[lat.negated(i)] = std::conj(value);
    }
  }
  return NoisePath(std::move(lattice), steps, horizon, sigma, seed, std::move(values));
}

NoisePath restrict(const NoisePath &path, int cutoff, int steps) {
  const auto &src = path.lattice();
  if (cutoff < 1 || cutoff > src.cutoff()) {
    throw std::invalid_argument("restrict: cutoff must lie in [1, N_ref]");
  }
  if (steps < 1 || path.steps() % steps != 0) {
    throw std::invalid_argument("restrict: coarse step count must divide the fine step count");
  }
  auto target = cutoff == src.cutoff() ? path.lattice_ptr()
                                       : ModeLattice::make(cutoff, src.oversample());
  std::vector<std::size_t> source_index(target->size());
  for (std::size_t i = 0; i < target->size(); ++i) {
    source_index[i] = static_cast<std::size_t>(src.index_of(target->mode(i)));
  }
  const int stride = path.steps() / steps;
  std::vector<Complex> values;
  values.reserve(static_cast<std::size_t>(steps + 1) * target->size());
  for (int j = 0; j <= steps; ++j) {
    const auto fine = path.slice(j * stride);
    for (std::size_t i : source_index) values.push_back(fine[i]);
  }
  return NoisePath(std::move(target), steps, path.horizon(), path.sigma(), path.seed(),
                   std::move(values));
}

double analytic_variance(double t, const ModeLattice &lattice, double sigma) {
  if (!(t >= 0.0)) throw std::invalid_argument("analytic_variance: t must be >= 0");
  double total = 0.0;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    total += mode_variance(t, lattice.mu(i), sigma);
  }
  return total;
}

std::string path_cache_name(std::uint64_t seed, int cutoff, int steps, double horizon,
                            double sigma) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "ou_seed%llu_N%d_n%d_T%.17g_sigma%.17g.bin",
                static_cast<unsigned long long>(seed), cutoff, steps, horizon, sigma);
  return buf;
}

std::filesystem::path write_path_cache(const std::filesystem::path &dir, const NoisePath &path) {
  std::filesystem::create_directories(dir);
  const auto file = dir / path_cache_name(path.seed(), path.lattice().cutoff(), path.steps(),
                                          path.horizon(), path.sigma());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("write_path_cache: cannot open " + file.string());
  for (int j = 0; j <= path.steps(); ++j) write_snapshot(out, path.at(j));
  return file;
}

bool read_path_cache(const std::filesystem::path &dir, std::uint64_t seed, int cutoff, int steps,
                     double horizon, double sigma, NoisePath &out) {
  const auto file = dir / path_cache_name(seed, cutoff, steps, horizon, sigma);
  std::ifstream in(file, std::ios::binary);
  if (!in) return false;
  const auto slices = read_snapshot_sequence(in);
  if (slices.size() != static_cast<std::size_t>(steps + 1)) {
    throw std::runtime_error("read_path_cache: wrong number of time slices in " + file.string());
  }
  const auto lattice = slices.front().lattice_ptr();
  std::vector<Complex> values;
  values.reserve(slices.size() * lattice->size());
  for (const auto &s : slices) {
    if (!s.lattice().same_as(*lattice)) {
      throw std::runtime_error("read_path_cache: inconsistent lattices in " + file.string());
    }
    values.insert(values.end(), s.coeffs().begin(), s.coeffs().end());
  }
  out = NoisePath(lattice, steps, horizon, sigma, seed, std::move(values));
  return true;
}

}  // namespace spde
