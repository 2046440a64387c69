#include "spde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "spde/random.hpp"

namespace spde {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double l2_norm(const SpectralField &f) {
  std::vector<double> squares(f.coeffs().size());
  std::transform(f.coeffs().begin(), f.coeffs().end(), squares.begin(),
                 [](const Complex &c) { return std::norm(c); });
  return std::sqrt(pairwise_sum(squares));
}

double l2_distance(const SpectralField &a, const SpectralField &b) {
  const bool a_larger = a.lattice().cutoff() >= b.lattice().cutoff();
  const SpectralField &big = a_larger ? a : b;
  const SpectralField &small = a_larger ? b : a;
  const auto &lat = big.lattice();
  std::vector<double> squares(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    squares[i] = std::norm(big[i] - small.at(lat.mode(i)));
  }
  return std::sqrt(pairwise_sum(squares));
}

int dyadic_index(Mode k) {
  const int q = k.norm2();
  if (q == 0) return -1;
  int j = 0;
  long long bound = 1;  // 4^j
  while (q > bound) {
    bound *= 4;
    ++j;
  }
  return j;
}

DyadicPartition DyadicPartition::of(const ModeLattice &lattice) {
  DyadicPartition p;
  p.block_of.resize(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    p.block_of[i] = dyadic_index(lattice.mode(i));
    p.max_block = std::max(p.max_block, p.block_of[i]);
  }
  return p;
}

std::vector<std::size_t> DyadicPartition::members(int j) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < block_of.size(); ++i) {
    if (block_of[i] == j) out.push_back(i);
  }
  return out;
}

SpectralField dyadic_block(const SpectralField &f, int j) {
  SpectralField out(f.lattice_ptr());
  const auto &lat = f.lattice();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (dyadic_index(lat.mode(i)) == j) out[i] = f[i];
  }
  return out;
}

double grid_lp_norm(const PhysicalGrid &g, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("grid_lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : g.values) m = std::max(m, std::abs(v));
    return m;
  }
  std::vector<double> powers(g.values.size());
  std::transform(g.values.begin(), g.values.end(), powers.begin(),
                 [p](double v) { return std::pow(std::abs(v), p); });
  return std::pow(pairwise_sum(powers) / static_cast<double>(g.values.size()), 1.0 / p);
}

double besov_norm(const SpectralField &f, double alpha, double p, double q) {
  GridTransform transform(f.lattice_ptr());
  return besov_norm(f, alpha, p, q, transform);
}

double besov_norm(const SpectralField &f, double alpha, double p, double q, GridTransform &transform) {
  if (!(p >= 1.0) || !(q >= 1.0)) {
    throw std::invalid_argument("besov_norm: p and q must lie in [1, inf]");
  }
  const auto partition = DyadicPartition::of(f.lattice());
  std::vector<double> weighted;
  // Block -1 is empty on mean-zero fields and contributes 0.
  for (int j = 0; j <= partition.max_block; ++j) {
    SpectralField block(f.lattice_ptr());
    bool any = false;
    for (std::size_t i = 0; i < partition.block_of.size(); ++i) {
      if (partition.block_of[i] == j && f[i] != Complex{}) {
        block[i] = f[i];
        any = true;
      }
    }
    const double norm = any ? grid_lp_norm(transform.to_physical(block), p) : 0.0;
    weighted.push_back(std::pow(2.0, j * alpha) * norm);
  }
  if (std::isinf(q)) return *std::max_element(weighted.begin(), weighted.end());
  for (double &w : weighted) w = std::pow(w, q);
  return std::pow(pairwise_sum(weighted), 1.0 / q);
}

double sup_error(const Trajectory &a, const Trajectory &b) {
  if (a.config.horizon != b.config.horizon) {
    throw std::invalid_argument("sup_error: trajectories cover different horizons");
  }
  const bool a_coarse = a.steps() <= b.steps();
  const Trajectory &coarse = a_coarse ? a : b;
  const Trajectory &fine = a_coarse ? b : a;
  if (coarse.steps() < 1 || fine.steps() % coarse.steps() != 0) {
    throw std::invalid_argument("sup_error: trajectories share no common time grid");
  }
  const int stride = fine.steps() / coarse.steps();
  double worst = 0.0;
  for (int j = 0; j <= coarse.steps(); ++j) {
    worst = std::max(worst, l2_distance(coarse.at(j), fine.at(j * stride)));
  }
  return worst;
}

RateFit fit_rate(std::span<const double> levels, std::span<const double> errors) {
  if (levels.size() != errors.size()) {
    throw std::invalid_argument("fit_rate: levels and errors differ in length");
  }
  if (levels.size() < 3) throw std::invalid_argument("fit_rate: need at least 3 levels");
  const std::size_t n = levels.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(levels[i] > 0.0) || !(errors[i] > 0.0) || !std::isfinite(errors[i])) {
      throw std::invalid_argument("fit_rate: levels and errors must be positive and finite");
    }
    x[i] = std::log(levels[i]);
    y[i] = std::log(errors[i]);
  }
  const double mx = pairwise_sum(x) / n;
  const double my = pairwise_sum(y) / n;
  std::vector<double> sxy(n), sxx(n), syy(n);
  for (std::size_t i = 0; i < n; ++i) {
    sxy[i] = (x[i] - mx) * (y[i] - my);
    sxx[i] = (x[i] - mx) * (x[i] - mx);
    syy[i] = (y[i] - my) * (y[i] - my);
  }
  const double cxx = pairwise_sum(sxx);
  if (!(cxx > 0.0)) throw std::invalid_argument("fit_rate: levels must not all coincide");
  RateFit fit;
  fit.slope = pairwise_sum(sxy) / cxx;
  fit.intercept = my - fit.slope * mx;
  std::vector<double> resid(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    resid[i] = r * r;
  }
  const double ss_tot = pairwise_sum(syy);
  fit.r2 = ss_tot > 0.0 ? 1.0 - pairwise_sum(resid) / ss_tot : 1.0;
  return fit;
}

SampleStats summarize(std::span<const double> samples) {
  SampleStats s;
  s.count = samples.size();
  if (s.count == 0) return s;
  s.mean = pairwise_sum(samples) / static_cast<double>(s.count);
  if (s.count > 1) {
    std::vector<double> dev(s.count);
    for (std::size_t i = 0; i < s.count; ++i) dev[i] = (samples[i] - s.mean) * (samples[i] - s.mean);
    const double var = pairwise_sum(dev) / static_cast<double>(s.count - 1);
    s.std_error = std::sqrt(var / static_cast<double>(s.count));
  }
  return s;
}

HolderFit time_holder_fit(std::span<const NoisePath> ensemble, double alpha, double p,
                          std::span<const TimePair> pairs) {
  if (ensemble.empty()) throw std::invalid_argument("time_holder_fit: empty ensemble");
  if (!(p >= 1.0)) throw std::invalid_argument("time_holder_fit: p must be >= 1");
  const auto &first = ensemble.front();
  for (const auto &path : ensemble) {
    if (!path.lattice().same_as(first.lattice()) || path.steps() != first.steps() ||
        path.horizon() != first.horizon()) {
      throw std::invalid_argument("time_holder_fit: paths must share lattice and time grid");
    }
  }
  std::map<int, std::vector<TimePair>> by_lag;
  for (const auto &[s, t] : pairs) {
    if (s < 0 || t > first.steps() || s >= t) {
      throw std::invalid_argument("time_holder_fit: pairs need 0 <= s < t <= n");
    }
    by_lag[t - s].push_back({s, t});
  }
  if (by_lag.size() < 4) throw std::invalid_argument("time_holder_fit: need at least 4 lags");

  GridTransform transform(first.lattice_ptr());
  HolderFit out;
  for (const auto &[lag, members] : by_lag) {
    if (ensemble.size() * members.size() < 100) {
      throw std::invalid_argument("time_holder_fit: need at least 100 samples per lag");
    }
    std::vector<double> values;
    for (const auto &path : ensemble) {
      for (const auto &[s, t] : members) {
        SpectralField diff = path.at(t) - path.at(s);
        values.push_back(std::pow(besov_norm(diff, alpha, kInf, kInf, transform), p));
      }
    }
    const double moment = pairwise_sum(values) / static_cast<double>(values.size());
    if (!(moment > 0.0)) {
      throw std::invalid_argument("time_holder_fit: degenerate (zero) increments");
    }
    out.lags.push_back(first.time(lag));
    out.moments.push_back(moment);
  }
  out.fit = fit_rate(out.lags, out.moments);
  out.exponent = out.fit.slope / p;
  return out;
}

SpectralField equal_block_energy_field(LatticePtr lattice, std::uint64_t seed) {
  SpectralField f(lattice);
  const auto &lat = *lattice;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (!lat.is_representative(i)) continue;
    const Mode &k = lat.mode(i);
    const auto [re, im] = gaussian_pair(seed, k.k1, k.k2, 0);
    f[i] = Complex(re, im);
    f[lat.negated(i)] = Complex(re, -im);
  }
  const auto partition = DyadicPartition::of(lat);
  for (int j = 0; j <= partition.max_block; ++j) {
    const auto members = partition.members(j);
    std::vector<double> squares;
    for (std::size_t i : members) squares.push_back(std::norm(f[i]));
    const double energy = std::sqrt(pairwise_sum(squares));
    if (energy > 0.0) {
      for (std::size_t i : members) f[i] /= energy;
    }
  }
  return f;
}

RateFit smoothing_slope(const SpectralField &f, double alpha, std::span<const double> times) {
  GridTransform transform(f.lattice_ptr());
  std::vector<double> norms;
  for (double t : times) {
    norms.push_back(besov_norm(semigroup_apply(f, t), alpha, kInf, kInf, transform));
  }
  return fit_rate(times, norms);
}

}  // namespace spde
