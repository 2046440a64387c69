#include "spde/scheme.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace spde {

DriftVariant parse_drift_variant(const std::string &name) {
  if (name == "integrated") return DriftVariant::integrated;
  if (name == "literal") return DriftVariant::literal;
  throw std::invalid_argument("unknown drift variant '" + name + "'");
}

std::string to_string(DriftVariant variant) {
  return variant == DriftVariant::integrated ? "integrated" : "literal";
}

double drift_factor(double mu, double h, DriftVariant variant) {
  if (!(h > 0.0)) throw std::invalid_argument("drift_factor: h must be > 0");
  const double rate = mu * mu;
  if (variant == DriftVariant::literal) return h * std::exp(-h * rate);
  return -std::expm1(-h * rate) / rate;
}

double drift_factor(Mode k, double h, DriftVariant variant) {
  return drift_factor(eigenvalue(k), h, variant);
}

InitialProfile InitialProfile::parse(const std::string &name, const std::vector<double> &params) {
  if (name == "zero") {
    if (!params.empty()) throw std::invalid_argument("initial profile 'zero' takes no parameters");
    return zero();
  }
  if (name == "single_mode") {
    if (params.size() != 3) {
      throw std::invalid_argument("initial profile 'single_mode' takes k1, k2, amplitude");
    }
    const Mode k{static_cast<int>(params[0]), static_cast<int>(params[1])};
    if (k.k1 != params[0] || k.k2 != params[1] || k.norm2() == 0) {
      throw std::invalid_argument("initial profile 'single_mode' needs a nonzero integer mode");
    }
    return single(k, params[2]);
  }
  if (name == "smooth_bump") {
    if (params.empty() || params.size() > 2) {
      throw std::invalid_argument("initial profile 'smooth_bump' takes amplitude [, width]");
    }
    return smooth_bump(params[0], params.size() == 2 ? params[1] : 2.0);
  }
  throw std::invalid_argument("unknown initial profile '" + name + "'");
}

SpectralField InitialProfile::on(LatticePtr lattice) const {
  SpectralField f(lattice);
  switch (kind) {
    case Kind::zero:
      break;
    case Kind::single_mode: {
      if (mode.norm2() == 0) throw std::invalid_argument("single_mode: zero mode is excluded");
      // Modes beyond the cutoff are projected away.
      if (lattice->index_of(mode) >= 0) f = SpectralField::single_mode(lattice, mode, amplitude);
      break;
    }
    case Kind::smooth_bump: {
      if (!(width > 0.0)) throw std::invalid_argument("smooth_bump: width must be > 0");
      for (std::size_t i = 0; i < lattice->size(); ++i) {
        f[i] = amplitude * std::exp(-lattice->mode(i).norm2() / (2.0 * width * width));
      }
      break;
    }
  }
  return f;
}

std::string InitialProfile::to_string() const {
  char buf[128];
  switch (kind) {
    case Kind::zero:
      return "zero";
    case Kind::single_mode:
      std::snprintf(buf, sizeof buf, "single_mode(%d,%d,%.17g)", mode.k1, mode.k2, amplitude);
      return buf;
    case Kind::smooth_bump:
      std::snprintf(buf, sizeof buf, "smooth_bump(%.17g,%.17g)", amplitude, width);
      return buf;
  }
  return "zero";
}

void SchemeConfig::validate() const {
  if (cutoff < 1) throw std::invalid_argument("SchemeConfig: N must be >= 1");
  if (steps < 1) throw std::invalid_argument("SchemeConfig: n must be >= 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("SchemeConfig: T must be > 0");
  }
  if (!(sigma >= 0.0)) throw std::invalid_argument("SchemeConfig: sigma must be >= 0");
  if (!(oversample >= 1.0)) throw std::invalid_argument("SchemeConfig: oversample must be >= 1");
}

ExponentialEuler::ExponentialEuler(SchemeConfig config, LatticePtr lattice)
    : config_(std::move(config)), lattice_(std::move(lattice)), transform_(lattice_) {
  config_.validate();
  if (lattice_->cutoff() != config_.cutoff) {
    throw std::invalid_argument("ExponentialEuler: lattice cutoff differs from config N");
  }
  const double h = config_.step_size();
  decay_.resize(lattice_->size());
  drift_.resize(lattice_->size());
  for (std::size_t i = 0; i < lattice_->size(); ++i) {
    const double mu = lattice_->mu(i);
    decay_[i] = std::exp(-h * mu * mu);
    drift_[i] = drift_factor(mu, h, config_.drift);
  }
}

void ExponentialEuler::check_path(const NoisePath &path) const {
  if (!path.lattice().same_as(*lattice_) || path.steps() != config_.steps ||
      path.horizon() != config_.horizon) {
    throw std::invalid_argument("ExponentialEuler: noise path does not match (N, n, T)");
  }
}

SpectralField ExponentialEuler::step(const SpectralField &u, int j, const NoisePath &path) {
  check_path(path);
  if (!u.lattice().same_as(*lattice_)) {
    throw std::invalid_argument("ExponentialEuler: state lattice does not match");
  }
  if (j < 0 || j >= config_.steps) throw std::out_of_range("ExponentialEuler: step index");

  const auto now = path.slice(j);
  const auto next = path.slice(j + 1);
  const SpectralField g = eval_G(config_.nonlinearity, u, transform_);
  SpectralField out(lattice_);
  for (std::size_t i = 0; i < lattice_->size(); ++i) {
    out[i] = decay_[i] * u[i] + drift_[i] * g[i] + (next[i] - decay_[i] * now[i]);
  }
  return out;
}

SpectralField step(const SpectralField &u, int j, const NoisePath &path, const SchemeConfig &config) {
  ExponentialEuler stepper(config, path.lattice_ptr());
  return stepper.step(u, j, path);
}

Trajectory run(const SchemeConfig &config, const NoisePath &path) {
  ExponentialEuler stepper(config, path.lattice_ptr());
  stepper.check_path(path);
  Trajectory traj{config, {}};
  traj.states.reserve(static_cast<std::size_t>(config.steps) + 1);
  traj.states.push_back(config.initial.on(path.lattice_ptr()));
  for (int j = 0; j < config.steps; ++j) {
    traj.states.push_back(stepper.step(traj.states.back(), j, path));
  }
  return traj;
}

Trajectory run_reference(SchemeConfig config, const NoisePath &path) {
  config.cutoff = path.lattice().cutoff();
  config.steps = path.steps();
  return run(config, path);
}

}  // namespace spde
