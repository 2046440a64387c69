#include "spde/nonlinearity.hpp"

#include <cmath>
#include <cstdio>

namespace spde {

NonlinearitySpec NonlinearitySpec::parse(const std::string &name, const std::vector<double> &params) {
  auto want = [&](std::size_t count) {
    if (params.size() != count) {
      throw std::invalid_argument("nonlinearity '" + name + "' takes " + std::to_string(count) +
                                  " parameter(s)");
    }
  };
  if (name == "zero") {
    want(0);
    return zero();
  }
  if (name == "rational") {
    want(0);
    return rational();
  }
  if (name == "constant") {
    want(1);
    return constant(params[0]);
  }
  if (name == "sine") {
    want(1);
    return sine(params[0]);
  }
  if (name == "tanh") {
    want(1);
    return tanh(params[0]);
  }
  throw std::invalid_argument("unknown nonlinearity '" + name + "'");
}

double NonlinearitySpec::operator()(double u) const {
  switch (kind) {
    case NonlinearityKind::zero:
      return 0.0;
    case NonlinearityKind::constant:
      return parameter;
    case NonlinearityKind::sine:
      return std::sin(parameter * u);
    case NonlinearityKind::tanh:
      return std::tanh(parameter * u);
    case NonlinearityKind::rational:
      return u / (1.0 + u * u);
  }
  return 0.0;
}

double NonlinearitySpec::sup_norm() const {
  switch (kind) {
    case NonlinearityKind::zero:
      return 0.0;
    case NonlinearityKind::constant:
      return std::abs(parameter);
    case NonlinearityKind::sine:
    case NonlinearityKind::tanh:
      return parameter == 0.0 ? 0.0 : 1.0;
    case NonlinearityKind::rational:
      return 0.5;
  }
  return 0.0;
}

std::string NonlinearitySpec::name() const {
  switch (kind) {
    case NonlinearityKind::zero:
      return "zero";
    case NonlinearityKind::constant:
      return "constant";
    case NonlinearityKind::sine:
      return "sine";
    case NonlinearityKind::tanh:
      return "tanh";
    case NonlinearityKind::rational:
      return "rational";
  }
  return "zero";
}

std::string NonlinearitySpec::to_string() const {
  if (kind == NonlinearityKind::zero || kind == NonlinearityKind::rational) return name();
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.17g)", parameter);
  return name() + buf;
}

double lipschitz_bound(const NonlinearitySpec &spec) {
  switch (spec.kind) {
    case NonlinearityKind::zero:
    case NonlinearityKind::constant:
      return 0.0;
    case NonlinearityKind::sine:
    case NonlinearityKind::tanh:
      return std::abs(spec.parameter);
    case NonlinearityKind::rational:
      return 1.0;  // |(1 - u^2) / (1 + u^2)^2| peaks at u = 0
  }
  return 0.0;
}

SpectralField eval_G(const NonlinearitySpec &spec, const SpectralField &f, GridTransform &transform) {
  // zero and constant(c) have no non-constant part.
  if (spec.kind == NonlinearityKind::zero || spec.kind == NonlinearityKind::constant) {
    return SpectralField::zero(f.lattice_ptr());
  }
  PhysicalGrid grid = transform.to_physical(f);
  for (double &v : grid.values) {
    if (!std::isfinite(v)) {
      throw NumericalError("eval_G: non-finite state value on the physical grid");
    }
    v = spec(v);
  }
  return transform.from_physical(grid);
}

SpectralField eval_G(const NonlinearitySpec &spec, const SpectralField &f) {
  GridTransform transform(f.lattice_ptr());
  return eval_G(spec, f, transform);
}

}  // namespace spde
