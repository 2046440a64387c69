// Bounded Lipschitz nonlinearities G : R -> R and their pseudo-spectral
// evaluation u |-> Pi_N G(u) in the mean-zero frame.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "spde/grid_transform.hpp"
#include "spde/torus_spectral.hpp"

namespace spde {

enum class NonlinearityKind { zero, constant, sine, tanh, rational };

/// One catalogue member. `parameter` is c for constant(c), a for sine(a) and
/// tanh(a); unused otherwise.
struct NonlinearitySpec {
  NonlinearityKind kind = NonlinearityKind::zero;
  double parameter = 0.0;

  static NonlinearitySpec zero() { return {}; }
  static NonlinearitySpec constant(double c) { return {NonlinearityKind::constant, c}; }
  static NonlinearitySpec sine(double a) { return {NonlinearityKind::sine, a}; }
  static NonlinearitySpec tanh(double a) { return {NonlinearityKind::tanh, a}; }
  static NonlinearitySpec rational() { return {NonlinearityKind::rational, 0.0}; }

  /// Parse "zero", "constant", "sine", "tanh" or "rational" with its
  /// parameter list (empty for zero and rational, one value otherwise).
  static NonlinearitySpec parse(const std::string &name, const std::vector<double> &params);

  double operator()(double u) const;
  /// sup |G|.
  double sup_norm() const;
  /// Name and parameter, e.g. "sine(1)".
  std::string to_string() const;
  std::string name() const;
};

/// Thrown when a pointwise evaluation meets a non-finite grid value.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sup |G'|, exact for every catalogue member.
double lipschitz_bound(const NonlinearitySpec &spec);

/// Pi_N G(u): evaluate G on the oversampled grid and transform back, dropping
/// the zero mode. `transform` must belong to f's lattice.
SpectralField eval_G(const NonlinearitySpec &spec, const SpectralField &f, GridTransform &transform);
SpectralField eval_G(const NonlinearitySpec &spec, const SpectralField &f);

}  // namespace spde
