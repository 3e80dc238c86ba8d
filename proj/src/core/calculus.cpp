#include "glassey/core/calculus.hpp"

#include "glassey/errors.hpp"
#include "glassey/kernels.hpp"

namespace glassey::core {

RadialField radial_derivative(const RadialField& f) {
  f.require_finite("radial_derivative");
  RadialField out = RadialField::zeros(f.grid());
  kernels::derivative(f.values(), f.grid().spacing(), out.values());
  return out;
}

RadialField radial_laplacian(const RadialField& f, int n) {
  require(n >= 2, "radial_laplacian: n must be >= 2");
  f.require_finite("radial_laplacian");
  RadialField out = RadialField::zeros(f.grid());
  kernels::laplacian(f.values(), f.grid().spacing(), n, out.values());
  return out;
}

}  // namespace glassey::core
