#pragma once

// Per-node stencil arithmetic shared by the serial and parallel kernels so
// both produce bit-identical nodal values.

#include <cstddef>
#include <span>

#include "glassey/kernels.hpp"

namespace glassey::kernels::detail {

inline double derivative_at(std::span<const double> f, double inv_2h, std::size_t j) {
  const std::size_t last = f.size() - 1;
  if (j == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv_2h;
  if (j == last) return (3.0 * f[last] - 4.0 * f[last - 1] + f[last - 2]) * inv_2h;
  return (f[j + 1] - f[j - 1]) * inv_2h;
}

inline double laplacian_at(std::span<const double> f, double h, int dim, std::size_t j) {
  const std::size_t last = f.size() - 1;
  const double inv_h2 = 1.0 / (h * h);
  if (j == 0) {
    // even extension f(-h) = f(h), Laplacian -> dim * f''(0)
    return dim * 2.0 * (f[1] - f[0]) * inv_h2;
  }
  if (j == last) {
    const double d2 = (2.0 * f[last] - 5.0 * f[last - 1] + 4.0 * f[last - 2] - f[last - 3]) * inv_h2;
    const double d1 = (3.0 * f[last] - 4.0 * f[last - 1] + f[last - 2]) / (2.0 * h);
    return d2 + (dim - 1) * d1 / (static_cast<double>(last) * h);
  }
  const double r = static_cast<double>(j) * h;
  const double d2 = (f[j + 1] - 2.0 * f[j] + f[j - 1]) * inv_h2;
  const double d1 = (f[j + 1] - f[j - 1]) / (2.0 * h);
  return d2 + (dim - 1) * d1 / r;
}

inline double rk4_at(double x, double dt, double k1, double k2, double k3, double k4) {
  return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// A zero coefficient drops its term, so 0 * inf never produces NaN.
inline double nonlinearity_at(double v, double g, double a, double b, double p) {
  double out = 0.0;
  if (a != 0.0) out += a * abs_pow(v, p);
  if (b != 0.0) out += b * abs_pow(g, p);
  return out;
}

}  // namespace glassey::kernels::detail
