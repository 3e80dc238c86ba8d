#include "glassey/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stencils.hpp"

namespace glassey::kernels::serial {

void derivative(std::span<const double> f, double h, std::span<double> out) {
  const double inv_2h = 1.0 / (2.0 * h);
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = detail::derivative_at(f, inv_2h, j);
}

void laplacian(std::span<const double> f, double h, int dim, std::span<double> out) {
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = detail::laplacian_at(f, h, dim, j);
}

double weighted_sum_sq(std::span<const double> f, std::span<const double> w) {
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) sum += w[j] * f[j] * f[j];
  return sum;
}

double weighted_dot(std::span<const double> f, std::span<const double> g,
                    std::span<const double> w) {
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) sum += w[j] * f[j] * g[j];
  return sum;
}

void power_nonlinearity(std::span<const double> v, std::span<const double> g, double a, double b,
                        double p, std::span<double> out) {
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = detail::nonlinearity_at(v[j], g[j], a, b, p);
}

double max_abs_pair(std::span<const double> x, std::span<const double> y) {
  double m = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::isnan(x[j]) || std::isnan(y[j])) return std::numeric_limits<double>::quiet_NaN();
    m = std::max({m, std::fabs(x[j]), std::fabs(y[j])});
  }
  return m;
}

void axpy(std::span<const double> x, double c, std::span<const double> k, std::span<double> out) {
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + c * k[j];
}

void rk4_update(std::span<double> x, double dt, std::span<const double> k1,
                std::span<const double> k2, std::span<const double> k3,
                std::span<const double> k4) {
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = detail::rk4_at(x[j], dt, k1[j], k2[j], k3[j], k4[j]);
}

}  // namespace glassey::kernels::serial
