#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "glassey/kernels.hpp"
#include "stencils.hpp"

#ifdef GLASSEY_HAVE_OPENMP
#include <omp.h>
#endif

namespace glassey::kernels::parallel {
namespace {

// Below this many nodes a parallel region costs more than it saves.
constexpr std::ptrdiff_t kMinParallel = 4096;

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

template <typename BlockFn>
double blocked_sum(std::size_t n, BlockFn&& block_sum) {
  const auto blocks = static_cast<std::ptrdiff_t>(block_count(n));
  std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
#pragma omp parallel for schedule(static) if (static_cast<std::ptrdiff_t>(n) >= kMinParallel)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    partial[static_cast<std::size_t>(b)] = block_sum(lo, hi);
  }
  double sum = 0.0;
  for (double s : partial) sum += s;
  return sum;
}

}  // namespace

int max_threads() {
#ifdef GLASSEY_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void derivative(std::span<const double> f, double h, std::span<double> out) {
  const double inv_2h = 1.0 / (2.0 * h);
  const auto n = static_cast<std::ptrdiff_t>(f.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] = detail::derivative_at(f, inv_2h, static_cast<std::size_t>(j));
  }
}

void laplacian(std::span<const double> f, double h, int dim, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(f.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] = detail::laplacian_at(f, h, dim, static_cast<std::size_t>(j));
  }
}

double weighted_sum_sq(std::span<const double> f, std::span<const double> w) {
  return blocked_sum(f.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t j = lo; j < hi; ++j) s += w[j] * f[j] * f[j];
    return s;
  });
}

double weighted_dot(std::span<const double> f, std::span<const double> g,
                    std::span<const double> w) {
  return blocked_sum(f.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t j = lo; j < hi; ++j) s += w[j] * f[j] * g[j];
    return s;
  });
}

void power_nonlinearity(std::span<const double> v, std::span<const double> g, double a, double b,
                        double p, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    out[k] = detail::nonlinearity_at(v[k], g[k], a, b, p);
  }
}

double max_abs_pair(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const auto blocks = static_cast<std::ptrdiff_t>(block_count(n));
  std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
#pragma omp parallel for schedule(static) if (static_cast<std::ptrdiff_t>(n) >= kMinParallel)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double m = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
      if (std::isnan(x[j]) || std::isnan(y[j])) {
        m = std::numeric_limits<double>::quiet_NaN();
        break;
      }
      m = std::max({m, std::fabs(x[j]), std::fabs(y[j])});
    }
    partial[static_cast<std::size_t>(b)] = m;
  }
  double m = 0.0;
  for (double s : partial) {
    if (std::isnan(s)) return s;
    m = std::max(m, s);
  }
  return m;
}

void axpy(std::span<const double> x, double c, std::span<const double> k, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const auto i = static_cast<std::size_t>(j);
    out[i] = x[i] + c * k[i];
  }
}

void rk4_update(std::span<double> x, double dt, std::span<const double> k1,
                std::span<const double> k2, std::span<const double> k3,
                std::span<const double> k4) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const auto i = static_cast<std::size_t>(j);
    x[i] = detail::rk4_at(x[i], dt, k1[i], k2[i], k3[i], k4[i]);
  }
}

}  // namespace glassey::kernels::parallel
