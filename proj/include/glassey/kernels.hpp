#pragma once

// Nodal kernels on uniform radial grids r_j = j*h, j = 0..N.
//
// `serial` is the reference implementation and is what the tests compare
// against. `parallel` runs the same arithmetic under OpenMP; elementwise
// kernels are bit-identical to the serial ones, reductions sum fixed-size
// blocks in index order so their result does not depend on the thread count.
// The unqualified functions dispatch to `parallel` when OpenMP is enabled.

#include <cstddef>
#include <span>

namespace glassey::kernels {

/// Block length used by the deterministic parallel reductions.
inline constexpr std::size_t kReductionBlock = 2048;

namespace serial {

/// Centered first derivative; second-order one-sided at both ends.
void derivative(std::span<const double> f, double h, std::span<double> out);

/// f'' + (dim-1)/r f'. r = 0 uses dim*f''(0) with the even extension
/// f(-h) = f(h); r = r_max uses second-order one-sided stencils.
void laplacian(std::span<const double> f, double h, int dim, std::span<double> out);

/// sum_j w_j f_j^2
double weighted_sum_sq(std::span<const double> f, std::span<const double> w);

/// sum_j w_j f_j g_j
double weighted_dot(std::span<const double> f, std::span<const double> g,
                    std::span<const double> w);

/// out_j = a|v_j|^p + b|g_j|^p with 0^p = 0; a zero coefficient drops its term.
void power_nonlinearity(std::span<const double> v, std::span<const double> g, double a, double b,
                        double p, std::span<double> out);

/// max_j max(|x_j|, |y_j|); NaN if any entry is NaN.
double max_abs_pair(std::span<const double> x, std::span<const double> y);

/// out = x + c*k
void axpy(std::span<const double> x, double c, std::span<const double> k, std::span<double> out);

/// x += dt/6 (k1 + 2 k2 + 2 k3 + k4)
void rk4_update(std::span<double> x, double dt, std::span<const double> k1,
                std::span<const double> k2, std::span<const double> k3,
                std::span<const double> k4);

}  // namespace serial

namespace parallel {

void derivative(std::span<const double> f, double h, std::span<double> out);
void laplacian(std::span<const double> f, double h, int dim, std::span<double> out);
double weighted_sum_sq(std::span<const double> f, std::span<const double> w);
double weighted_dot(std::span<const double> f, std::span<const double> g,
                    std::span<const double> w);
void power_nonlinearity(std::span<const double> v, std::span<const double> g, double a, double b,
                        double p, std::span<double> out);
double max_abs_pair(std::span<const double> x, std::span<const double> y);
void axpy(std::span<const double> x, double c, std::span<const double> k, std::span<double> out);
void rk4_update(std::span<double> x, double dt, std::span<const double> k1,
                std::span<const double> k2, std::span<const double> k3,
                std::span<const double> k4);

/// Threads available to the parallel kernels (1 without OpenMP).
int max_threads();

}  // namespace parallel

#ifdef GLASSEY_HAVE_OPENMP
namespace active = parallel;
#else
namespace active = serial;
#endif

using active::axpy;
using active::derivative;
using active::laplacian;
using active::max_abs_pair;
using active::power_nonlinearity;
using active::rk4_update;
using active::weighted_dot;
using active::weighted_sum_sq;

/// |x|^p as exp(p ln|x|), with 0^p = 0.
inline double abs_pow(double x, double p);

}  // namespace glassey::kernels

#include <cmath>

namespace glassey::kernels {
inline double abs_pow(double x, double p) {
  const double ax = std::fabs(x);
  if (ax == 0.0) return 0.0;
  return std::exp(p * std::log(ax));
}
}  // namespace glassey::kernels
