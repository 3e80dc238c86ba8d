#include "glassey/core/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "glassey/core/calculus.hpp"
#include "glassey/errors.hpp"
#include "glassey/kernels.hpp"

namespace glassey::core {
namespace {

using std::numbers::pi;

double bracket_pow(double r, double two_nu) {
  if (two_nu == 0.0) return 1.0;
  return std::pow(1.0 + r * r, 0.5 * two_nu);
}

void require_horizon(const Trajectory& traj, double horizon) {
  if (traj.empty()) throw HorizonMismatch("trajectory is empty");
  if (std::fabs(traj.start_time()) > 1e-12) {
    throw HorizonMismatch("trajectory must start at t = 0 for space-time norms");
  }
  if (traj.end_time() < horizon * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "trajectory ends at t = " << traj.end_time() << " before horizon T = " << horizon;
    throw HorizonMismatch(os.str());
  }
}

// Pointwise inputs of one LE evaluation: |d w|^2 and |w| at every node.
struct LeFields {
  std::vector<double> grad;  // |d w|
  std::vector<double> abs;   // |w|
};

template <typename MakeFields>
LocalEnergy local_energy(const Trajectory& traj, const WeightParams& w, MakeFields&& make) {
  const double horizon = w.horizon();
  require_horizon(traj, horizon);
  const RadialGrid& grid = traj.grid();
  const int n = traj.problem().n_dim;
  const double d = w.delta();
  const double dp = w.delta_prime();
  const bool full = n >= 3;

  const auto w_local = radial_weights(grid, n, -d, -0.5 + dp);
  const std::vector<double> w_hardy = full ? radial_weights(grid, n, -1.0 - d, -0.5 + dp)
                                           : std::vector<double>{};
  // n >= 3 evaluates r^{-d}(|dw| + |w|/r) as r^{-1-d}(r|dw| + |w|); n = 2 keeps |dw| only.
  const double mu_sum = full ? -1.0 - d : -d;
  const auto w_log = radial_weights(grid, n, mu_sum, -0.5 + d);
  const auto w_pow = radial_weights(grid, n, mu_sum, 0.0);

  // Only samples inside [0, T] (plus the one closing a partial interval) matter.
  const auto needed = std::min(
      traj.size(), static_cast<std::size_t>(std::ceil(horizon / traj.dt_sample() - 1e-9)) + 1);
  std::vector<double> i_local(needed), i_hardy(needed), i_log(needed), i_pow(needed);
  std::vector<double> combined(grid.size());
  for (std::size_t k = 0; k < needed; ++k) {
    const LeFields f = make(traj[k]);
    i_local[k] = kernels::weighted_sum_sq(f.grad, w_local);
    if (full) {
      i_hardy[k] = kernels::weighted_sum_sq(f.abs, w_hardy);
      for (std::size_t j = 0; j < combined.size(); ++j) {
        combined[j] = grid.node(j) * f.grad[j] + f.abs[j];
      }
      i_log[k] = kernels::weighted_sum_sq(combined, w_log);
      i_pow[k] = kernels::weighted_sum_sq(combined, w_pow);
    } else {
      i_log[k] = kernels::weighted_sum_sq(f.grad, w_log);
      i_pow[k] = kernels::weighted_sum_sq(f.grad, w_pow);
    }
  }

  const double dt = traj.dt_sample();
  LocalEnergy le;
  le.components[kLeLocal] = std::sqrt(time_trapezoid(i_local, dt, horizon));
  if (full) le.components[kLeHardy] = std::sqrt(time_trapezoid(i_hardy, dt, horizon));
  le.components[kLeLog] =
      std::sqrt(time_trapezoid(i_log, dt, horizon) / std::log(2.0 + horizon));
  le.components[kLePower] =
      std::pow(horizon, d - 0.5) * std::sqrt(time_trapezoid(i_pow, dt, horizon));
  for (const auto& [label, value] : le.components) le.total += value;
  return le;
}

LeFields first_order_fields(const WaveState& s) {
  s.u.require_finite("le_norm: u");
  s.v.require_finite("le_norm: v");
  const std::size_t m = s.u.size();
  std::vector<double> ur(m);
  kernels::derivative(s.u.values(), s.grid().spacing(), ur);
  LeFields f{std::vector<double>(m), std::vector<double>(m)};
  for (std::size_t j = 0; j < m; ++j) {
    f.grad[j] = std::hypot(s.v[j], ur[j]);
    f.abs[j] = std::fabs(s.u[j]);
  }
  return f;
}

LeFields second_order_fields(const WaveState& s, int n) {
  s.u.require_finite("le2_norm: u");
  s.v.require_finite("le2_norm: v");
  const std::size_t m = s.u.size();
  const double h = s.grid().spacing();
  std::vector<double> ur(m), urr(m), vr(m);
  kernels::derivative(s.u.values(), h, ur);
  kernels::derivative(ur, h, urr);
  kernels::derivative(s.v.values(), h, vr);
  LeFields f{std::vector<double>(m), std::vector<double>(m)};
  for (std::size_t j = 0; j < m; ++j) {
    // u_r / r -> u_rr(0) at the origin
    const double ur_over_r = j == 0 ? urr[0] : ur[j] / s.grid().node(j);
    f.grad[j] = std::sqrt(vr[j] * vr[j] + urr[j] * urr[j] + (n - 1) * ur_over_r * ur_over_r);
    f.abs[j] = std::fabs(ur[j]);
  }
  return f;
}

}  // namespace

double sphere_area(int n) {
  require(n >= 1, "sphere_area: n must be >= 1");
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * pi;
    case 3: return 4.0 * pi;
    case 4: return 2.0 * pi * pi;
    case 5: return 8.0 * pi * pi / 3.0;
    case 6: return pi * pi * pi;
    case 7: return 16.0 * pi * pi * pi / 15.0;
    case 8: return pi * pi * pi * pi / 3.0;
    default: return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
  }
}

std::vector<double> radial_weights(const RadialGrid& grid, int n, double mu, double nu) {
  require(n >= 2, "radial_weights: n must be >= 2");
  require(std::isfinite(mu) && std::isfinite(nu), "radial_weights: mu, nu must be finite");
  if (!(mu > -0.5 * n)) {
    std::ostringstream os;
    os << "weighted_l2: mu = " << mu << " <= -n/2 = " << -0.5 * n
       << " is not integrable at the origin";
    throw PreconditionViolation(os.str());
  }
  const double beta = 2.0 * mu + n - 1.0;
  const double two_nu = 2.0 * nu;
  const double area = sphere_area(n);
  const double h = grid.spacing();
  const std::size_t last = grid.size() - 1;

  std::vector<double> w(grid.size(), 0.0);
  if (beta >= 0.0) {
    for (std::size_t j = 1; j <= last; ++j) {
      const double r = grid.node(j);
      const double density = std::pow(r, beta) * bracket_pow(r, two_nu);
      w[j] = (j == last ? 0.5 : 1.0) * h * density;
    }
    if (beta == 0.0) w[0] = 0.5 * h;
  } else {
    // Product trapezoid: on each cell int r^beta * (linear interpolant of <r>^{2nu} f^2).
    // Plain trapezoid would only converge like h^{beta+2} near the origin.
    // In units of h: int_j^{j+1} x^beta dx and int_j^{j+1} x^{beta+1} dx.
    const double scale = std::pow(h, beta + 1.0);
    double p0 = 0.0, p1 = 0.0;  // j^{beta+1}, j^{beta+2}
    for (std::size_t j = 0; j < last; ++j) {
      const double x = static_cast<double>(j + 1);
      const double q0 = std::pow(x, beta + 1.0), q1 = q0 * x;
      const double m0 = (q0 - p0) / (beta + 1.0);
      const double m1 = (q1 - p1) / (beta + 2.0);
      w[j] += scale * ((x * m0 - m1) * bracket_pow(grid.node(j), two_nu));
      w[j + 1] += scale * ((m1 - (x - 1.0) * m0) * bracket_pow(grid.node(j + 1), two_nu));
      p0 = q0;
      p1 = q1;
    }
  }
  for (double& x : w) x *= area;
  return w;
}

double weighted_l2(const RadialField& f, int n, double mu, double nu) {
  f.require_finite("weighted_l2");
  const auto w = radial_weights(f.grid(), n, mu, nu);
  return std::sqrt(kernels::weighted_sum_sq(f.values(), w));
}

LambdaNorms lambda_norms(const RadialField& u0, const RadialField& u1, int n) {
  require(u0.grid() == u1.grid(), "lambda_norms: u0 and u1 must share one grid");
  u0.require_finite("lambda_norms: u0");
  u1.require_finite("lambda_norms: u1");
  const auto du0 = radial_derivative(u0);
  const auto lap0 = radial_laplacian(u0, n);
  const auto du1 = radial_derivative(u1);
  for (const auto* f : {&du0, &lap0, &du1}) f->require_finite("lambda_norms: derivative");
  const auto w = radial_weights(u0.grid(), n, 0.0, 0.0);
  auto norm = [&](const RadialField& f) { return std::sqrt(kernels::weighted_sum_sq(f.values(), w)); };
  return {norm(du0) + norm(u1), norm(lap0) + norm(du1)};
}

double sup_weighted(const RadialField& f, int n, double k) {
  f.require_finite("sup_weighted");
  double m = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double r = f.grid().node(j);
    double value;
    if (j == 0) {
      // r^k|f| is 0 at the origin for k > 0 and unbounded for k < 0
      if (k != 0.0) continue;
      value = std::fabs(f[0]);
    } else {
      value = std::pow(r, k) * std::fabs(f[j]);
    }
    m = std::max(m, value);
  }
  return std::sqrt(sphere_area(n)) * m;
}

double sup_trace_norm(const RadialField& f, int n, double s) {
  return sup_weighted(f, n, 0.5 * n - s);
}

EnergyNorms e_norms(const Trajectory& traj) {
  require(!traj.empty(), "e_norms: trajectory is empty");
  const int n = traj.problem().n_dim;
  const auto w = radial_weights(traj.grid(), n, 0.0, 0.0);
  const double h = traj.grid().spacing();
  std::vector<double> ur(traj.grid().size()), vr(ur.size()), lap(ur.size());
  EnergyNorms e{0.0, 0.0};
  for (const auto& s : traj.states()) {
    s.u.require_finite("e_norms: u");
    s.v.require_finite("e_norms: v");
    kernels::derivative(s.u.values(), h, ur);
    kernels::derivative(s.v.values(), h, vr);
    kernels::laplacian(s.u.values(), h, n, lap);
    const double first = kernels::weighted_sum_sq(s.v.values(), w) + kernels::weighted_sum_sq(ur, w);
    const double second = kernels::weighted_sum_sq(vr, w) + kernels::weighted_sum_sq(lap, w);
    e.e1 = std::max(e.e1, std::sqrt(first));
    e.e2 = std::max(e.e2, std::sqrt(second));
  }
  return e;
}

LocalEnergy le_norm(const Trajectory& traj, const WeightParams& w) {
  return local_energy(traj, w, first_order_fields);
}

LocalEnergy le2_norm(const Trajectory& traj, const WeightParams& w) {
  const int n = traj.problem().n_dim;
  return local_energy(traj, w, [n](const WaveState& s) { return second_order_fields(s, n); });
}

NormReport norm_report(const Trajectory& traj, const WeightParams& w) {
  const auto e = e_norms(traj);
  const auto le1 = le_norm(traj, w);
  const auto le2 = le2_norm(traj, w);
  return {e.e1, e.e2, le1.total, le2.total, le1.components};
}

std::array<double, 3> lestar_terms(const FieldHistory& forcing, const WeightParams& w, int n) {
  const double horizon = w.horizon();
  if (forcing.size() == 0 || forcing.end_time() < horizon * (1.0 - 1e-12)) {
    throw HorizonMismatch("lestar_upper: forcing history does not reach the horizon");
  }
  const double d = w.delta();
  const auto w1 = radial_weights(forcing.grid(), n, d, 0.5 - w.delta_prime());
  const auto w2 = radial_weights(forcing.grid(), n, d, 0.5 - d);
  const auto w3 = radial_weights(forcing.grid(), n, d, 0.0);
  std::vector<double> i1(forcing.size()), i2(forcing.size()), i3(forcing.size());
  for (std::size_t k = 0; k < forcing.size(); ++k) {
    forcing[k].require_finite("lestar_upper: forcing");
    i1[k] = kernels::weighted_sum_sq(forcing[k].values(), w1);
    i2[k] = kernels::weighted_sum_sq(forcing[k].values(), w2);
    i3[k] = kernels::weighted_sum_sq(forcing[k].values(), w3);
  }
  const double dt = forcing.dt_sample();
  return {std::sqrt(time_trapezoid(i1, dt, horizon)),
          std::sqrt(std::log(2.0 + horizon) * time_trapezoid(i2, dt, horizon)),
          std::pow(horizon, 0.5 - d) * std::sqrt(time_trapezoid(i3, dt, horizon))};
}

double lestar_upper(const FieldHistory& forcing, const WeightParams& w, int n) {
  const auto t = lestar_terms(forcing, w, n);
  return std::min({t[0], t[1], t[2]});
}

double time_trapezoid(std::span<const double> g, double dt, double horizon) {
  require(dt > 0.0 && horizon >= 0.0, "time_trapezoid: need dt > 0 and T >= 0");
  if (g.empty()) throw HorizonMismatch("time_trapezoid: no samples");
  const std::size_t intervals = g.size() - 1;
  const double covered = dt * static_cast<double>(intervals);
  if (covered < horizon * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "samples cover [0, " << covered << "] but the horizon is " << horizon;
    throw HorizonMismatch(os.str());
  }
  auto full = static_cast<std::size_t>(std::floor(horizon / dt * (1.0 + 1e-12)));
  full = std::min(full, intervals);
  double sum = 0.0;
  for (std::size_t k = 0; k < full; ++k) sum += 0.5 * dt * (g[k] + g[k + 1]);
  const double rest = horizon - dt * static_cast<double>(full);
  if (rest > 1e-12 * std::max(1.0, horizon) && full < intervals) {
    const double g_end = g[full] + (g[full + 1] - g[full]) * rest / dt;
    sum += 0.5 * rest * (g[full] + g_end);
  }
  return sum;
}

}  // namespace glassey::core
