#include "glassey/solver/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "glassey/core/norms.hpp"
#include "glassey/errors.hpp"
#include "glassey/kernels.hpp"

namespace glassey::solver {
namespace {

using core::RadialField;
using core::RadialGrid;

struct StepPlan {
  long long steps;
  int stride;
  double dt;
};

StepPlan plan_steps(const RadialGrid& grid, double t_end, const EvolveOptions& options) {
  require(std::isfinite(options.cfl) && options.cfl > 0.0, "evolve: cfl must be positive");
  require(options.sample_stride >= 1, "evolve: sample_stride must be >= 1");
  require(std::isfinite(t_end) && t_end >= 0.0, "evolve: t_end must be >= 0");
  const double dt_nominal = options.cfl * grid.spacing();
  if (dt_nominal < 1e-12) throw StepUnderflow("evolve: time step below 1e-12");
  if (t_end == 0.0) return {0, options.sample_stride, dt_nominal};
  const auto samples =
      static_cast<long long>(std::ceil(t_end / (dt_nominal * options.sample_stride) - 1e-9));
  const long long steps = std::max(1LL, samples) * options.sample_stride;
  const double dt = t_end / static_cast<double>(steps);
  if (dt < 1e-12) throw StepUnderflow("evolve: time step below 1e-12");
  return {steps, options.sample_stride, dt};
}

// Right-hand side of (u, v)' = (v, Lap u + N[u] + F) with the outer node clamped.
class WaveOperator {
 public:
  WaveOperator(const core::ProblemSpec& spec, const RadialGrid& grid, const Forcing* forcing,
               bool linear_only)
      : spec_(spec),
        h_(grid.spacing()),
        forcing_(forcing),
        nonlinear_(!linear_only && (spec.a != 0.0 || spec.b != 0.0)),
        ur_(grid.size()),
        work_(grid.size()) {}

  void operator()(double t, std::span<const double> u, std::span<const double> v,
                  std::span<double> du, std::span<double> dv) {
    const std::size_t m = u.size();
    std::copy(v.begin(), v.end(), du.begin());
    kernels::laplacian(u, h_, spec_.n_dim, dv);
    if (nonlinear_) {
      kernels::derivative(u, h_, ur_);
      kernels::power_nonlinearity(v, ur_, spec_.a, spec_.b, spec_.p, work_);
      kernels::axpy(dv, 1.0, work_, dv);
    }
    if (forcing_ != nullptr) {
      forcing_->eval(t, work_);
      kernels::axpy(dv, 1.0, work_, dv);
    }
    du[m - 1] = 0.0;
    dv[m - 1] = 0.0;
  }

 private:
  const core::ProblemSpec& spec_;
  double h_;
  const Forcing* forcing_;
  bool nonlinear_;
  std::vector<double> ur_;
  std::vector<double> work_;
};

}  // namespace

std::string_view to_string(SolveStatus status) {
  return status == SolveStatus::completed ? "completed" : "blew_up";
}

double sample_interval(const RadialGrid& grid, double t_end, const EvolveOptions& options) {
  const auto plan = plan_steps(grid, t_end, options);
  return plan.dt * plan.stride;
}

RadialField nonlinearity(const core::WaveState& state, const core::ProblemSpec& spec) {
  spec.validate();
  state.u.require_finite("nonlinearity: u");
  state.v.require_finite("nonlinearity: v");
  const auto& grid = state.grid();
  std::vector<double> ur(grid.size());
  kernels::derivative(state.u.values(), grid.spacing(), ur);
  RadialField out = RadialField::zeros(grid);
  kernels::power_nonlinearity(state.v.values(), ur, spec.a, spec.b, spec.p, out.values());
  return out;
}

double energy(const core::WaveState& state, int n) {
  state.u.require_finite("energy: u");
  state.v.require_finite("energy: v");
  const auto& grid = state.grid();
  const auto w = core::radial_weights(grid, n, 0.0, 0.0);
  std::vector<double> ur(grid.size());
  kernels::derivative(state.u.values(), grid.spacing(), ur);
  return 0.5 * (kernels::weighted_sum_sq(state.v.values(), w) + kernels::weighted_sum_sq(ur, w));
}

SolveOutcome evolve(const core::ProblemSpec& spec, const InitialData& data, double t_end,
                    const Forcing* forcing, const EvolveOptions& options) {
  spec.validate();
  require(data.u0.grid() == data.u1.grid(), "evolve: u0 and u1 must share one grid");
  data.u0.require_finite("evolve: u0");
  data.u1.require_finite("evolve: u1");
  const RadialGrid grid = data.u0.grid();

  const double support =
      std::max(data.support_radius, forcing != nullptr ? forcing->support_radius : 0.0);
  if (support + t_end + options.causality_margin > grid.r_max()) {
    std::ostringstream os;
    os << "evolve: causality check failed, support " << support << " + t_end " << t_end
       << " + margin " << options.causality_margin << " > r_max " << grid.r_max();
    throw PreconditionViolation(os.str());
  }
  require(options.blowup_threshold > 0.0, "evolve: blowup_threshold must be positive");
  const StepPlan plan = plan_steps(grid, t_end, options);
  const double dt = plan.dt;
  const double dt_sample = dt * plan.stride;

  const std::size_t m = grid.size();
  std::vector<double> u(data.u0.values().begin(), data.u0.values().end());
  std::vector<double> v(data.u1.values().begin(), data.u1.values().end());
  std::vector<double> ku[4], kv[4];
  for (int s = 0; s < 4; ++s) {
    ku[s].resize(m);
    kv[s].resize(m);
  }
  std::vector<double> us(m), vs(m), ur(m);

  WaveOperator rhs(spec, grid, forcing, options.linear_only);
  core::Trajectory traj(spec, dt_sample);
  traj.append(core::WaveState(0.0, data.u0, data.u1));

  kernels::derivative(u, grid.spacing(), ur);
  double peak = kernels::max_abs_pair(v, ur);
  SolveOutcome out{SolveStatus::completed, core::Trajectory(spec, dt_sample), std::nullopt, peak};

  for (long long step = 1; step <= plan.steps; ++step) {
    const double t = static_cast<double>(step - 1) * dt;
    rhs(t, u, v, ku[0], kv[0]);
    kernels::axpy(u, 0.5 * dt, ku[0], us);
    kernels::axpy(v, 0.5 * dt, kv[0], vs);
    rhs(t + 0.5 * dt, us, vs, ku[1], kv[1]);
    kernels::axpy(u, 0.5 * dt, ku[1], us);
    kernels::axpy(v, 0.5 * dt, kv[1], vs);
    rhs(t + 0.5 * dt, us, vs, ku[2], kv[2]);
    kernels::axpy(u, dt, ku[2], us);
    kernels::axpy(v, dt, kv[2], vs);
    rhs(t + dt, us, vs, ku[3], kv[3]);
    kernels::rk4_update(u, dt, ku[0], ku[1], ku[2], ku[3]);
    kernels::rk4_update(v, dt, kv[0], kv[1], kv[2], kv[3]);

    kernels::derivative(u, grid.spacing(), ur);
    const double g = kernels::max_abs_pair(v, ur);
    const double t_now = static_cast<double>(step) * dt;
    if (std::isnan(g) || g > options.blowup_threshold) {
      out.status = SolveStatus::blew_up;
      out.t_blowup = t_now;
      out.peak_gradient = std::isnan(g) ? std::numeric_limits<double>::infinity()
                                        : std::max(peak, g);
      break;
    }
    peak = std::max(peak, g);
    if (options.record_states && step % plan.stride == 0) {
      const double t_sample = dt_sample * static_cast<double>(step / plan.stride);
      traj.append(core::WaveState(t_sample, RadialField(grid, u), RadialField(grid, v)));
    }
  }
  if (out.status == SolveStatus::completed) out.peak_gradient = peak;
  out.trajectory = std::move(traj);
  return out;
}

core::Trajectory duhamel(const Forcing& forcing, double t_end, const core::ProblemSpec& spec,
                         const RadialGrid& grid, const EvolveOptions& options) {
  EvolveOptions linear = options;
  linear.linear_only = true;
  const InitialData zero{RadialField::zeros(grid), RadialField::zeros(grid), 0.0};
  return evolve(spec, zero, t_end, &forcing, linear).trajectory;
}

}  // namespace glassey::solver
