#include "glassey/picard/picard.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "glassey/core/norms.hpp"
#include "glassey/io/csv.hpp"

namespace glassey::picard {
namespace {

// N[u] at the samples of u, linearly interpolated in between.
solver::Forcing interpolated_nonlinearity(const core::Trajectory& u, const core::ProblemSpec& spec,
                                          double support) {
  auto samples = std::make_shared<std::vector<core::RadialField>>();
  samples->reserve(u.size());
  for (const auto& st : u.states()) samples->push_back(solver::nonlinearity(st, spec));
  const double dt = u.dt_sample();
  return {[samples, dt](double t, std::span<double> out) {
            const auto last = samples->size() - 1;
            const double x = std::max(0.0, t / dt);
            auto k = static_cast<std::size_t>(std::floor(x));
            if (k >= last) {
              const auto v = (*samples)[last].values();
              std::copy(v.begin(), v.end(), out.begin());
              return;
            }
            const double theta = x - static_cast<double>(k);
            const auto a = (*samples)[k].values();
            const auto b = (*samples)[k + 1].values();
            for (std::size_t j = 0; j < out.size(); ++j) out[j] = a[j] + theta * (b[j] - a[j]);
          },
          support};
}

core::Trajectory free_solution(const core::ProblemSpec& spec, const solver::InitialData& data,
                               double horizon, const solver::EvolveOptions& options) {
  solver::EvolveOptions linear = options;
  linear.linear_only = true;
  return solver::evolve(spec, data, horizon, nullptr, linear).trajectory;
}

core::WeightParams regime_weights(const core::ProblemSpec& spec, const PicardConfig& config,
                                  double horizon) {
  const auto regime = core::classify(spec);
  return core::WeightParams::from(core::weight_exponents(regime, spec, config.s1, config.s2),
                                  horizon);
}

}  // namespace

core::Trajectory phi_map(const core::Trajectory& u, const solver::InitialData& data,
                         const core::ProblemSpec& spec, double horizon,
                         const solver::EvolveOptions& options) {
  spec.validate();
  require(!u.empty(), "phi_map: empty input trajectory");
  require(u.grid() == data.u0.grid(), "phi_map: trajectory and data must share one grid");
  const double dt = solver::sample_interval(u.grid(), horizon, options);
  require(std::fabs(u.dt_sample() - dt) <= 1e-12 * dt,
          "phi_map: input trajectory is not sampled like this solve");
  if (u.end_time() < horizon * (1.0 - 1e-12)) {
    throw HorizonMismatch("phi_map: input trajectory does not reach the horizon");
  }
  const auto forcing = interpolated_nonlinearity(u, spec, data.support_radius);
  solver::EvolveOptions linear = options;
  linear.linear_only = true;
  auto run = solver::evolve(spec, data, horizon, &forcing, linear);
  if (run.status != solver::SolveStatus::completed) {
    throw Divergence("phi_map: linear solve exceeded the blow-up threshold");
  }
  return std::move(run.trajectory);
}

double rho(const core::Trajectory& u, const core::Trajectory& v, const core::WeightParams& w) {
  const auto diff = u.minus(v);
  return core::e_norms(diff).e1 + core::le_norm(diff, w).total;
}

PicardResult picard_run(const core::ProblemSpec& spec, const solver::InitialData& data,
                        double horizon, const PicardConfig& config) {
  spec.validate();
  require(config.max_iters >= 2 && config.max_iters <= 50, "picard_run: max_iters must be in [2, 50]");
  require(config.tol > 0.0, "picard_run: tol must be positive");
  const auto weights = regime_weights(spec, config, horizon);
  const double lambda1 = core::lambda_norms(data.u0, data.u1, spec.n_dim).lambda1;
  const double stop = config.tol * (lambda1 + 1e-300);

  core::Trajectory current = free_solution(spec, data, horizon, config.evolve);
  std::vector<PicardTrace> trace;
  bool converged = false;
  for (int k = 1; k <= config.max_iters; ++k) {
    core::Trajectory next = phi_map(current, data, spec, horizon, config.evolve);
    const double step = rho(next, current, weights);
    const auto report = core::norm_report(next, weights);
    trace.push_back({k, step, report.e1, report.e2, report.le1, report.le2});
    current = std::move(next);
    if (!std::isfinite(step)) {
      throw PicardDivergence("picard_run: non-finite rho", std::move(trace));
    }
    if (step <= stop) {
      converged = true;
      break;
    }
    if (trace.size() >= 3 && step > 10.0 * trace[trace.size() - 3].rho_step) {
      std::ostringstream os;
      os << "picard_run: rho grew from " << trace[trace.size() - 3].rho_step << " to " << step
         << " over two iterations";
      throw PicardDivergence(os.str(), std::move(trace));
    }
  }
  return {std::move(current), std::move(trace), converged, weights, lambda1};
}

SmallnessReport smallness_report(const core::ProblemSpec& spec, const solver::InitialData& data,
                                 double s1, double s2) {
  spec.validate();
  const auto regime = core::classify(spec);
  const auto l = core::lambda_norms(data.u0, data.u1, spec.n_dim);
  auto term = [&](double s) { return std::pow(l.lambda1, 1.0 - s) * std::pow(l.lambda2, s); };
  double q = 0.0;
  switch (regime) {
    case core::Regime::supercritical: q = term(s1) + term(s2); break;
    case core::Regime::critical: q = term(0.5) + term(s2); break;
    case core::Regime::subcritical: q = term(0.5); break;
  }
  return {regime, l.lambda1, l.lambda2, q};
}

void write_trace_csv(const std::filesystem::path& path, std::span<const PicardTrace> trace) {
  io::CsvWriter csv(path, "picard", {"iteration", "rho_step", "e1", "e2", "le1", "le2"});
  for (const auto& t : trace) csv.row() << t.iteration << t.rho_step << t.e1 << t.e2 << t.le1 << t.le2;
}

}  // namespace glassey::picard
