#pragma once

// Fixed-point iteration u^{k+1} = Phi[u^k] = u^(0) + I[N[u^k]] and its
// contraction measured in rho(u, v) = ||u - v||_E1 + ||u - v||_LE1.

#include <filesystem>
#include <span>
#include <vector>

#include "glassey/core/problem.hpp"
#include "glassey/core/trajectory.hpp"
#include "glassey/errors.hpp"
#include "glassey/solver/solver.hpp"

namespace glassey::picard {

struct PicardTrace {
  int iteration;    // k >= 1
  double rho_step;  // rho(u^k, u^{k-1})
  double e1, e2, le1, le2;  // norms of u^k
};

/// Thrown when rho grows 10x over two steps; carries the trace so far.
class PicardDivergence : public Divergence {
 public:
  PicardDivergence(const std::string& what, std::vector<PicardTrace> trace)
      : Divergence(what), trace_(std::move(trace)) {}
  const std::vector<PicardTrace>& trace() const noexcept { return trace_; }

 private:
  std::vector<PicardTrace> trace_;
};

/// Linear solve of box v = N[u] with the data of `data`. N[u] is evaluated on
/// the samples of u and interpolated linearly in t; u must be sampled exactly
/// as evolve() samples [0, T] with these options.
core::Trajectory phi_map(const core::Trajectory& u, const solver::InitialData& data,
                         const core::ProblemSpec& spec, double horizon,
                         const solver::EvolveOptions& options = {});

/// E1 + LE1 of u - v under w.
double rho(const core::Trajectory& u, const core::Trajectory& v, const core::WeightParams& w);

struct PicardConfig {
  int max_iters = 20;
  double tol = 1e-10;
  /// Sobolev pair feeding weight_exponents; ignored in the subcritical regime.
  double s1 = 0.5;
  double s2 = 1.0;
  solver::EvolveOptions evolve{};
};

struct PicardResult {
  core::Trajectory final;
  std::vector<PicardTrace> trace;
  bool converged;
  core::WeightParams weights;
  double lambda1;
};

/// Iterates from the free solution until rho <= tol (Lambda1 + 1e-300) or
/// max_iters (in [2, 50]) is exhausted. Weights come from the regime of spec.
PicardResult picard_run(const core::ProblemSpec& spec, const solver::InitialData& data,
                        double horizon, const PicardConfig& config = {});

struct SmallnessReport {
  core::Regime regime;
  double lambda1;
  double lambda2;
  /// supercritical: L1^{1-s1} L2^{s1} + L1^{1-s2} L2^{s2}
  /// critical:      L1^{1/2} L2^{1/2} + L1^{1-s2} L2^{s2}
  /// subcritical:   L1^{1/2} L2^{1/2}
  double quantity;
};

SmallnessReport smallness_report(const core::ProblemSpec& spec, const solver::InitialData& data,
                                 double s1, double s2);

/// Columns iteration, rho_step, e1, e2, le1, le2.
void write_trace_csv(const std::filesystem::path& path, std::span<const PicardTrace> trace);

}  // namespace glassey::picard
