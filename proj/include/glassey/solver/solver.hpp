#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "glassey/core/grid.hpp"
#include "glassey/core/problem.hpp"
#include "glassey/core/trajectory.hpp"
#include "glassey/solver/profile.hpp"

namespace glassey::solver {

/// Source term F(t, r). `eval` fills the nodal values at time t. Its support
/// at time t must lie in r <= support_radius + t.
struct Forcing {
  std::function<void(double t, std::span<double> out)> eval;
  double support_radius = 0.0;
};

struct EvolveOptions {
  double cfl = 0.25;
  /// Solver steps between recorded states.
  int sample_stride = 10;
  /// Blow-up is declared once max(|u_t|, |u_r|) exceeds this (or a NaN appears).
  double blowup_threshold = 1e6;
  /// Drop N[u]; evolves the free (or only externally forced) equation.
  bool linear_only = false;
  /// Required gap between the causal support and r_max.
  double causality_margin = 2.0;
  /// When false only the initial state is recorded (status and timing still are).
  bool record_states = true;
};

enum class SolveStatus { completed, blew_up };
std::string_view to_string(SolveStatus status);

struct SolveOutcome {
  SolveStatus status;
  core::Trajectory trajectory;
  std::optional<double> t_blowup;
  /// max over all steps of max(|u_t|, |u_r|); infinite after a NaN.
  double peak_gradient;
};

/// a|u_t|^p + b|u_r|^p at every node.
core::RadialField nonlinearity(const core::WaveState& state, const core::ProblemSpec& spec);

/// (1/2) int (u_t^2 + |grad u|^2) dx.
double energy(const core::WaveState& state, int n);

/// Method of lines for u_t = v, v_t = Laplacian u + N[u] + F with classical RK4,
/// dt = cfl * dr (shortened so that sampling lands exactly on t_end).
/// Throws PreconditionViolation when support + t_end + margin > r_max and
/// StepUnderflow when dt < 1e-12.
SolveOutcome evolve(const core::ProblemSpec& spec, const InitialData& data, double t_end,
                    const Forcing* forcing = nullptr, const EvolveOptions& options = {});

/// Zero-data linear response to F (the Duhamel integral).
core::Trajectory duhamel(const Forcing& forcing, double t_end, const core::ProblemSpec& spec,
                         const core::RadialGrid& grid, const EvolveOptions& options = {});

/// Sampling interval evolve() will use for these settings.
double sample_interval(const core::RadialGrid& grid, double t_end, const EvolveOptions& options);

}  // namespace glassey::solver
