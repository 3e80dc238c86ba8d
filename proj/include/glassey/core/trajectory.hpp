#pragma once

#include <cstddef>
#include <vector>

#include "glassey/core/grid.hpp"
#include "glassey/core/problem.hpp"

namespace glassey::core {

/// (u, u_t) at one time.
struct WaveState {
  WaveState(double time, RadialField u, RadialField v);

  double time;
  RadialField u;
  RadialField v;

  const RadialGrid& grid() const noexcept { return u.grid(); }
};

/// States sampled at a fixed stride dt_sample.
class Trajectory {
 public:
  Trajectory(ProblemSpec problem, double dt_sample);

  /// Times must continue the stride: t_k = t_0 + k*dt_sample within 1e-12 relative.
  void append(WaveState state);

  const ProblemSpec& problem() const noexcept { return problem_; }
  double dt_sample() const noexcept { return dt_sample_; }
  const std::vector<WaveState>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }
  bool empty() const noexcept { return states_.empty(); }
  const WaveState& operator[](std::size_t k) const { return states_[k]; }
  const WaveState& back() const { return states_.back(); }
  const RadialGrid& grid() const;
  double start_time() const;
  double end_time() const;

  /// Multiplies every u and v by c.
  Trajectory scaled(double c) const;
  /// Pointwise difference of two trajectories sampled identically.
  Trajectory minus(const Trajectory& other) const;

 private:
  ProblemSpec problem_;
  double dt_sample_;
  std::vector<WaveState> states_;
};

/// A time-sampled scalar field starting at t = 0 (forcing histories).
class FieldHistory {
 public:
  FieldHistory(RadialGrid grid, double dt_sample);

  void append(RadialField f);

  const RadialGrid& grid() const noexcept { return grid_; }
  double dt_sample() const noexcept { return dt_sample_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const RadialField& operator[](std::size_t k) const { return samples_[k]; }
  double end_time() const noexcept {
    return samples_.empty() ? 0.0 : dt_sample_ * static_cast<double>(samples_.size() - 1);
  }

 private:
  RadialGrid grid_;
  double dt_sample_;
  std::vector<RadialField> samples_;
};

}  // namespace glassey::core
