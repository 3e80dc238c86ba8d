#include "glassey/core/trajectory.hpp"

#include <cmath>
#include <sstream>

#include "glassey/errors.hpp"

namespace glassey::core {

WaveState::WaveState(double t, RadialField u_in, RadialField v_in)
    : time(t), u(std::move(u_in)), v(std::move(v_in)) {
  require(std::isfinite(time), "WaveState: time must be finite");
  require(u.grid() == v.grid(), "WaveState: u and v must share one grid");
}

Trajectory::Trajectory(ProblemSpec problem, double dt_sample)
    : problem_(problem), dt_sample_(dt_sample) {
  problem_.validate();
  require(std::isfinite(dt_sample) && dt_sample > 0.0, "Trajectory: dt_sample must be positive");
}

void Trajectory::append(WaveState state) {
  if (!states_.empty()) {
    require(state.grid() == states_.front().grid(), "Trajectory: grid changed between states");
    const double expected = states_.front().time + dt_sample_ * static_cast<double>(states_.size());
    if (std::fabs(state.time - expected) > 1e-12 * std::max(1.0, std::fabs(expected))) {
      std::ostringstream os;
      os << "Trajectory: state at t = " << state.time << " breaks the sampling stride (expected "
         << expected << ")";
      throw PreconditionViolation(os.str());
    }
  } else {
    require(state.time >= 0.0, "Trajectory: time must be >= 0");
  }
  states_.push_back(std::move(state));
}

const RadialGrid& Trajectory::grid() const {
  require(!states_.empty(), "Trajectory: empty");
  return states_.front().grid();
}

double Trajectory::start_time() const {
  require(!states_.empty(), "Trajectory: empty");
  return states_.front().time;
}

double Trajectory::end_time() const {
  require(!states_.empty(), "Trajectory: empty");
  return states_.back().time;
}

Trajectory Trajectory::scaled(double c) const {
  Trajectory out(problem_, dt_sample_);
  for (const auto& s : states_) out.append(WaveState(s.time, c * s.u, c * s.v));
  return out;
}

Trajectory Trajectory::minus(const Trajectory& other) const {
  require(other.size() == size(), "Trajectory::minus: sample counts differ");
  require(std::fabs(other.dt_sample_ - dt_sample_) <= 1e-12 * dt_sample_,
          "Trajectory::minus: sampling strides differ");
  Trajectory out(problem_, dt_sample_);
  for (std::size_t k = 0; k < states_.size(); ++k) {
    out.append(WaveState(states_[k].time, states_[k].u - other.states_[k].u,
                         states_[k].v - other.states_[k].v));
  }
  return out;
}

FieldHistory::FieldHistory(RadialGrid grid, double dt_sample) : grid_(grid), dt_sample_(dt_sample) {
  require(std::isfinite(dt_sample) && dt_sample > 0.0, "FieldHistory: dt_sample must be positive");
}

void FieldHistory::append(RadialField f) {
  require(f.grid() == grid_, "FieldHistory: grid mismatch");
  samples_.push_back(std::move(f));
}

}  // namespace glassey::core
