#pragma once

#include "glassey/core/grid.hpp"
#include "glassey/core/trajectory.hpp"

namespace glassey::solver {

/// Free radial wave in three dimensions from the d'Alembert formula for r*u.
/// The data are interpolated by local cubics (oddly extended through r = 0).
/// Arguments beyond r_max count as zero when the data tail has vanished;
/// otherwise RangeViolation.
core::WaveState exact_free_n3(const core::RadialField& u0, const core::RadialField& u1, double t);

}  // namespace glassey::solver
