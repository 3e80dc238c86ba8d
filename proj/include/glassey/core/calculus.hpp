#pragma once

#include "glassey/core/grid.hpp"

namespace glassey::core {

/// Second-order centered d/dr; one-sided second order at r = 0 and r = r_max.
RadialField radial_derivative(const RadialField& f);

/// Radial Laplacian f'' + (n-1)/r f'; r = 0 uses n f''(0) via the even extension.
RadialField radial_laplacian(const RadialField& f, int n);

}  // namespace glassey::core
