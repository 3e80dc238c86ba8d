#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "glassey/core/grid.hpp"

namespace glassey::solver {

/// Two-column "r value" samples; first line "# radial-field v1", r strictly increasing.
struct RadialSamples {
  std::vector<double> r;
  std::vector<double> value;
};

inline constexpr const char* kRadialFieldHeader = "# radial-field v1";

RadialSamples read_radial_samples(std::istream& in);
RadialSamples read_radial_samples(const std::filesystem::path& path);
void write_radial_samples(std::ostream& out, const core::RadialField& f);

/// Monotone (PCHIP) resampling onto `grid`; zero beyond the last sample.
/// The samples must start at r = 0.
core::RadialField resample(const RadialSamples& samples, const core::RadialGrid& grid);

}  // namespace glassey::solver
