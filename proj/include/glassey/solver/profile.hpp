#pragma once

#include <string>
#include <string_view>

#include "glassey/core/grid.hpp"

namespace glassey::solver {

enum class ProfileFamily { gaussian, smooth_bump, from_file };
/// Which of (u0, u1) receives the profile; `split` puts it on both.
enum class Assignment { to_u0, to_u1, split };

std::string_view to_string(ProfileFamily family);
std::string_view to_string(Assignment assigns);
ProfileFamily parse_family(std::string_view text);
Assignment parse_assignment(std::string_view text);

/// Radial initial data of amplitude epsilon.
///   gaussian:    eps * exp(-((r - center)/width)^2)
///   smooth_bump: eps * exp(-1/(1 - rho^2)), rho = (r - center)/width, 0 for |rho| >= 1
///   from_file:   eps * (monotone cubic resampling of a "# radial-field v1" file)
struct DataProfile {
  ProfileFamily family = ProfileFamily::gaussian;
  double epsilon = 1.0;
  double width = 1.0;
  double center = 0.0;
  Assignment assigns = Assignment::to_u0;
  std::string file{};

  void validate() const;
};

/// (u0, u1) on a grid together with the radius outside which both vanish
/// (below 1e-16 of their peak).
struct InitialData {
  core::RadialField u0;
  core::RadialField u1;
  double support_radius = 0.0;

  /// Support radius measured from the nodal values.
  static InitialData from_fields(core::RadialField u0, core::RadialField u1);
};

/// Throws SupportOverflow when the profile does not vanish before r_max.
InitialData make_profile(const DataProfile& profile, const core::RadialGrid& grid);

/// Radius beyond which the unit-amplitude profile is below 1e-16 of its peak.
double profile_support_radius(const DataProfile& profile);

}  // namespace glassey::solver
