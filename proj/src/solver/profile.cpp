#include "glassey/solver/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "glassey/errors.hpp"
#include "glassey/solver/field_io.hpp"

namespace glassey::solver {
namespace {

// sqrt(ln 1e16): a unit Gaussian is below 1e-16 of its peak beyond this many widths
const double kGaussianTail = std::sqrt(16.0 * std::log(10.0));

double unit_profile(const DataProfile& p, double r) {
  const double rho = (r - p.center) / p.width;
  switch (p.family) {
    case ProfileFamily::gaussian: return std::exp(-rho * rho);
    case ProfileFamily::smooth_bump:
      if (std::fabs(rho) >= 1.0) return 0.0;
      return std::exp(-1.0 / (1.0 - rho * rho));
    case ProfileFamily::from_file: break;
  }
  return 0.0;
}

double measured_support(const core::RadialField& u0, const core::RadialField& u1) {
  double peak = 0.0;
  for (std::size_t j = 0; j < u0.size(); ++j) peak = std::max({peak, std::fabs(u0[j]), std::fabs(u1[j])});
  if (peak == 0.0) return 0.0;
  for (std::size_t j = u0.size(); j-- > 0;) {
    if (std::max(std::fabs(u0[j]), std::fabs(u1[j])) > 1e-16 * peak) return u0.grid().node(j);
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(ProfileFamily family) {
  switch (family) {
    case ProfileFamily::gaussian: return "gaussian";
    case ProfileFamily::smooth_bump: return "smooth_bump";
    case ProfileFamily::from_file: return "from_file";
  }
  return "unknown";
}

std::string_view to_string(Assignment assigns) {
  switch (assigns) {
    case Assignment::to_u0: return "to_u0";
    case Assignment::to_u1: return "to_u1";
    case Assignment::split: return "split";
  }
  return "unknown";
}

ProfileFamily parse_family(std::string_view text) {
  if (text == "gaussian") return ProfileFamily::gaussian;
  if (text == "smooth_bump") return ProfileFamily::smooth_bump;
  if (text == "from_file") return ProfileFamily::from_file;
  throw PreconditionViolation("unknown profile family '" + std::string(text) + "'");
}

Assignment parse_assignment(std::string_view text) {
  if (text == "to_u0") return Assignment::to_u0;
  if (text == "to_u1") return Assignment::to_u1;
  if (text == "split") return Assignment::split;
  throw PreconditionViolation("unknown assignment '" + std::string(text) + "'");
}

void DataProfile::validate() const {
  require(std::isfinite(epsilon) && epsilon >= 0.0, "DataProfile: epsilon must be >= 0");
  require(std::isfinite(width) && width > 0.0, "DataProfile: width must be positive");
  require(std::isfinite(center) && center >= 0.0, "DataProfile: center must be >= 0");
  require(family != ProfileFamily::from_file || !file.empty(), "DataProfile: from_file needs a path");
}

InitialData InitialData::from_fields(core::RadialField u0, core::RadialField u1) {
  require(u0.grid() == u1.grid(), "InitialData: u0 and u1 must share one grid");
  const double support = measured_support(u0, u1);
  return {std::move(u0), std::move(u1), support};
}

double profile_support_radius(const DataProfile& profile) {
  switch (profile.family) {
    case ProfileFamily::gaussian: return profile.center + kGaussianTail * profile.width;
    case ProfileFamily::smooth_bump: return profile.center + profile.width;
    case ProfileFamily::from_file: break;
  }
  throw PreconditionViolation("profile_support_radius: from_file support is measured on the grid");
}

InitialData make_profile(const DataProfile& profile, const core::RadialGrid& grid) {
  profile.validate();
  core::RadialField shape = core::RadialField::zeros(grid);
  double support = 0.0;
  if (profile.family == ProfileFamily::from_file) {
    shape = resample(read_radial_samples(profile.file), grid);
    double peak = 0.0;
    for (double x : shape.values()) peak = std::max(peak, std::fabs(x));
    const double tail = std::fabs(shape[shape.size() - 1]);
    if (tail > 1e-14 * peak) {
      std::ostringstream os;
      os << "make_profile: data from '" << profile.file << "' does not vanish before r_max = "
         << grid.r_max() << " (|f(r_max)| = " << tail << ")";
      throw SupportOverflow(os.str());
    }
    support = measured_support(shape, shape);
  } else {
    support = profile_support_radius(profile);
    if (support > grid.r_max()) {
      std::ostringstream os;
      os << "make_profile: " << to_string(profile.family) << " data (center " << profile.center
         << ", width " << profile.width << ") does not vanish before r_max = " << grid.r_max();
      throw SupportOverflow(os.str());
    }
    shape = core::RadialField::sample(grid, [&](double r) { return unit_profile(profile, r); });
  }
  shape *= profile.epsilon;
  if (profile.epsilon == 0.0) support = 0.0;

  core::RadialField zero = core::RadialField::zeros(grid);
  switch (profile.assigns) {
    case Assignment::to_u0: return {shape, zero, support};
    case Assignment::to_u1: return {zero, shape, support};
    case Assignment::split: return {shape, shape, support};
  }
  return {shape, zero, support};
}

}  // namespace glassey::solver
