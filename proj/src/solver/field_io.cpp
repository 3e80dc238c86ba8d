#include "glassey/solver/field_io.hpp"

#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/interpolators/pchip.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "glassey/errors.hpp"
#include "glassey/io/csv.hpp"

namespace glassey::solver {

RadialSamples read_radial_samples(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(kRadialFieldHeader, 0) != 0) {
    throw IoError(std::string("radial field: first line must be '") + kRadialFieldHeader + "'");
  }
  RadialSamples s;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    double r = 0.0, value = 0.0;
    if (!(row >> r >> value) || !std::isfinite(r) || !std::isfinite(value)) {
      throw IoError("radial field: malformed row " + std::to_string(line_no) + ": '" + line + "'");
    }
    if (!s.r.empty() && !(r > s.r.back())) {
      throw IoError("radial field: r not strictly increasing at row " + std::to_string(line_no));
    }
    s.r.push_back(r);
    s.value.push_back(value);
  }
  if (s.r.size() < 4) throw IoError("radial field: need at least 4 samples");
  return s;
}

RadialSamples read_radial_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("radial field: cannot open '" + path.string() + "'");
  return read_radial_samples(in);
}

void write_radial_samples(std::ostream& out, const core::RadialField& f) {
  out << kRadialFieldHeader << '\n';
  for (std::size_t j = 0; j < f.size(); ++j) {
    out << io::format_double(f.grid().node(j)) << ' ' << io::format_double(f[j]) << '\n';
  }
}

core::RadialField resample(const RadialSamples& samples, const core::RadialGrid& grid) {
  require(samples.r.size() == samples.value.size() && samples.r.size() >= 4,
          "resample: need at least 4 samples");
  require(samples.r.front() == 0.0, "resample: samples must start at r = 0");
  const double r_last = samples.r.back();
  auto x = samples.r;
  auto y = samples.value;
  boost::math::interpolators::pchip<std::vector<double>> spline(std::move(x), std::move(y));
  return core::RadialField::sample(grid, [&](double r) { return r <= r_last ? spline(r) : 0.0; });
}

}  // namespace glassey::solver
