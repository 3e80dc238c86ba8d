#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "glassey/core/grid.hpp"
#include "glassey/io/golden.hpp"

namespace testing {

inline glassey::io::GoldenRecord golden(const std::string& file, const std::string& name) {
  const auto all = glassey::io::load_goldens(std::filesystem::path(GLASSEY_GOLDEN_DIR) / file);
  return all.at(name);
}

inline glassey::core::RadialField gaussian(const glassey::core::RadialGrid& grid, double eps = 1.0) {
  return glassey::core::RadialField::sample(grid, [eps](double r) { return eps * std::exp(-r * r); });
}

inline double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

/// log2(e_coarse / e_fine) for one grid doubling.
inline double order(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

/// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::current_path() / "scratch" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace testing
