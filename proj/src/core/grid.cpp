#include "glassey/core/grid.hpp"

#include <cmath>
#include <sstream>

#include "glassey/errors.hpp"

namespace glassey::core {

RadialGrid::RadialGrid(double r_max, int num_cells)
    : r_max_(r_max), num_cells_(num_cells), spacing_(r_max / num_cells) {
  require(std::isfinite(r_max) && r_max > 0.0, "RadialGrid: r_max must be positive");
  require(num_cells >= kMinCells, "RadialGrid: num_cells must be >= 16");
}

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> r(size());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = node(j);
  return r;
}

RadialField::RadialField(RadialGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  require(values_.size() == grid_.size(), "RadialField: value count does not match grid");
}

RadialField RadialField::zeros(const RadialGrid& grid) {
  return RadialField(grid, std::vector<double>(grid.size(), 0.0));
}

RadialField RadialField::sample(const RadialGrid& grid, const std::function<double(double)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = fn(grid.node(j));
  return RadialField(grid, std::move(v));
}

bool RadialField::is_finite() const noexcept {
  for (double x : values_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void RadialField::require_finite(std::string_view what) const {
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) {
      std::ostringstream os;
      os << what << ": non-finite value " << values_[j] << " at node " << j << " (r = "
         << grid_.node(j) << ")";
      throw NonFiniteInput(os.str());
    }
  }
}

RadialField& RadialField::operator+=(const RadialField& other) {
  require(grid_ == other.grid_, "RadialField: grids differ");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

RadialField& RadialField::operator-=(const RadialField& other) {
  require(grid_ == other.grid_, "RadialField: grids differ");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

RadialField& RadialField::operator*=(double c) noexcept {
  for (double& x : values_) x *= c;
  return *this;
}

RadialField operator+(RadialField lhs, const RadialField& rhs) { return lhs += rhs; }
RadialField operator-(RadialField lhs, const RadialField& rhs) { return lhs -= rhs; }
RadialField operator*(double c, RadialField f) { return f *= c; }

}  // namespace glassey::core
