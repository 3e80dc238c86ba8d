#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace glassey::core {

/// Uniform radial grid r_j = j * r_max / num_cells, j = 0..num_cells.
class RadialGrid {
 public:
  static constexpr int kMinCells = 16;

  RadialGrid(double r_max, int num_cells);

  double r_max() const noexcept { return r_max_; }
  int num_cells() const noexcept { return num_cells_; }
  /// Number of nodes, num_cells + 1.
  std::size_t size() const noexcept { return static_cast<std::size_t>(num_cells_) + 1; }
  double spacing() const noexcept { return spacing_; }
  double node(std::size_t j) const noexcept { return static_cast<double>(j) * spacing_; }
  std::vector<double> nodes() const;

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

 private:
  double r_max_;
  int num_cells_;
  double spacing_;
};

/// Nodal samples of a radial function u(|x|).
class RadialField {
 public:
  RadialField(RadialGrid grid, std::vector<double> values);

  static RadialField zeros(const RadialGrid& grid);
  static RadialField sample(const RadialGrid& grid, const std::function<double(double)>& fn);

  const RadialGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  double& operator[](std::size_t j) noexcept { return values_[j]; }

  bool is_finite() const noexcept;
  /// Throws NonFiniteInput naming `what` if any value is NaN or infinite.
  void require_finite(std::string_view what) const;

  RadialField& operator+=(const RadialField& other);
  RadialField& operator-=(const RadialField& other);
  RadialField& operator*=(double c) noexcept;

 private:
  RadialGrid grid_;
  std::vector<double> values_;
};

RadialField operator+(RadialField lhs, const RadialField& rhs);
RadialField operator-(RadialField lhs, const RadialField& rhs);
RadialField operator*(double c, RadialField f);

}  // namespace glassey::core
