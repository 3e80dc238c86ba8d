#include "glassey/solver/exact_n3.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "glassey/errors.hpp"

namespace glassey::solver {
namespace {

// Local cubic interpolant of an odd function given at s_j = j*h, j = 0..N.
// Each cell [s_i, s_{i+1}] uses the four nodes i-1..i+2 (shifted inward at the
// outer end); negative indices come from the odd extension.
class OddCubic {
 public:
  OddCubic(std::vector<double> values, double h, bool zero_tail)
      : f_(std::move(values)), h_(h), zero_tail_(zero_tail) {
    const std::size_t cells = f_.size() - 1;
    cumulative_.assign(f_.size(), 0.0);
    for (std::size_t i = 0; i < cells; ++i) {
      cumulative_[i + 1] = cumulative_[i] + integrate_cell(i, 1.0);
    }
  }

  double max_arg() const { return h_ * static_cast<double>(f_.size() - 1); }

  /// d^order/ds^order of the odd extension at s.
  double eval(double s, int order) const {
    const double a = std::fabs(s);
    // odd function: even derivatives are odd, odd derivatives are even
    const double sign = (s < 0.0 && order % 2 == 0) ? -1.0 : 1.0;
    if (a > max_arg()) return sign * outside(order);
    return sign * eval_abs(a, order);
  }

  /// int_0^s of the odd extension; an even function of s.
  double antiderivative(double s) const {
    const double a = std::fabs(s);
    if (a > max_arg()) {
      outside(0);
      return cumulative_.back();
    }
    const auto [i, x] = locate(a);
    return cumulative_[i] + integrate_cell(i, x);
  }

 private:
  double node(long long j) const {
    if (j < 0) return -f_[static_cast<std::size_t>(-j)];
    return f_[static_cast<std::size_t>(j)];
  }

  double outside(int) const {
    if (!zero_tail_) {
      throw RangeViolation("exact_free_n3: argument beyond r_max and the data tail has not vanished");
    }
    return 0.0;
  }

  std::pair<std::size_t, double> locate(double a) const {
    const std::size_t cells = f_.size() - 1;
    auto i = static_cast<std::size_t>(a / h_);
    if (i >= cells) i = cells - 1;
    return {i, a / h_ - static_cast<double>(i)};
  }

  // Polynomial through nodes base..base+3 evaluated at local coordinate y
  // measured from node base.
  double lagrange(long long base, double y, int order) const {
    const std::array<double, 4> f{node(base), node(base + 1), node(base + 2), node(base + 3)};
    std::array<double, 4> w{};
    if (order == 0) {
      w = {-(y - 1) * (y - 2) * (y - 3) / 6.0, y * (y - 2) * (y - 3) / 2.0,
           -y * (y - 1) * (y - 3) / 2.0, y * (y - 1) * (y - 2) / 6.0};
    } else if (order == 1) {
      w = {-(3 * y * y - 12 * y + 11) / 6.0, (3 * y * y - 10 * y + 6) / 2.0,
           -(3 * y * y - 8 * y + 3) / 2.0, (3 * y * y - 6 * y + 2) / 6.0};
    } else {
      w = {-(6 * y - 12) / 6.0, (6 * y - 10) / 2.0, -(6 * y - 8) / 2.0, (6 * y - 6) / 6.0};
    }
    const double scale = order == 0 ? 1.0 : (order == 1 ? 1.0 / h_ : 1.0 / (h_ * h_));
    return scale * (w[0] * f[0] + w[1] * f[1] + w[2] * f[2] + w[3] * f[3]);
  }

  long long stencil_base(std::size_t i) const {
    const auto last = static_cast<long long>(f_.size() - 1);
    return std::min(static_cast<long long>(i) - 1, last - 3);
  }

  double eval_abs(double a, int order) const {
    const auto [i, x] = locate(a);
    const long long base = stencil_base(i);
    return lagrange(base, x + static_cast<double>(static_cast<long long>(i) - base), order);
  }

  // int_{s_i}^{s_i + x h} of the cell polynomial (3-point Gauss-Legendre, exact for cubics).
  double integrate_cell(std::size_t i, double x) const {
    static constexpr std::array<double, 3> nodes{-0.7745966692414834, 0.0, 0.7745966692414834};
    static constexpr std::array<double, 3> weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const long long base = stencil_base(i);
    const double offset = static_cast<double>(static_cast<long long>(i) - base);
    double sum = 0.0;
    for (int q = 0; q < 3; ++q) {
      const double y = 0.5 * x * (nodes[q] + 1.0);
      sum += weights[q] * lagrange(base, offset + y, 0);
    }
    return 0.5 * x * h_ * sum;
  }

  std::vector<double> f_;
  double h_;
  bool zero_tail_;
  std::vector<double> cumulative_;
};

bool tail_vanished(std::span<const double> f) {
  double peak = 0.0;
  for (double x : f) peak = std::max(peak, std::fabs(x));
  if (peak == 0.0) return true;
  const std::size_t m = f.size();
  for (std::size_t j = m - std::min<std::size_t>(4, m); j < m; ++j) {
    if (std::fabs(f[j]) > 1e-14 * peak) return false;
  }
  return true;
}

}  // namespace

core::WaveState exact_free_n3(const core::RadialField& u0, const core::RadialField& u1, double t) {
  require(u0.grid() == u1.grid(), "exact_free_n3: u0 and u1 must share one grid");
  require(std::isfinite(t) && t >= 0.0, "exact_free_n3: t must be >= 0");
  u0.require_finite("exact_free_n3: u0");
  u1.require_finite("exact_free_n3: u1");
  const auto& grid = u0.grid();
  if (t == 0.0) return core::WaveState(0.0, u0, u1);

  const std::size_t m = grid.size();
  std::vector<double> phi(m), psi(m);
  for (std::size_t j = 0; j < m; ++j) {
    phi[j] = grid.node(j) * u0[j];
    psi[j] = grid.node(j) * u1[j];
  }
  const bool zero_tail = tail_vanished(u0.values()) && tail_vanished(u1.values());
  const OddCubic Phi(std::move(phi), grid.spacing(), zero_tail);
  const OddCubic Psi(std::move(psi), grid.spacing(), zero_tail);

  core::RadialField u = core::RadialField::zeros(grid);
  core::RadialField v = core::RadialField::zeros(grid);
  u[0] = Phi.eval(t, 1) + Psi.eval(t, 0);
  v[0] = Phi.eval(t, 2) + Psi.eval(t, 1);
  for (std::size_t j = 1; j < m; ++j) {
    const double r = grid.node(j);
    const double plus = r + t;
    const double minus = r - t;
    u[j] = (0.5 * (Phi.eval(plus, 0) + Phi.eval(minus, 0)) +
            0.5 * (Psi.antiderivative(plus) - Psi.antiderivative(minus))) /
           r;
    v[j] = (0.5 * (Phi.eval(plus, 1) - Phi.eval(minus, 1)) +
            0.5 * (Psi.eval(plus, 0) + Psi.eval(minus, 0))) /
           r;
  }
  return core::WaveState(t, std::move(u), std::move(v));
}

}  // namespace glassey::solver
