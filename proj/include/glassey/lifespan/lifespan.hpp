#pragma once

// Lifespan experiments: blow-up time against data size, and least-squares fits
// of the power-law and exponential-rate laws.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glassey/core/problem.hpp"
#include "glassey/solver/profile.hpp"
#include "glassey/solver/solver.hpp"

namespace glassey::lifespan {

struct PredictedLaw {
  core::Regime regime;
  /// Power-law exponent of T(eps) for p < p_c; NaN otherwise.
  double exponent;
  /// "global", "exponential" (log T ~ eps^{1-p}) or "power".
  std::string_view form;
};

/// p > p_c: global; p = p_c: exponential; p < p_c: T ~ eps^{-2(p-1)/(2-(n-1)(p-1))}.
PredictedLaw predicted_law(const core::ProblemSpec& spec);

struct LifespanConfig {
  /// Template; epsilon is replaced per run.
  solver::DataProfile profile{solver::ProfileFamily::gaussian, 1.0, 1.0, 0.0,
                              solver::Assignment::to_u1, ""};
  double r_max = 40.0;
  /// Resolutions, coarse to fine (2 or 3 entries).
  std::vector<int> ladder{1000, 2000};
  double horizon = 30.0;
  solver::EvolveOptions evolve{};

  void validate() const;
};

inline constexpr double kMaxDisagreement = 0.10;

struct LifespanRecord {
  double epsilon = 0.0;
  /// Blow-up time on the finest grid, or the horizon when censored.
  double t_observed = 0.0;
  bool censored = false;
  int num_cells = 0;
  /// |t_fine - t_next| / t_fine over the two finest grids.
  double agreement = 0.0;
  /// Non-empty when this run failed; such records carry NaN times.
  std::string error{};

  bool failed() const noexcept { return !error.empty(); }
  /// Uncensored, successful and resolution-consistent.
  bool fit_eligible() const noexcept {
    return !failed() && !censored && agreement <= kMaxDisagreement;
  }
};

LifespanRecord measure_lifespan(const core::ProblemSpec& spec, const LifespanConfig& config,
                                double epsilon);

/// One record per epsilon (strictly increasing), run concurrently and returned in
/// epsilon order. A failing epsilon yields a record with `error` set.
std::vector<LifespanRecord> sweep(const core::ProblemSpec& spec, const LifespanConfig& config,
                                  std::span<const double> epsilons);

enum class FitModel { power_law, exponential_rate };
enum class Verdict { consistent, inconsistent };

std::string_view to_string(FitModel model);
std::string_view to_string(Verdict verdict);

struct FitResult {
  FitModel model;
  double slope;
  double intercept;
  double r_squared;
  /// Predicted slope (NaN for the exponential model, whose rate constant is unknown).
  double predicted_slope;
  double tolerance;
  /// Power-law r^2 on the same points (exponential model only).
  double competing_r_squared;
  Verdict verdict;
  std::size_t points;
};

/// Ordinary least squares y = slope x + intercept.
struct LineFit {
  double slope;
  double intercept;
  double r_squared;
};
LineFit least_squares(std::span<const double> x, std::span<const double> y);

/// log t against log eps over the eligible records; consistent when
/// |slope - predicted| <= 0.2 |predicted|. InsufficientData with fewer than 4
/// eligible records or more than half of the records censored.
FitResult fit_power(std::span<const LifespanRecord> records, double predicted_slope);

/// log t against eps^{1-p}; consistent when its r^2 exceeds the power-law r^2.
FitResult fit_exponential(std::span<const LifespanRecord> records, const core::ProblemSpec& spec);

/// Columns epsilon, t_observed, censored, num_cells, agreement.
void write_sweep_csv(const std::filesystem::path& path, std::span<const LifespanRecord> records);

/// Columns model, slope, intercept, r_squared, predicted_slope, verdict.
void write_fit_csv(const std::filesystem::path& path, std::span<const FitResult> fits);

}  // namespace glassey::lifespan
