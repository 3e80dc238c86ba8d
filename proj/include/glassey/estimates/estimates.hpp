#pragma once

// Numerical checks of the functional inequalities behind the local-energy
// method: Hardy, trace, pointwise decay, KSS (homogeneous and forced) and the
// energy inequality. Each check returns the ratio LHS/RHS for one input.

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glassey/core/grid.hpp"
#include "glassey/core/trajectory.hpp"
#include "glassey/solver/solver.hpp"

namespace glassey::estimates {

enum class LemmaId { hardy, trace, trace_variant, decay, kss_hom, kss_inhom, energy_ineq };

std::string_view to_string(LemmaId id);
LemmaId parse_lemma(std::string_view text);

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// One evaluated inequality. Parameters that do not apply are NaN.
struct IneqSample {
  LemmaId lemma = LemmaId::hardy;
  int n = 0;
  double s = kNaN;
  double s1 = kNaN;
  double s2 = kNaN;
  double delta = kNaN;
  double delta_prime = kNaN;
  double horizon = kNaN;
  std::optional<std::uint64_t> seed{};
  double ratio = 0.0;
  /// Asserted constant; NaN when the inequality has none.
  double bound = kNaN;
  double tol = 0.0;
  /// Per-term breakdown (LE components for the KSS checks).
  std::map<std::string, double> components{};

  bool violation() const noexcept { return bound == bound && ratio > bound * (1.0 + tol); }
};

/// Sum of num_terms Gaussians a exp(-((r-c)/w)^2) with c in [0, r_max/2],
/// w in [0.2, 2], a in [-1, 1], drawn from mt19937_64(seed).
core::RadialField random_radial(std::uint64_t seed, const core::RadialGrid& grid, int num_terms);

/// random_radial times the cutoff exp(1 - 1/(1 - (r/R)^2)), R = 3 r_max / 4.
core::RadialField random_compact(std::uint64_t seed, const core::RadialGrid& grid, int num_terms);

/// ||r^-s f|| / (||f||^{1-s} ||d_r f||^s), bound (2/(n-2s))^s for s >= 1/2 and
/// (2/(n-1))^s below. Requires 0 <= s <= 1 (s < 1 for n = 2).
IneqSample hardy_check(const core::RadialField& f, int n, double s);

/// sup_r r^{n/2-s} ||f(r.)||_{L^2_omega} / (||f||^{1-s} ||d_r f||^s); no bound.
/// Requires 1/2 <= s <= 1 (s < 1 for n = 2).
IneqSample trace_check(const core::RadialField& f, int n, double s);

/// sup_r r^s ||f(r.)||_{L^2_omega} / (||r^{s-(n-1)/2} f|| ||r^{s-(n-1)/2} d_r f||)^{1/2},
/// bound sqrt(2). Throws NonIntegrable when f has not decayed by r_max.
IneqSample trace_variant_check(const core::RadialField& f, int n, double s);

/// Empirical constant of |du| <= C r^{s2-n/2} <r>^{s1-s2} (E1^{1-s1}E2^{s1} + E1^{1-s2}E2^{s2})
/// over all samples with r > 0. Requires the supercritical window for traj.problem().
IneqSample decay_envelope_check(const core::Trajectory& traj, double s1, double s2);

/// Free wave from (u0, u1) solved once up to max(T_list); for each T the ratio
/// (E1 + LE1(T)) / Lambda1. Bound on every sample: 1.25 x the ratio at the smallest T.
std::vector<IneqSample> kss_hom_check(const core::RadialField& u0, const core::RadialField& u1,
                                      int n, double delta, double delta_prime,
                                      std::span<const double> horizons,
                                      const solver::EvolveOptions& options = {});

/// F(t, r) = amplitude * bump((r - center)/width) * bump(2t/duration - 1),
/// bump(x) = exp(-1/(1-x^2)) on |x| < 1.
struct ForcingSpec {
  double amplitude = 1.0;
  double width = 1.0;
  double center = 0.0;
  double duration = 0.5;

  void validate() const;
  double value(double t, double r) const;
  double support_radius() const { return center + width; }
  solver::Forcing forcing(const core::RadialGrid& grid) const;
};

/// A forced run together with its forcing sampled at the trajectory's times.
struct ForcedRun {
  core::Trajectory trajectory;
  core::FieldHistory forcing;
};

/// Linear solve of box u = F from data (u0, u1) up to t_end.
ForcedRun forced_linear_run(const ForcingSpec& f, const core::RadialField& u0,
                            const core::RadialField& u1, int n, double t_end,
                            const solver::EvolveOptions& options = {});

/// Zero-data response to F; ratio (E1 + LE1(T)) / lestar_upper(F) for each T.
/// Bound as in kss_hom_check. PreconditionViolation for n = 2.
std::vector<IneqSample> kss_inhom_check(const ForcingSpec& f, const core::RadialGrid& grid, int n,
                                        double delta, double delta_prime,
                                        std::span<const double> horizons,
                                        const solver::EvolveOptions& options = {});

/// sup_t ||du(t)||^2 / (||du(0)||^2 + int_0^T int |du||F| dx dt), bound 2 with tol 0.025.
/// The forcing history must be sampled like the trajectory.
IneqSample energy_ineq_check(const core::Trajectory& traj, const core::FieldHistory& forcing);

/// A batch of randomized single-field checks.
struct SuiteConfig {
  LemmaId lemma = LemmaId::hardy;
  int n = 3;
  double s = 1.0;
  int samples = 200;
  std::uint64_t base_seed = 1;
  double r_max = 20.0;
  int num_cells = 4000;
  double tol = 1e-3;
};

/// Sample i uses seed base_seed + i and 1 + i % 6 Gaussian terms (compact ones for
/// trace_variant). Samples run concurrently; the result is in seed order. For the
/// trace lemma `bound` carries the running maximum and is never asserted.
std::vector<IneqSample> run_suite(const SuiteConfig& config);

std::size_t count_violations(std::span<const IneqSample> samples);

/// Columns lemma_id, n, s, s1, s2, delta, delta_prime, T, seed, ratio, bound, violation.
void write_samples_csv(const std::filesystem::path& path, std::string_view subcommand,
                       std::span<const IneqSample> samples);

}  // namespace glassey::estimates
