#include "glassey/estimates/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>

#include "glassey/core/calculus.hpp"
#include "glassey/core/norms.hpp"
#include "glassey/errors.hpp"
#include "glassey/io/csv.hpp"
#include "glassey/kernels.hpp"

namespace glassey::estimates {
namespace {

using core::RadialField;
using core::RadialGrid;

constexpr const char* kLemmaNames[] = {"hardy",  "trace",     "trace_variant", "decay",
                                       "kss_hom", "kss_inhom", "energy_ineq"};

// mt19937_64 output mapped to [0, 1) with 53 random bits; the standard
// distributions are implementation-defined, this mapping is not.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

double bump(double x) {
  if (std::fabs(x) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

void require_nonzero(const RadialField& f, const char* what) {
  f.require_finite(what);
  for (double x : f.values()) {
    if (x != 0.0) return;
  }
  throw DegenerateInput(std::string(what) + ": field is identically zero");
}

double l2(const RadialField& f, int n, double mu = 0.0) { return core::weighted_l2(f, n, mu, 0.0); }

// sqrt(||u_t||^2 + ||u_r||^2) at every sample.
std::vector<double> first_energy_profile(const core::Trajectory& traj) {
  const int n = traj.problem().n_dim;
  const auto w = core::radial_weights(traj.grid(), n, 0.0, 0.0);
  std::vector<double> ur(traj.grid().size());
  std::vector<double> out;
  out.reserve(traj.size());
  for (const auto& s : traj.states()) {
    kernels::derivative(s.u.values(), traj.grid().spacing(), ur);
    out.push_back(std::sqrt(kernels::weighted_sum_sq(s.v.values(), w) +
                            kernels::weighted_sum_sq(ur, w)));
  }
  return out;
}

double sup_until(const core::Trajectory& traj, const std::vector<double>& profile, double horizon) {
  double m = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj[k].time > horizon * (1.0 + 1e-12)) break;
    m = std::max(m, profile[k]);
  }
  return m;
}

void check_horizons(std::span<const double> horizons) {
  require(!horizons.empty(), "KSS check: empty T list");
  for (double t : horizons) require(std::isfinite(t) && t > 0.0, "KSS check: every T must be > 0");
}

// Sets the 25% band bound (relative to the smallest T) on a KSS family.
void apply_band(std::vector<IneqSample>& samples) {
  const auto ref = std::min_element(samples.begin(), samples.end(), [](const auto& x, const auto& y) {
    return x.horizon < y.horizon;
  });
  const double bound = 1.25 * ref->ratio;
  for (auto& s : samples) s.bound = bound;
}

}  // namespace

std::string_view to_string(LemmaId id) { return kLemmaNames[static_cast<int>(id)]; }

LemmaId parse_lemma(std::string_view text) {
  for (int i = 0; i < 7; ++i) {
    if (text == kLemmaNames[i]) return static_cast<LemmaId>(i);
  }
  throw PreconditionViolation("unknown lemma '" + std::string(text) + "'");
}

RadialField random_radial(std::uint64_t seed, const RadialGrid& grid, int num_terms) {
  require(num_terms >= 1 && num_terms <= 20, "random_radial: num_terms must be in [1, 20]");
  std::mt19937_64 rng(seed);
  struct Term {
    double center, width, amplitude;
  };
  std::vector<Term> terms(static_cast<std::size_t>(num_terms));
  for (auto& t : terms) {
    t.center = uniform(rng, 0.0, 0.5 * grid.r_max());
    t.width = uniform(rng, 0.2, 2.0);
    t.amplitude = uniform(rng, -1.0, 1.0);
  }
  return RadialField::sample(grid, [&](double r) {
    double sum = 0.0;
    for (const auto& t : terms) {
      const double x = (r - t.center) / t.width;
      sum += t.amplitude * std::exp(-x * x);
    }
    return sum;
  });
}

RadialField random_compact(std::uint64_t seed, const RadialGrid& grid, int num_terms) {
  RadialField f = random_radial(seed, grid, num_terms);
  const double radius = 0.75 * grid.r_max();
  for (std::size_t j = 0; j < f.size(); ++j) f[j] *= std::exp(1.0) * bump(grid.node(j) / radius);
  return f;
}

IneqSample hardy_check(const RadialField& f, int n, double s) {
  require(n >= 2, "hardy_check: n must be >= 2");
  require(s >= 0.0 && s <= 1.0, "hardy_check: need 0 <= s <= 1");
  require(n > 2 || s < 1.0, "hardy_check: s < 1 is required when n = 2");
  require_nonzero(f, "hardy_check");
  const double norm = l2(f, n);
  const double dnorm = l2(core::radial_derivative(f), n);
  if (s > 0.0 && dnorm == 0.0) throw DegenerateInput("hardy_check: d_r f vanishes");

  IneqSample out{.lemma = LemmaId::hardy};
  out.n = n;
  out.s = s;
  out.ratio = l2(f, n, -s) / (std::pow(norm, 1.0 - s) * std::pow(dnorm, s));
  out.bound = s >= 0.5 ? std::pow(2.0 / (n - 2.0 * s), s) : std::pow(2.0 / (n - 1.0), s);
  return out;
}

IneqSample trace_check(const RadialField& f, int n, double s) {
  require(n >= 2, "trace_check: n must be >= 2");
  require(s >= 0.5 && s <= 1.0, "trace_check: need 1/2 <= s <= 1");
  require(n > 2 || s < 1.0, "trace_check: s < 1 is required when n = 2");
  require_nonzero(f, "trace_check");
  const double dnorm = l2(core::radial_derivative(f), n);
  if (dnorm == 0.0) throw DegenerateInput("trace_check: d_r f vanishes");

  IneqSample out{.lemma = LemmaId::trace};
  out.n = n;
  out.s = s;
  out.ratio = core::sup_trace_norm(f, n, s) / (std::pow(l2(f, n), 1.0 - s) * std::pow(dnorm, s));
  return out;
}

IneqSample trace_variant_check(const RadialField& f, int n, double s) {
  require(n >= 2, "trace_variant_check: n must be >= 2");
  require(std::isfinite(s) && s >= 0.0, "trace_variant_check: need s >= 0");
  require_nonzero(f, "trace_variant_check");
  double peak = 0.0;
  for (double x : f.values()) peak = std::max(peak, std::fabs(x));
  for (std::size_t j = f.size() - 4; j < f.size(); ++j) {
    if (std::fabs(f[j]) > 1e-8 * peak) {
      throw NonIntegrable("trace_variant_check: sample has not decayed by r_max");
    }
  }
  const double mu = s - 0.5 * (n - 1);
  double lower, upper;
  try {
    lower = l2(f, n, mu);
    upper = l2(core::radial_derivative(f), n, mu);
  } catch (const PreconditionViolation& e) {
    throw NonIntegrable(std::string("trace_variant_check: ") + e.what());
  }
  if (upper == 0.0) throw DegenerateInput("trace_variant_check: d_r f vanishes");

  IneqSample out{.lemma = LemmaId::trace_variant};
  out.n = n;
  out.s = s;
  out.ratio = core::sup_weighted(f, n, s) / std::sqrt(lower * upper);
  out.bound = std::sqrt(2.0);
  return out;
}

IneqSample decay_envelope_check(const core::Trajectory& traj, double s1, double s2) {
  require(!traj.empty(), "decay_envelope_check: empty trajectory");
  const auto& spec = traj.problem();
  const int n = spec.n_dim;
  const double sc = 0.5 * n - 1.0 / (spec.p - 1.0);
  require(n >= 3, "decay_envelope_check: n must be >= 3");
  require(s1 >= 0.5 && s1 < sc && sc < s2 && s2 <= 1.0,
          "decay_envelope_check: need 1/2 <= s1 < n/2 - 1/(p-1) < s2 <= 1");
  const auto e = core::e_norms(traj);
  const double denom =
      std::pow(e.e1, 1.0 - s1) * std::pow(e.e2, s1) + std::pow(e.e1, 1.0 - s2) * std::pow(e.e2, s2);
  if (!(denom > 0.0)) throw DegenerateInput("decay_envelope_check: trajectory is identically zero");

  const auto& grid = traj.grid();
  std::vector<double> envelope(grid.size(), 0.0);
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double r = grid.node(j);
    envelope[j] = std::pow(r, 0.5 * n - s2) * std::pow(1.0 + r * r, 0.5 * (s2 - s1));
  }
  std::vector<double> ur(grid.size());
  double sup = 0.0;
  for (const auto& st : traj.states()) {
    kernels::derivative(st.u.values(), grid.spacing(), ur);
    for (std::size_t j = 1; j < grid.size(); ++j) {
      sup = std::max(sup, std::hypot(st.v[j], ur[j]) * envelope[j]);
    }
  }
  IneqSample out{.lemma = LemmaId::decay};
  out.n = n;
  out.s1 = s1;
  out.s2 = s2;
  out.horizon = traj.end_time();
  out.ratio = std::sqrt(core::sphere_area(n)) * sup / denom;
  return out;
}

std::vector<IneqSample> kss_hom_check(const RadialField& u0, const RadialField& u1, int n,
                                      double delta, double delta_prime,
                                      std::span<const double> horizons,
                                      const solver::EvolveOptions& options) {
  check_horizons(horizons);
  const core::WeightParams base(delta, delta_prime, horizons[0]);
  const auto lambda = core::lambda_norms(u0, u1, n).lambda1;
  if (!(lambda > 0.0)) throw DegenerateInput("kss_hom_check: data is identically zero");

  const core::ProblemSpec spec{n, 2.0, 0.0, 0.0};
  solver::EvolveOptions linear = options;
  linear.linear_only = true;
  const double t_max = *std::max_element(horizons.begin(), horizons.end());
  const auto run = solver::evolve(spec, solver::InitialData::from_fields(u0, u1), t_max, nullptr, linear);
  const auto energy = first_energy_profile(run.trajectory);

  std::vector<IneqSample> out;
  for (double t : horizons) {
    const auto le = core::le_norm(run.trajectory, base.with_horizon(t));
    const double e1 = sup_until(run.trajectory, energy, t);
    IneqSample s{.lemma = LemmaId::kss_hom};
    s.n = n;
    s.delta = delta;
    s.delta_prime = delta_prime;
    s.horizon = t;
    s.ratio = (e1 + le.total) / lambda;
    s.components = le.components;
    s.components["e1"] = e1;
    s.components["lambda1"] = lambda;
    out.push_back(std::move(s));
  }
  apply_band(out);
  return out;
}

void ForcingSpec::validate() const {
  require(std::isfinite(amplitude), "ForcingSpec: amplitude must be finite");
  require(std::isfinite(width) && width > 0.0, "ForcingSpec: width must be positive");
  require(std::isfinite(center) && center >= 0.0, "ForcingSpec: center must be >= 0");
  require(std::isfinite(duration) && duration > 0.0, "ForcingSpec: duration must be positive");
}

double ForcingSpec::value(double t, double r) const {
  return amplitude * bump((r - center) / width) * bump(2.0 * t / duration - 1.0);
}

solver::Forcing ForcingSpec::forcing(const RadialGrid& grid) const {
  validate();
  std::vector<double> shape(grid.size());
  for (std::size_t j = 0; j < shape.size(); ++j) {
    shape[j] = amplitude * bump((grid.node(j) - center) / width);
  }
  const double d = duration;
  return {[shape, d](double t, std::span<double> out) {
            const double g = bump(2.0 * t / d - 1.0);
            for (std::size_t j = 0; j < out.size(); ++j) out[j] = g * shape[j];
          },
          support_radius()};
}

ForcedRun forced_linear_run(const ForcingSpec& f, const RadialField& u0, const RadialField& u1,
                            int n, double t_end, const solver::EvolveOptions& options) {
  const core::ProblemSpec spec{n, 2.0, 0.0, 0.0};
  const auto& grid = u0.grid();
  const auto forcing = f.forcing(grid);
  solver::EvolveOptions linear = options;
  linear.linear_only = true;
  auto run = solver::evolve(spec, solver::InitialData::from_fields(u0, u1), t_end, &forcing, linear);
  core::FieldHistory history(grid, run.trajectory.dt_sample());
  std::vector<double> buf(grid.size());
  for (const auto& st : run.trajectory.states()) {
    forcing.eval(st.time, buf);
    history.append(RadialField(grid, buf));
  }
  return {std::move(run.trajectory), std::move(history)};
}

std::vector<IneqSample> kss_inhom_check(const ForcingSpec& f, const RadialGrid& grid, int n,
                                        double delta, double delta_prime,
                                        std::span<const double> horizons,
                                        const solver::EvolveOptions& options) {
  if (n == 2) {
    throw PreconditionViolation(
        "kss_inhom_check: the inhomogeneous KSS estimate is not available for n = 2");
  }
  require(n >= 3, "kss_inhom_check: n must be >= 3");
  check_horizons(horizons);
  f.validate();
  if (f.amplitude == 0.0) throw DegenerateInput("kss_inhom_check: forcing is identically zero");
  const core::WeightParams base(delta, delta_prime, horizons[0]);

  const double t_max = *std::max_element(horizons.begin(), horizons.end());
  const auto zero = RadialField::zeros(grid);
  const auto run = forced_linear_run(f, zero, zero, n, t_max, options);
  const auto energy = first_energy_profile(run.trajectory);

  std::vector<IneqSample> out;
  for (double t : horizons) {
    const auto w = base.with_horizon(t);
    const auto le = core::le_norm(run.trajectory, w);
    const auto terms = core::lestar_terms(run.forcing, w, n);
    const double lestar = std::min({terms[0], terms[1], terms[2]});
    const double e1 = sup_until(run.trajectory, energy, t);
    IneqSample s{.lemma = LemmaId::kss_inhom};
    s.n = n;
    s.delta = delta;
    s.delta_prime = delta_prime;
    s.horizon = t;
    s.ratio = (e1 + le.total) / lestar;
    s.components = le.components;
    s.components["e1"] = e1;
    s.components["lestar_upper"] = lestar;
    out.push_back(std::move(s));
  }
  apply_band(out);
  return out;
}

IneqSample energy_ineq_check(const core::Trajectory& traj, const core::FieldHistory& forcing) {
  require(!traj.empty(), "energy_ineq_check: empty trajectory");
  require(forcing.size() == traj.size() && forcing.grid() == traj.grid() &&
              std::fabs(forcing.dt_sample() - traj.dt_sample()) <= 1e-12 * traj.dt_sample(),
          "energy_ineq_check: forcing must be sampled like the trajectory");
  const int n = traj.problem().n_dim;
  const auto& grid = traj.grid();
  const auto w = core::radial_weights(grid, n, 0.0, 0.0);
  std::vector<double> ur(grid.size()), grad(grid.size()), absf(grid.size());
  std::vector<double> coupling(traj.size());
  double lhs = 0.0, initial = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& st = traj[k];
    st.u.require_finite("energy_ineq_check: u");
    st.v.require_finite("energy_ineq_check: v");
    forcing[k].require_finite("energy_ineq_check: forcing");
    kernels::derivative(st.u.values(), grid.spacing(), ur);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      grad[j] = std::hypot(st.v[j], ur[j]);
      absf[j] = std::fabs(forcing[k][j]);
    }
    const double e = kernels::weighted_sum_sq(grad, w);
    if (k == 0) initial = e;
    lhs = std::max(lhs, e);
    coupling[k] = kernels::weighted_dot(grad, absf, w);
  }
  const double horizon = traj.end_time() - traj.start_time();
  const double rhs =
      initial + (horizon > 0.0 ? core::time_trapezoid(coupling, traj.dt_sample(), horizon) : 0.0);
  if (!(rhs > 0.0)) throw DegenerateInput("energy_ineq_check: zero data and zero forcing");

  IneqSample out{.lemma = LemmaId::energy_ineq};
  out.n = n;
  out.horizon = horizon;
  out.ratio = lhs / rhs;
  out.bound = 2.0;
  out.tol = 0.025;
  return out;
}

std::vector<IneqSample> run_suite(const SuiteConfig& config) {
  require(config.samples >= 1, "run_suite: need at least one sample");
  require(config.lemma == LemmaId::hardy || config.lemma == LemmaId::trace ||
              config.lemma == LemmaId::trace_variant,
          "run_suite: only hardy, trace and trace_variant are randomized suites");
  const RadialGrid grid(config.r_max, config.num_cells);
  const auto count = static_cast<std::size_t>(config.samples);
  std::vector<IneqSample> out(count, IneqSample{.lemma = config.lemma});
  std::vector<std::exception_ptr> errors(count);

  const auto m = static_cast<std::ptrdiff_t>(count);
#ifdef GLASSEY_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const std::uint64_t seed = config.base_seed + k;
    const int terms = 1 + static_cast<int>(k % 6);
    try {
      switch (config.lemma) {
        case LemmaId::hardy:
          out[k] = hardy_check(random_radial(seed, grid, terms), config.n, config.s);
          break;
        case LemmaId::trace:
          out[k] = trace_check(random_radial(seed, grid, terms), config.n, config.s);
          break;
        default:
          out[k] = trace_variant_check(random_compact(seed, grid, terms), config.n, config.s);
          break;
      }
      out[k].seed = seed;
      out[k].tol = config.tol;
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (config.lemma == LemmaId::trace) {
    double running = 0.0;
    for (auto& s : out) s.bound = running = std::max(running, s.ratio);
  }
  return out;
}

std::size_t count_violations(std::span<const IneqSample> samples) {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [](const IneqSample& s) { return s.violation(); }));
}

void write_samples_csv(const std::filesystem::path& path, std::string_view subcommand,
                       std::span<const IneqSample> samples) {
  io::CsvWriter csv(path, subcommand,
                    {"lemma_id", "n", "s", "s1", "s2", "delta", "delta_prime", "T", "seed", "ratio",
                     "bound", "violation"});
  for (const auto& s : samples) {
    auto row = csv.row();
    row << to_string(s.lemma) << s.n;
    for (double x : {s.s, s.s1, s.s2, s.delta, s.delta_prime, s.horizon}) io::cell_or_blank(row, x);
    if (s.seed) {
      row << std::to_string(*s.seed);
    } else {
      row.blank();
    }
    row << s.ratio;
    io::cell_or_blank(row, s.bound);
    row << s.violation();
  }
}

}  // namespace glassey::estimates
