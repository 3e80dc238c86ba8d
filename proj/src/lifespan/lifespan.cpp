#include "glassey/lifespan/lifespan.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "glassey/errors.hpp"
#include "glassey/io/csv.hpp"

namespace glassey::lifespan {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Points {
  std::vector<double> log_eps, eps, log_t;
};

Points eligible_points(std::span<const LifespanRecord> records) {
  std::size_t censored = 0;
  for (const auto& r : records) censored += r.censored ? 1 : 0;
  if (2 * censored > records.size()) {
    std::ostringstream os;
    os << "fit: " << censored << " of " << records.size() << " records are censored";
    throw InsufficientData(os.str());
  }
  Points pts;
  for (const auto& r : records) {
    if (!r.fit_eligible()) continue;
    require(r.epsilon > 0.0 && r.t_observed > 0.0, "fit: records need eps > 0 and t > 0");
    pts.eps.push_back(r.epsilon);
    pts.log_eps.push_back(std::log(r.epsilon));
    pts.log_t.push_back(std::log(r.t_observed));
  }
  if (pts.eps.size() < 4) {
    std::ostringstream os;
    os << "fit: " << pts.eps.size() << " eligible records, need at least 4";
    throw InsufficientData(os.str());
  }
  return pts;
}

}  // namespace

PredictedLaw predicted_law(const core::ProblemSpec& spec) {
  const auto regime = core::classify(spec);
  switch (regime) {
    case core::Regime::supercritical: return {regime, kNaN, "global"};
    case core::Regime::critical: return {regime, kNaN, "exponential"};
    case core::Regime::subcritical: break;
  }
  const double q = spec.p - 1.0;
  return {regime, -2.0 * q / (2.0 - (spec.n_dim - 1) * q), "power"};
}

void LifespanConfig::validate() const {
  profile.validate();
  require(ladder.size() >= 2 && ladder.size() <= 3, "lifespan: ladder needs 2 or 3 resolutions");
  require(std::is_sorted(ladder.begin(), ladder.end()) &&
              std::adjacent_find(ladder.begin(), ladder.end()) == ladder.end(),
          "lifespan: ladder must be strictly increasing");
  require(std::isfinite(horizon) && horizon > 0.0, "lifespan: horizon must be positive");
  require(std::isfinite(r_max) && r_max > 0.0, "lifespan: r_max must be positive");
}

LifespanRecord measure_lifespan(const core::ProblemSpec& spec, const LifespanConfig& config,
                                double epsilon) {
  config.validate();
  require(std::isfinite(epsilon) && epsilon >= 0.0, "measure_lifespan: eps must be >= 0");
  solver::DataProfile profile = config.profile;
  profile.epsilon = epsilon;

  std::vector<double> times;
  bool fine_censored = false;
  for (int cells : config.ladder) {
    const core::RadialGrid grid(config.r_max, cells);
    const auto data = solver::make_profile(profile, grid);
    solver::EvolveOptions options = config.evolve;
    options.record_states = false;
    const auto run = solver::evolve(spec, data, config.horizon, nullptr, options);
    fine_censored = run.status == solver::SolveStatus::completed;
    times.push_back(fine_censored ? config.horizon : *run.t_blowup);
  }
  LifespanRecord rec;
  rec.epsilon = epsilon;
  rec.t_observed = times.back();
  rec.censored = fine_censored;
  rec.num_cells = config.ladder.back();
  rec.agreement = std::fabs(times.back() - times[times.size() - 2]) / times.back();
  return rec;
}

std::vector<LifespanRecord> sweep(const core::ProblemSpec& spec, const LifespanConfig& config,
                                  std::span<const double> epsilons) {
  for (std::size_t i = 1; i < epsilons.size(); ++i) {
    require(epsilons[i] > epsilons[i - 1], "sweep: epsilons must be strictly increasing");
  }
  std::vector<LifespanRecord> out(epsilons.size());
  const auto m = static_cast<std::ptrdiff_t>(epsilons.size());
#ifdef GLASSEY_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = measure_lifespan(spec, config, epsilons[k]);
    } catch (const std::exception& e) {
      out[k].epsilon = epsilons[k];
      out[k].t_observed = kNaN;
      out[k].agreement = kNaN;
      out[k].num_cells = config.ladder.empty() ? 0 : config.ladder.back();
      out[k].error = e.what();
    }
  }
  return out;
}

std::string_view to_string(FitModel model) {
  return model == FitModel::power_law ? "power_law" : "exponential_rate";
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::consistent ? "consistent" : "inconsistent";
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2, "least_squares: need >= 2 paired points");
  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DegenerateInput("least_squares: all x values coincide");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (slope * x[i] + intercept);
    ssr += e * e;
  }
  const double r2 = syy == 0.0 ? 1.0 : std::clamp(1.0 - ssr / syy, 0.0, 1.0);
  return {slope, intercept, r2};
}

FitResult fit_power(std::span<const LifespanRecord> records, double predicted_slope) {
  const auto pts = eligible_points(records);
  const auto f = least_squares(pts.log_eps, pts.log_t);
  const double tol = 0.2 * std::fabs(predicted_slope);
  const bool ok = std::fabs(f.slope - predicted_slope) <= tol;
  return {FitModel::power_law, f.slope, f.intercept, f.r_squared, predicted_slope, tol, kNaN,
          ok ? Verdict::consistent : Verdict::inconsistent, pts.eps.size()};
}

FitResult fit_exponential(std::span<const LifespanRecord> records, const core::ProblemSpec& spec) {
  spec.validate();
  require(core::classify(spec) == core::Regime::critical,
          "fit_exponential: the exponential law applies at p = p_c only");
  const auto pts = eligible_points(records);
  std::vector<double> x(pts.eps.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::pow(pts.eps[i], 1.0 - spec.p);
  const auto f = least_squares(x, pts.log_t);
  const auto power = least_squares(pts.log_eps, pts.log_t);
  const bool ok = f.r_squared > power.r_squared;
  return {FitModel::exponential_rate, f.slope, f.intercept, f.r_squared, kNaN, kNaN,
          power.r_squared, ok ? Verdict::consistent : Verdict::inconsistent, pts.eps.size()};
}

void write_sweep_csv(const std::filesystem::path& path, std::span<const LifespanRecord> records) {
  io::CsvWriter csv(path, "lifespan", {"epsilon", "t_observed", "censored", "num_cells", "agreement"});
  for (const auto& r : records) {
    auto row = csv.row();
    row << r.epsilon;
    io::cell_or_blank(row, r.t_observed);
    row << r.censored << r.num_cells;
    io::cell_or_blank(row, r.agreement);
  }
}

void write_fit_csv(const std::filesystem::path& path, std::span<const FitResult> fits) {
  io::CsvWriter csv(path, "lifespan",
                    {"model", "slope", "intercept", "r_squared", "predicted_slope", "verdict"});
  for (const auto& f : fits) {
    auto row = csv.row();
    row << to_string(f.model) << f.slope << f.intercept << f.r_squared;
    io::cell_or_blank(row, f.predicted_slope);
    row << to_string(f.verdict);
  }
}

}  // namespace glassey::lifespan
