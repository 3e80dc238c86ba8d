#include "glassey/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#ifdef GLASSEY_HAVE_OPENMP
#include <omp.h>
#endif

#include "glassey/core/norms.hpp"
#include "glassey/errors.hpp"
#include "glassey/estimates/estimates.hpp"
#include "glassey/io/csv.hpp"
#include "glassey/kernels.hpp"
#include "glassey/lifespan/lifespan.hpp"
#include "glassey/picard/picard.hpp"
#include "glassey/solver/profile.hpp"
#include "glassey/solver/solver.hpp"

namespace glassey::cli {
namespace {

namespace fs = std::filesystem;

// Assertion failures are reported through this exception so that the
// outputs are written before the process exits with kExitAssertion.
struct AssertionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
struct is_vector : std::false_type {};
template <typename T>
struct is_vector<std::vector<T>> : std::true_type {};

std::string fmt(double x) { return io::format_double(x); }
std::string fmt(int x) { return std::to_string(x); }
std::string fmt(std::uint64_t x) { return std::to_string(x); }
std::string fmt(bool x) { return x ? "true" : "false"; }
std::string fmt(const std::string& s) { return "\"" + s + "\""; }
template <typename T>
std::string fmt(const std::vector<T>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
  return out + "]";
}

// A subcommand whose options are also echoed, in declaration order, as the
// config section that reproduces the run.
class Command {
 public:
  Command(CLI::App& app, const std::string& name, const std::string& description)
      : name_(name), sub_(app.add_subcommand(name, description)) {
    sub_->configurable();
  }

  template <typename T>
  CLI::Option* option(const std::string& key, T& var, const std::string& description) {
    echo_.emplace_back(key, [&var] { return fmt(var); });
    auto* opt = sub_->add_option("--" + key, var, description)->capture_default_str();
    if constexpr (is_vector<T>::value) opt->delimiter(',');
    return opt;
  }

  CLI::Option* flag(const std::string& key, bool& var, const std::string& description) {
    echo_.emplace_back(key, [&var] { return fmt(var); });
    return sub_->add_flag("--" + key, var, description);
  }

  std::string echo() const {
    std::ostringstream os;
    os << "[" << name_ << "]\n";
    for (const auto& [key, value] : echo_) os << key << "=" << value() << "\n";
    return os.str();
  }

  CLI::App* app() const { return sub_; }
  const std::string& name() const { return name_; }

  std::function<void()> handler;

 private:
  std::string name_;
  CLI::App* sub_;
  std::vector<std::pair<std::string, std::function<std::string()>>> echo_;
};

struct Common {
  int n = 3;
  double p = 2.0;
  double a = 1.0;
  double b = 0.0;
  double rmax = 20.0;
  int cells = 2000;
  double cfl = 0.25;
  std::string out = "out";
  std::uint64_t seed = 1;
  int jobs = 0;

  core::ProblemSpec spec() const {
    core::ProblemSpec s{n, p, a, b};
    s.validate();
    return s;
  }
  core::RadialGrid grid() const { return core::RadialGrid(rmax, cells); }
};

void add_common(Command& cmd, Common& c) {
  cmd.option("n", c.n, "space dimension");
  cmd.option("p", c.p, "nonlinearity exponent");
  cmd.option("a", c.a, "coefficient of |u_t|^p");
  cmd.option("b", c.b, "coefficient of |grad u|^p");
  cmd.option("rmax", c.rmax, "outer radius of the grid");
  cmd.option("cells", c.cells, "number of grid cells");
  cmd.option("cfl", c.cfl, "time step / grid spacing");
  cmd.option("out", c.out, "output directory");
  cmd.option("seed", c.seed, "base random seed");
  cmd.option("jobs", c.jobs, "worker threads (0: runtime default)");
}

struct ProfileArgs {
  std::string family = "gaussian";
  double eps = 1.0;
  double width = 1.0;
  double center = 0.0;
  std::string assign = "to_u0";
  std::string file{};

  solver::DataProfile profile() const {
    solver::DataProfile d{solver::parse_family(family), eps, width, center,
                          solver::parse_assignment(assign), file};
    d.validate();
    return d;
  }
};

void add_profile(Command& cmd, ProfileArgs& p, bool with_eps = true) {
  cmd.option("family", p.family, "gaussian | smooth_bump | from_file");
  if (with_eps) cmd.option("eps", p.eps, "data amplitude");
  cmd.option("width", p.width, "profile width");
  cmd.option("center", p.center, "profile center");
  cmd.option("assign", p.assign, "to_u0 | to_u1 | split");
  cmd.option("file", p.file, "radial-field file for from_file");
}

fs::path prepare(const Common& c, const Command& cmd) {
  require(c.jobs >= 0, "--jobs must be >= 0");
#ifdef GLASSEY_HAVE_OPENMP
  if (c.jobs > 0) omp_set_num_threads(c.jobs);
#endif
  const fs::path out(c.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory " + out.string() + ": " + ec.message());
  std::ofstream cfg(out / "config.txt");
  if (!cfg) throw IoError("cannot write " + (out / "config.txt").string());
  cfg << cmd.echo();
  return out;
}

solver::EvolveOptions evolve_options(const Common& c, int stride) {
  solver::EvolveOptions o;
  o.cfl = c.cfl;
  o.sample_stride = stride;
  return o;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  Common common;
  ProfileArgs data;
  double t_end = 1.0;
  int stride = 10;
  bool linear = false;
};

void run_solve(const SolveArgs& s, const Command& cmd) {
  const auto out = prepare(s.common, cmd);
  const auto spec = s.common.spec();
  const auto grid = s.common.grid();
  const auto data = solver::make_profile(s.data.profile(), grid);
  auto options = evolve_options(s.common, s.stride);
  options.linear_only = s.linear;
  const auto result = solver::evolve(spec, data, s.t_end, nullptr, options);
  const auto& traj = result.trajectory;

  io::CsvWriter series(out / "solve_series.csv", "solve", {"time", "energy", "max_gradient"});
  std::vector<double> ur(grid.size());
  for (const auto& st : traj.states()) {
    kernels::derivative(st.u.values(), grid.spacing(), ur);
    series.row() << st.time << solver::energy(st, spec.n_dim)
                 << kernels::max_abs_pair(st.v.values(), ur);
  }
  io::CsvWriter final_state(out / "solve_final.csv", "solve", {"r", "u", "v"});
  const auto& last = traj.back();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    final_state.row() << grid.node(j) << last.u[j] << last.v[j];
  }
  io::CsvWriter summary(out / "solve_summary.csv", "solve",
                        {"status", "t_last_sample", "t_blowup", "peak_gradient"});
  auto row = summary.row();
  row << solver::to_string(result.status) << last.time;
  io::cell_or_blank(row, result.t_blowup.value_or(estimates::kNaN));
  row << result.peak_gradient;
  std::cout << "solve: " << solver::to_string(result.status);
  if (result.t_blowup) std::cout << " at t = " << *result.t_blowup;
  std::cout << "\n";
}

// ---------------------------------------------------------------- ineq

struct IneqArgs {
  Common common{.rmax = 20.0, .cells = 4000};
  std::string lemma = "hardy";
  double s = 1.0;
  int samples = 200;
  double tol = 1e-3;
};

void run_ineq(const IneqArgs& a, const Command& cmd) {
  const auto out = prepare(a.common, cmd);
  estimates::SuiteConfig cfg;
  cfg.lemma = estimates::parse_lemma(a.lemma);
  cfg.n = a.common.n;
  cfg.s = a.s;
  cfg.samples = a.samples;
  cfg.base_seed = a.common.seed;
  cfg.r_max = a.common.rmax;
  cfg.num_cells = a.common.cells;
  cfg.tol = a.tol;
  const auto samples = estimates::run_suite(cfg);
  estimates::write_samples_csv(out / "ineq.csv", "ineq", samples);
  const auto violations = estimates::count_violations(samples);
  double worst = 0.0;
  for (const auto& x : samples) worst = std::max(worst, x.ratio);
  std::cout << "ineq " << a.lemma << ": " << samples.size() << " samples, max ratio " << worst
            << ", " << violations << " violations\n";
  if (violations > 0) throw AssertionFailed(std::to_string(violations) + " inequality violations");
}

// ---------------------------------------------------------------- kss

struct KssArgs {
  Common common{.rmax = 110.0, .cells = 2200};
  ProfileArgs data;
  std::string mode = "hom";
  double delta = 0.3;
  double delta_prime = 0.2;
  std::vector<double> horizons{1.0, 10.0, 100.0};
  double f_width = 1.0;
  double f_duration = 0.5;
  int stride = 10;
};

void run_kss(const KssArgs& k, const Command& cmd) {
  const auto out = prepare(k.common, cmd);
  const auto grid = k.common.grid();
  const auto options = evolve_options(k.common, k.stride);
  std::vector<estimates::IneqSample> samples;
  if (k.mode == "hom") {
    const auto data = solver::make_profile(k.data.profile(), grid);
    samples = estimates::kss_hom_check(data.u0, data.u1, k.common.n, k.delta, k.delta_prime,
                                       k.horizons, options);
  } else if (k.mode == "inhom") {
    estimates::ForcingSpec f;
    f.amplitude = k.data.eps;
    f.width = k.f_width;
    f.duration = k.f_duration;
    samples = estimates::kss_inhom_check(f, grid, k.common.n, k.delta, k.delta_prime, k.horizons,
                                         options);
  } else {
    throw PreconditionViolation("--mode must be hom or inhom");
  }
  estimates::write_samples_csv(out / "kss.csv", "kss", samples);
  io::CsvWriter parts(out / "kss_components.csv", "kss", {"T", "component", "value"});
  for (const auto& s : samples) {
    for (const auto& [label, value] : s.components) parts.row() << s.horizon << label << value;
  }
  const auto violations = estimates::count_violations(samples);
  for (const auto& s : samples) {
    std::cout << "kss " << k.mode << " T=" << s.horizon << " ratio " << s.ratio << " (band "
              << s.bound << ")";
    if (s.violation()) {
      for (const auto& [label, value] : s.components) std::cout << " " << label << "=" << value;
    }
    std::cout << "\n";
  }
  if (violations > 0) throw AssertionFailed("KSS ratios leave the 25% band");
}

// ---------------------------------------------------------------- picard

struct PicardArgs {
  Common common{.p = 2.5, .rmax = 20.0, .cells = 2000};
  ProfileArgs data{.eps = 0.05};
  double horizon = 10.0;
  int max_iters = 20;
  double tol = 1e-10;
  double s1 = 0.5;
  double s2 = 1.0;
  int stride = 4;
  bool compare_direct = false;
};

void run_picard(const PicardArgs& a, const Command& cmd) {
  const auto out = prepare(a.common, cmd);
  const auto spec = a.common.spec();
  const auto grid = a.common.grid();
  const auto data = solver::make_profile(a.data.profile(), grid);
  picard::PicardConfig cfg;
  cfg.max_iters = a.max_iters;
  cfg.tol = a.tol;
  cfg.s1 = a.s1;
  cfg.s2 = a.s2;
  cfg.evolve = evolve_options(a.common, a.stride);
  const auto trace_path = out / "picard.csv";
  picard::PicardResult result = [&] {
    try {
      return picard::picard_run(spec, data, a.horizon, cfg);
    } catch (const picard::PicardDivergence& e) {
      picard::write_trace_csv(trace_path, e.trace());
      throw;
    }
  }();
  picard::write_trace_csv(trace_path, result.trace);

  double direct = estimates::kNaN;
  if (a.compare_direct) {
    const auto run = solver::evolve(spec, data, a.horizon, nullptr, cfg.evolve);
    if (run.status == solver::SolveStatus::completed) {
      direct = core::e_norms(run.trajectory.minus(result.final)).e1;
    }
  }
  const auto small = picard::smallness_report(spec, data, a.s1, a.s2);
  double worst = 0.0;
  for (std::size_t i = 1; i < result.trace.size(); ++i) {
    worst = std::max(worst, result.trace[i].rho_step / result.trace[i - 1].rho_step);
  }
  io::CsvWriter summary(out / "picard_summary.csv", "picard",
                        {"converged", "iterations", "lambda1", "lambda2", "smallness", "delta",
                         "delta_prime", "max_rho_ratio", "direct_e1_distance"});
  auto row = summary.row();
  row << result.converged << result.trace.size() << result.lambda1 << small.lambda2
      << small.quantity << result.weights.delta() << result.weights.delta_prime() << worst;
  io::cell_or_blank(row, direct);
  std::cout << "picard: " << (result.converged ? "converged" : "not converged") << " after "
            << result.trace.size() << " iterations, max rho ratio " << worst << "\n";
}

// ---------------------------------------------------------------- lifespan

struct LifespanArgs {
  Common common{.p = 1.5, .rmax = 44.0, .cells = 2000};
  ProfileArgs data{.assign = "to_u1"};
  std::vector<double> eps{0.7, 1.0, 1.4, 2.0, 2.8};
  std::vector<int> ladder{1000, 2000};
  double horizon = 35.0;
};

void run_lifespan(const LifespanArgs& a, const Command& cmd) {
  const auto out = prepare(a.common, cmd);
  const auto spec = a.common.spec();
  lifespan::LifespanConfig cfg;
  cfg.profile = a.data.profile();
  cfg.r_max = a.common.rmax;
  cfg.ladder = a.ladder;
  cfg.horizon = a.horizon;
  cfg.evolve = evolve_options(a.common, 10);
  const auto records = lifespan::sweep(spec, cfg, a.eps);
  lifespan::write_sweep_csv(out / "lifespan_sweep.csv", records);
  for (const auto& r : records) {
    std::cout << "eps=" << r.epsilon << " t=" << r.t_observed << (r.censored ? " (censored)" : "")
              << " agreement=" << r.agreement;
    if (r.failed()) std::cout << " error: " << r.error;
    std::cout << "\n";
  }
  const auto law = lifespan::predicted_law(spec);
  std::vector<lifespan::FitResult> fits;
  if (law.regime == core::Regime::subcritical) {
    fits.push_back(lifespan::fit_power(records, law.exponent));
  } else if (law.regime == core::Regime::critical) {
    fits.push_back(lifespan::fit_exponential(records, spec));
  }
  if (!fits.empty()) lifespan::write_fit_csv(out / "lifespan_fit.csv", fits);
  for (const auto& f : fits) {
    std::cout << to_string(f.model) << ": slope " << f.slope << ", r^2 " << f.r_squared;
    if (f.model == lifespan::FitModel::exponential_rate) {
      std::cout << " (power-law r^2 " << f.competing_r_squared << ")";
    } else {
      std::cout << " (predicted " << f.predicted_slope << ")";
    }
    std::cout << ", " << to_string(f.verdict) << "\n";
  }
}

// ---------------------------------------------------------------- norms

struct NormsArgs {
  Common common;
  ProfileArgs data;
  double horizon = 10.0;
  double delta = 0.3;
  double delta_prime = 0.2;
  int stride = 10;
  bool linear = false;
};

void run_norms(const NormsArgs& a, const Command& cmd) {
  const auto out = prepare(a.common, cmd);
  const auto spec = a.common.spec();
  const auto grid = a.common.grid();
  const auto data = solver::make_profile(a.data.profile(), grid);
  auto options = evolve_options(a.common, a.stride);
  options.linear_only = a.linear;
  const auto run = solver::evolve(spec, data, a.horizon, nullptr, options);
  if (run.status != solver::SolveStatus::completed) {
    std::ostringstream os;
    os << "solution blew up at t = " << *run.t_blowup << " before the horizon";
    throw HorizonMismatch(os.str());
  }
  const core::WeightParams w(a.delta, a.delta_prime, a.horizon);
  const auto report = core::norm_report(run.trajectory, w);
  const auto lambda = core::lambda_norms(data.u0, data.u1, spec.n_dim);
  io::CsvWriter csv(out / "norms.csv", "norms", {"quantity", "value"});
  csv.row() << "lambda1" << lambda.lambda1;
  csv.row() << "lambda2" << lambda.lambda2;
  csv.row() << "e1" << report.e1;
  csv.row() << "e2" << report.e2;
  csv.row() << "le1" << report.le1;
  csv.row() << "le2" << report.le2;
  for (const auto& [label, value] : report.components) csv.row() << "le1_" + label << value;
  std::cout << "norms: E1 " << report.e1 << ", LE1 " << report.le1 << "\n";
}

int exit_code(ErrorKind kind) {
  return kind == ErrorKind::divergence ? kExitAssertion : kExitPrecondition;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"glassey-lab: radial semilinear wave experiments"};
  app.set_config("--config", "", "read options from a config file (flags override it)");
  app.require_subcommand(1);
  app.fallthrough();

  SolveArgs solve_args;
  IneqArgs ineq_args;
  KssArgs kss_args;
  PicardArgs picard_args;
  LifespanArgs lifespan_args;
  NormsArgs norms_args;
  std::vector<Command> commands;
  commands.reserve(6);

  {
    auto& cmd = commands.emplace_back(app, "solve", "evolve radial data and record the trajectory");
    add_common(cmd, solve_args.common);
    add_profile(cmd, solve_args.data);
    cmd.option("t-end", solve_args.t_end, "final time");
    cmd.option("stride", solve_args.stride, "solver steps between samples");
    cmd.flag("linear", solve_args.linear, "drop the nonlinearity");
    cmd.handler = [&] { run_solve(solve_args, commands[0]); };
  }
  {
    auto& cmd = commands.emplace_back(app, "ineq", "randomized Hardy / trace inequality suites");
    add_common(cmd, ineq_args.common);
    cmd.option("lemma", ineq_args.lemma, "hardy | trace | trace_variant");
    cmd.option("s", ineq_args.s, "Sobolev order");
    cmd.option("samples", ineq_args.samples, "number of random fields");
    cmd.option("tol", ineq_args.tol, "relative tolerance on the bound");
    cmd.handler = [&] { run_ineq(ineq_args, commands[1]); };
  }
  {
    auto& cmd = commands.emplace_back(app, "kss", "KSS ratios across time horizons");
    add_common(cmd, kss_args.common);
    add_profile(cmd, kss_args.data);
    cmd.option("mode", kss_args.mode, "hom | inhom");
    cmd.option("delta", kss_args.delta, "weight exponent delta");
    cmd.option("delta-prime", kss_args.delta_prime, "weight exponent delta'");
    cmd.option("T", kss_args.horizons, "comma-separated horizons");
    cmd.option("f-width", kss_args.f_width, "forcing bump radius (inhom)");
    cmd.option("f-duration", kss_args.f_duration, "forcing duration (inhom)");
    cmd.option("stride", kss_args.stride, "solver steps between samples");
    cmd.handler = [&] { run_kss(kss_args, commands[2]); };
  }
  {
    auto& cmd = commands.emplace_back(app, "picard", "Picard iteration and its contraction");
    add_common(cmd, picard_args.common);
    add_profile(cmd, picard_args.data);
    cmd.option("T", picard_args.horizon, "horizon");
    cmd.option("max-iters", picard_args.max_iters, "iteration cap (2..50)");
    cmd.option("tol", picard_args.tol, "stop when rho <= tol * Lambda1");
    cmd.option("s1", picard_args.s1, "lower Sobolev order of the weights");
    cmd.option("s2", picard_args.s2, "upper Sobolev order of the weights");
    cmd.option("stride", picard_args.stride, "solver steps between samples");
    cmd.flag("compare-direct", picard_args.compare_direct, "also report distance to a direct solve");
    cmd.handler = [&] { run_picard(picard_args, commands[3]); };
  }
  {
    auto& cmd = commands.emplace_back(app, "lifespan", "blow-up time sweep and law fits");
    add_common(cmd, lifespan_args.common);
    add_profile(cmd, lifespan_args.data, false);
    cmd.option("eps", lifespan_args.eps, "comma-separated, strictly increasing amplitudes");
    cmd.option("ladder", lifespan_args.ladder, "comma-separated cell counts, coarse to fine");
    cmd.option("horizon", lifespan_args.horizon, "censoring horizon");
    cmd.handler = [&] { run_lifespan(lifespan_args, commands[4]); };
  }
  {
    auto& cmd = commands.emplace_back(app, "norms", "energy and local-energy norms of a solution");
    add_common(cmd, norms_args.common);
    add_profile(cmd, norms_args.data);
    cmd.option("T", norms_args.horizon, "horizon");
    cmd.option("delta", norms_args.delta, "weight exponent delta");
    cmd.option("delta-prime", norms_args.delta_prime, "weight exponent delta'");
    cmd.option("stride", norms_args.stride, "solver steps between samples");
    cmd.flag("linear", norms_args.linear, "drop the nonlinearity");
    cmd.handler = [&] { run_norms(norms_args, commands[5]); };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitPrecondition;
  }

  const Command* active = nullptr;
  for (const auto& cmd : commands) {
    if (cmd.app()->parsed()) active = &cmd;
  }
  if (active == nullptr) {
    std::cerr << app.help();
    return kExitPrecondition;
  }
  auto report = [&](const char* kind, const std::string& what) {
    std::cerr << kind << ": " << what << "\nparameters:\n" << active->echo();
  };
  try {
    active->handler();
  } catch (const AssertionFailed& e) {
    report("assertion failed", e.what());
    return kExitAssertion;
  } catch (const Error& e) {
    report("error", e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    report("internal error", e.what());
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace glassey::cli
