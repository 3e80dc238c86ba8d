// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Tolerances and run settings are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "glassey/cli/cli.hpp"
#include "glassey/core/norms.hpp"
#include "glassey/errors.hpp"
#include "glassey/estimates/estimates.hpp"
#include "glassey/io/golden.hpp"
#include "glassey/lifespan/lifespan.hpp"
#include "glassey/picard/picard.hpp"
#include "glassey/solver/exact_n3.hpp"
#include "glassey/solver/profile.hpp"
#include "glassey/solver/solver.hpp"

using namespace glassey;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

solver::DataProfile gaussian(double eps, solver::Assignment a) {
  return {solver::ProfileFamily::gaussian, eps, 1.0, 0.0, a, ""};
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// ---------------------------------------------------------------- 1

constexpr double kAc1MaxError = 1e-3;
constexpr double kAc1OrderLo = 1.8, kAc1OrderHi = 2.2;

double ac1_error(int cells) {
  const core::RadialGrid g(20.0, cells);
  const auto data = solver::make_profile(gaussian(1.0, solver::Assignment::to_u0), g);
  solver::EvolveOptions o;
  o.linear_only = true;
  const auto run = solver::evolve(core::ProblemSpec{3, 2.0, 0.0, 0.0}, data, 1.0, nullptr, o);
  const auto exact = solver::exact_free_n3(data.u0, data.u1, 1.0);
  return core::weighted_l2(run.trajectory.back().u - exact.u, 3, 0, 0) / core::weighted_l2(exact.u, 3, 0, 0);
}

Outcome ac1() {
  const double e1 = ac1_error(1000), e2 = ac1_error(2000), e4 = ac1_error(4000);
  const double o1 = std::log2(e1 / e2), o2 = std::log2(e2 / e4);
  const bool ok = e2 <= kAc1MaxError && o1 >= kAc1OrderLo && o1 <= kAc1OrderHi && o2 >= kAc1OrderLo &&
                  o2 <= kAc1OrderHi;
  return {ok, "rel L2 error " + num(e2) + " at 2000 cells; orders " + num(o1) + ", " + num(o2)};
}

// ---------------------------------------------------------------- 2

constexpr double kAc2MaxDrift = 1e-5;
// Drift is O(dr^2): 7.0e-5 at 2000 cells, 1.8e-5 at 4000, 4.4e-6 at 8000 on [0, 20].
constexpr int kAc2Cells = 8000;

Outcome ac2() {
  const core::RadialGrid g(20.0, kAc2Cells);
  const auto data = solver::make_profile(gaussian(1.0, solver::Assignment::to_u0), g);
  solver::EvolveOptions o;
  o.linear_only = true;
  o.cfl = 0.25;
  o.sample_stride = 100;
  const auto run = solver::evolve(core::ProblemSpec{3, 2.0, 0.0, 0.0}, data, 10.0, nullptr, o);
  const double e0 = solver::energy(run.trajectory[0], 3);
  double drift = 0.0;
  for (const auto& s : run.trajectory.states()) drift = std::max(drift, std::fabs(solver::energy(s, 3) / e0 - 1.0));
  return {drift <= kAc2MaxDrift, "max |E(t)/E(0) - 1| = " + num(drift) + " over " +
                                     std::to_string(run.trajectory.size()) + " samples"};
}

// ---------------------------------------------------------------- 3, 4

constexpr double kSuiteTol = 1e-3;

Outcome suites(estimates::LemmaId lemma, const std::vector<std::pair<int, double>>& cases) {
  std::ostringstream os;
  bool ok = true;
  for (const auto& [n, s] : cases) {
    estimates::SuiteConfig c;
    c.lemma = lemma;
    c.n = n;
    c.s = s;
    c.samples = 200;
    c.tol = kSuiteTol;
    const auto out = estimates::run_suite(c);
    const auto v = estimates::count_violations(out);
    double worst = 0.0;
    for (const auto& x : out) worst = std::max(worst, x.ratio / x.bound);
    ok = ok && v == 0 && out.size() == 200;
    os << "(n=" << n << ",s=" << s << "): " << v << " violations, max ratio/bound " << num(worst) << "; ";
  }
  return {ok, os.str()};
}

Outcome ac3() {
  auto r = suites(estimates::LemmaId::hardy, {{3, 0.5}, {3, 1.0}, {4, 1.0}, {2, 0.5}});
  const core::RadialGrid g(20.0, 4000);
  const auto f = core::RadialField::sample(g, [](double x) { return std::exp(-x * x); });
  const double ratio = estimates::hardy_check(f, 3, 1.0).ratio;
  const double want = 2.0 / std::sqrt(3.0);
  const bool golden_ok = std::fabs(ratio - want) / want <= 1e-3;
  r.pass = r.pass && golden_ok;
  r.detail += "Gaussian ratio " + num(ratio) + " vs 2/sqrt(3)";
  return r;
}

Outcome ac4() { return suites(estimates::LemmaId::trace_variant, {{2, 0.0}, {2, 0.125}, {3, 0.25}}); }

// ---------------------------------------------------------------- 5

constexpr double kAc5Band = 0.25;
const std::vector<double> kKssHorizons{1.0, 10.0, 100.0};

// Spread of the ratios across horizons: max / min - 1.
double band(const std::vector<estimates::IneqSample>& s) {
  double lo = s[0].ratio, hi = s[0].ratio;
  for (const auto& x : s) {
    lo = std::min(lo, x.ratio);
    hi = std::max(hi, x.ratio);
  }
  return hi / lo - 1.0;
}

Outcome ac5() {
  const core::RadialGrid g(110.0, 2200);
  solver::EvolveOptions o;
  const auto data = solver::make_profile(gaussian(1.0, solver::Assignment::to_u0), g);
  const auto hom = estimates::kss_hom_check(data.u0, data.u1, 3, 0.3, 0.2, kKssHorizons, o);
  const auto inhom = estimates::kss_inhom_check(estimates::ForcingSpec{}, g, 3, 0.3, 0.2, kKssHorizons, o);
  bool gate = false;
  try {
    estimates::kss_inhom_check(estimates::ForcingSpec{}, g, 2, 0.3, 0.2, kKssHorizons, o);
  } catch (const PreconditionViolation&) {
    gate = true;
  }
  const double bh = band(hom), bi = band(inhom);
  const bool ok = estimates::count_violations(hom) == 0 && estimates::count_violations(inhom) == 0 &&
                  bh <= kAc5Band && bi <= kAc5Band && gate;
  std::ostringstream os;
  os << "hom ratios";
  for (const auto& s : hom) os << " " << num(s.ratio);
  os << " (band " << num(100 * bh) << "%); inhom ratios";
  for (const auto& s : inhom) os << " " << num(s.ratio);
  os << " (band " << num(100 * bi) << "%); n=2 inhom " << (gate ? "rejected" : "ACCEPTED");
  return {ok, os.str()};
}

// ---------------------------------------------------------------- 6, 7

std::string describe(const std::vector<lifespan::LifespanRecord>& recs) {
  std::ostringstream os;
  for (const auto& r : recs) {
    os << "eps " << r.epsilon << ": T " << num(r.t_observed) << (r.censored ? " censored" : "")
       << " agree " << num(100 * r.agreement) << "%" << (r.failed() ? " error " + r.error : "") << "; ";
  }
  return os.str();
}

constexpr double kAc6MinR2 = 0.95;

Outcome ac6() {
  const core::ProblemSpec spec{3, 1.5, 1.0, 0.0};
  lifespan::LifespanConfig c;
  c.profile = gaussian(1.0, solver::Assignment::to_u1);
  c.r_max = 44.0;
  c.ladder = {1000, 2000};
  c.horizon = 35.0;
  const std::vector<double> eps{0.7, 1.0, 1.4, 2.0, 2.8};
  const auto recs = lifespan::sweep(spec, c, eps);
  const auto law = lifespan::predicted_law(spec);
  bool all_eligible = true;
  for (const auto& r : recs) all_eligible = all_eligible && r.fit_eligible();
  try {
    const auto fit = lifespan::fit_power(recs, law.exponent);
    const bool ok = all_eligible && fit.verdict == lifespan::Verdict::consistent && fit.r_squared >= kAc6MinR2;
    return {ok, describe(recs) + "slope " + num(fit.slope) + " (predicted " + num(law.exponent) + " +-20%), r^2 " +
                    num(fit.r_squared)};
  } catch (const InsufficientData& e) {
    return {false, describe(recs) + e.what()};
  }
}

// Critical battery: the widest eps window whose lifespans resolve (agreement
// <= 10%) on this ladder within the time budget. Smaller eps need grids far
// beyond it (eps 1.4 gives T ~ 109 and still 9.7% disagreement at 24800 cells).
Outcome ac7() {
  const core::ProblemSpec spec{3, 2.0, 1.0, 0.0};
  lifespan::LifespanConfig c;
  c.profile = gaussian(1.0, solver::Assignment::to_u1);
  c.r_max = 110.0;
  c.ladder = {4400, 8800};
  c.horizon = 100.0;
  const std::vector<double> eps{1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
  const auto recs = lifespan::sweep(spec, c, eps);
  try {
    const auto fit = lifespan::fit_exponential(recs, spec);
    const bool ok = fit.points >= 4 && fit.r_squared > fit.competing_r_squared;
    return {ok, describe(recs) + "exponential r^2 " + num(fit.r_squared) + " vs power-law r^2 " +
                    num(fit.competing_r_squared) + " over " + std::to_string(fit.points) + " points"};
  } catch (const InsufficientData& e) {
    return {false, describe(recs) + e.what()};
  }
}

// ---------------------------------------------------------------- 8

constexpr double kAc8MaxGrowth = 2.0;

Outcome ac8() {
  std::ostringstream os;
  bool ok = true;
  for (const auto& [n, p] : {std::pair{3, 2.5}, std::pair{2, 3.5}}) {
    const core::ProblemSpec spec{n, p, 1.0, 0.0};
    const core::RadialGrid g(210.0, 4200);
    solver::EvolveOptions o;
    o.sample_stride = 40;
    const auto small = solver::evolve(spec, solver::make_profile(gaussian(0.05, solver::Assignment::to_u1), g),
                                      200.0, nullptr, o);
    const double e1 = core::e_norms(small.trajectory).e1;
    const double e1_0 = std::sqrt(2.0 * solver::energy(small.trajectory[0], n));
    const double growth = e1 / e1_0;
    const bool censored = small.status == solver::SolveStatus::completed;

    solver::EvolveOptions quick = o;
    quick.record_states = false;
    const auto big = solver::evolve(spec, solver::make_profile(gaussian(5.0, solver::Assignment::to_u1), g), 200.0,
                                    nullptr, quick);
    const bool blew = big.status == solver::SolveStatus::blew_up && big.t_blowup && std::isfinite(*big.t_blowup);
    ok = ok && censored && growth <= kAc8MaxGrowth && blew;
    os << "(n=" << n << ",p=" << p << "): eps 0.05 " << (censored ? "survives to 200" : "BLEW UP")
       << ", sup E1 / E1(0) " << num(growth) << "; eps 5 "
       << (blew ? "blows up at t=" + num(*big.t_blowup) : std::string("no blow-up")) << "; ";
  }
  return {ok, os.str()};
}

// ---------------------------------------------------------------- 9

constexpr double kAc9MaxRatio = 0.9;
constexpr double kAc9MaxDistance = 1e-3;

Outcome ac9() {
  const core::ProblemSpec spec{3, 2.5, 1.0, 0.0};
  const core::RadialGrid g(20.0, 2000);
  const auto data = solver::make_profile(gaussian(0.05, solver::Assignment::to_u0), g);
  picard::PicardConfig c;
  c.evolve.sample_stride = 4;
  const auto r = picard::picard_run(spec, data, 10.0, c);
  double worst = 0.0;
  for (std::size_t k = 1; k < r.trace.size(); ++k) worst = std::max(worst, r.trace[k].rho_step / r.trace[k - 1].rho_step);
  const auto direct = solver::evolve(spec, data, 10.0, nullptr, c.evolve);
  const double dist = core::e_norms(direct.trajectory.minus(r.final)).e1 / r.lambda1;
  const bool ok = r.converged && r.trace.size() >= 2 && worst <= kAc9MaxRatio && dist <= kAc9MaxDistance;
  return {ok, std::to_string(r.trace.size()) + " iterations, max rho ratio " + num(worst) +
                  ", E1 distance to direct solve " + num(dist) + " Lambda1"};
}

// ---------------------------------------------------------------- 10

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int lab(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"glassey_lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  // run summaries would interleave with the criterion lines
  std::ostringstream sink;
  auto* saved = std::cout.rdbuf(sink.rdbuf());
  const int code = cli::run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(saved);
  return code;
}

Outcome ac10(const fs::path& root) {
  // Criterion configs expressed as CLI runs; each is run from flags, then again from its echoed config.
  const std::vector<std::vector<std::string>> runs{
      {"solve", "--n", "3", "--a", "0", "--rmax", "20", "--cells", "2000", "--t-end", "1", "--linear"},
      {"ineq", "--lemma", "hardy", "--n", "3", "--s", "1", "--samples", "200", "--rmax", "20", "--cells", "4000"},
      {"ineq", "--lemma", "trace_variant", "--n", "2", "--s", "0.125", "--samples", "200", "--rmax", "20", "--cells",
       "4000"},
      {"kss", "--mode", "hom", "--n", "3", "--delta", "0.3", "--delta-prime", "0.2", "--T", "1,10,100", "--rmax", "110",
       "--cells", "2200"},
      {"lifespan", "--n", "3", "--p", "1.5", "--a", "1", "--b", "0", "--assign", "to_u1", "--rmax", "44", "--ladder",
       "1000,2000", "--horizon", "35", "--eps", "0.7,1.0,1.4,2.0,2.8"},
      {"picard", "--n", "3", "--p", "2.5", "--a", "1", "--b", "0", "--eps", "0.05", "--assign", "to_u0", "--T", "10",
       "--rmax", "20", "--cells", "2000", "--stride", "4", "--compare-direct"},
  };
  std::ostringstream os;
  bool ok = true;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto a = root / ("run" + std::to_string(i) + "a"), b = root / ("run" + std::to_string(i) + "b");
    fs::remove_all(a);
    fs::remove_all(b);
    auto first = runs[i];
    first.insert(first.end(), {"--out", a.string()});
    const int c1 = lab(first);
    const int c2 = lab({"--config", (a / "config.txt").string(), runs[i][0], "--out", b.string(), "--jobs", "1"});
    std::size_t files = 0, same = 0;
    for (const auto& e : fs::directory_iterator(a)) {
      if (e.path().extension() != ".csv") continue;
      ++files;
      same += slurp(e.path()) == slurp(b / e.path().filename()) ? 1 : 0;
    }
    const bool run_ok = c1 == 0 && c2 == 0 && files > 0 && files == same;
    ok = ok && run_ok;
    os << runs[i][0] << " " << same << "/" << files << (run_ok ? "" : " MISMATCH") << "; ";
  }
  return {ok, os.str() + "(identical CSVs / CSVs per re-run)"};
}

}  // namespace

int main() {
  const fs::path root = fs::current_path() / "acceptance_runs";
  fs::create_directories(root);

  struct Criterion {
    int id;
    double budget_s;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, 30, ac1},   {2, 60, ac2},    {3, 60, ac3},   {4, 60, ac4},   {5, 600, ac5},
      {6, 1200, ac6}, {7, 1800, ac7},  {8, 1200, ac8}, {9, 600, ac9},  {10, 1800, [&] { return ac10(root); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o{false, ""};
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("AC%d %s  [%.1f s of %.0f s] %s%s\n", c.id, pass ? "PASS" : "FAIL", secs, c.budget_s, o.detail.c_str(),
                in_time ? "" : " (over time budget)");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
