#include <doctest.h>

#include <cmath>
#include <vector>

#include "glassey/core/norms.hpp"
#include "glassey/errors.hpp"
#include "glassey/picard/picard.hpp"
#include "glassey/solver/profile.hpp"
#include "glassey/solver/solver.hpp"
#include "support.hpp"

using namespace glassey;
using namespace glassey::picard;
using core::ProblemSpec;
using core::RadialGrid;

namespace {

const ProblemSpec kSuper{3, 2.5, 1.0, 0.0};

solver::InitialData data(const RadialGrid& g, double eps, solver::Assignment a = solver::Assignment::to_u0) {
  return solver::make_profile(solver::DataProfile{solver::ProfileFamily::gaussian, eps, 1.0, 0.0, a, ""}, g);
}

solver::EvolveOptions strided() {
  solver::EvolveOptions o;
  o.sample_stride = 4;
  return o;
}

core::Trajectory free_run(const ProblemSpec& spec, const solver::InitialData& d, double T) {
  auto o = strided();
  o.linear_only = true;
  return solver::evolve(spec, d, T, nullptr, o).trajectory;
}

double worst_ratio(const std::vector<PicardTrace>& trace) {
  double worst = 0.0;
  for (std::size_t k = 1; k < trace.size(); ++k) worst = std::max(worst, trace[k].rho_step / trace[k - 1].rho_step);
  return worst;
}

}  // namespace

TEST_CASE("phi_map without nonlinearity returns the free solution") {
  const RadialGrid g(12.0, 600);
  const ProblemSpec none{3, 2.5, 0.0, 0.0};
  const auto d = data(g, 1.0);
  const auto u0 = free_run(none, d, 2.0);
  const auto junk = free_run(none, data(g, 3.0, solver::Assignment::split), 2.0);
  const auto out = phi_map(junk, d, none, 2.0, strided());
  CHECK(core::e_norms(out.minus(u0)).e1 == 0.0);

  const auto zero = data(g, 0.0);
  const auto z = phi_map(free_run(kSuper, zero, 2.0), zero, kSuper, 2.0, strided());
  CHECK(core::e_norms(z).e1 == 0.0);
}

TEST_CASE("phi_map is the free solution plus the Duhamel term") {
  const RadialGrid g(12.0, 600);
  const auto d = data(g, 0.5);
  const auto u = free_run(kSuper, d, 2.0);
  const auto phi = phi_map(u, d, kSuper, 2.0, strided());

  // Forcing rebuilt here: N[u] at each sample, linear in between.
  std::vector<core::RadialField> n_samples;
  for (const auto& s : u.states()) n_samples.push_back(solver::nonlinearity(s, kSuper));
  const double dt = u.dt_sample();
  solver::Forcing f;
  f.support_radius = d.support_radius;
  f.eval = [&](double t, std::span<double> out) {
    const std::size_t k = std::min(n_samples.size() - 2, static_cast<std::size_t>(std::floor(t / dt)));
    const double th = std::min(1.0, t / dt - static_cast<double>(k));
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] = n_samples[k][j] + th * (n_samples[k + 1][j] - n_samples[k][j]);
    }
  };
  const auto duh = solver::duhamel(f, 2.0, kSuper, g, strided());
  const auto lhs = phi.minus(u);
  const double scale = core::e_norms(duh).e1;
  CHECK(scale > 0.0);
  CHECK(core::e_norms(lhs.minus(duh)).e1 <= 1e-10 * scale);
}

TEST_CASE("phi_map preconditions") {
  const RadialGrid g(12.0, 600);
  const auto d = data(g, 0.5);
  const auto u = free_run(kSuper, d, 2.0);
  CHECK_THROWS_AS(phi_map(u, d, kSuper, 2.0), PreconditionViolation);
  CHECK_THROWS_AS(phi_map(u, data(RadialGrid(12.0, 700), 0.5), kSuper, 2.0, strided()), PreconditionViolation);
}

TEST_CASE("picard without nonlinearity converges after one correction") {
  const RadialGrid g(12.0, 600);
  PicardConfig c;
  c.evolve = strided();
  const auto r = picard_run(ProblemSpec{3, 2.5, 0.0, 0.0}, data(g, 0.3), 2.0, c);
  CHECK(r.converged);
  REQUIRE(r.trace.size() == 1);
  CHECK(r.trace[0].rho_step <= 1e-12);
  c.max_iters = 1;
  CHECK_THROWS_AS(picard_run(kSuper, data(g, 0.3), 2.0, c), PreconditionViolation);
}

TEST_CASE("small supercritical data contract and match the direct solve") {
  const RadialGrid g(16.0, 800);
  PicardConfig c;
  c.evolve = strided();
  std::vector<double> worst;
  for (double eps : {0.05, 0.1, 0.2}) {
    const auto d = data(g, eps);
    const auto r = picard_run(kSuper, d, 4.0, c);
    CHECK(r.converged);
    CHECK(r.weights.delta() == doctest::Approx(0.375));
    CHECK(r.weights.delta_prime() == doctest::Approx(0.125));
    worst.push_back(worst_ratio(r.trace));
    CHECK(worst.back() <= 0.9);
    for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k].iteration == r.trace[k - 1].iteration + 1);

    const auto again = phi_map(r.final, d, kSuper, 4.0, c.evolve);
    CHECK(rho(again, r.final, r.weights) <= 2 * c.tol * r.lambda1);

    const auto direct = solver::evolve(kSuper, d, 4.0, nullptr, c.evolve).trajectory;
    CHECK(core::e_norms(direct.minus(r.final)).e1 <= 1e-3 * r.lambda1);
  }
  // halving eps never makes the worst contraction factor larger
  CHECK(worst[0] <= worst[1]);
  CHECK(worst[1] <= worst[2]);
}

TEST_CASE("large data are reported as divergence") {
  const RadialGrid g(16.0, 400);
  PicardConfig c;
  c.evolve = strided();
  c.max_iters = 30;
  try {
    picard_run(kSuper, data(g, 4.0, solver::Assignment::to_u1), 4.0, c);
    FAIL("expected divergence");
  } catch (const PicardDivergence& e) {
    CHECK_FALSE(e.trace().empty());
  } catch (const Divergence&) {
    // the linear solve itself crossed the blow-up threshold
  }
}

TEST_CASE("smallness report") {
  const auto lam = testing::golden("core.txt", "lambda1_gauss_n3");
  const auto lap = testing::golden("core.txt", "gauss_lap_l2_n3");
  const RadialGrid g(20.0, static_cast<int>(lam.resolution));
  const auto d = data(g, 0.1);
  const auto rep = smallness_report(kSuper, d, 0.5, 1.0);
  const double l1 = 0.1 * lam.value, l2 = 0.1 * lap.value;
  CHECK(rep.regime == core::Regime::supercritical);
  CHECK(testing::rel_err(rep.lambda1, l1) <= lam.tolerance);
  CHECK(testing::rel_err(rep.lambda2, l2) <= lap.tolerance);
  CHECK(testing::rel_err(rep.quantity, std::sqrt(l1 * l2) + l2) <= 3 * lap.tolerance);

  const auto scaled = smallness_report(kSuper, data(g, 0.3), 0.5, 1.0);
  CHECK(scaled.quantity == doctest::Approx(3.0 * rep.quantity).epsilon(1e-13));
  CHECK(smallness_report(kSuper, data(g, 0.0), 0.5, 1.0).quantity == 0.0);

  const auto crit = smallness_report(ProblemSpec{3, 2.0}, d, 0.5, 0.75);
  CHECK(crit.quantity == doctest::Approx(std::sqrt(rep.lambda1 * rep.lambda2) +
                                         std::pow(rep.lambda1, 0.25) * std::pow(rep.lambda2, 0.75)));
  const auto sub = smallness_report(ProblemSpec{3, 1.5}, d, 0.5, 1.0);
  CHECK(sub.quantity == doctest::Approx(std::sqrt(rep.lambda1 * rep.lambda2)));
}

TEST_CASE("trace csv") {
  const auto dir = testing::scratch("picard_csv");
  const std::vector<PicardTrace> t{{1, 0.5, 1.0, 2.0, 3.0, 4.0}, {2, 0.25, 1.0, 2.0, 3.0, 4.0}};
  write_trace_csv(dir / "p.csv", t);
  CHECK(testing::slurp(dir / "p.csv") ==
        "# glassey-lab v1 picard\niteration,rho_step,e1,e2,le1,le2\n1,0.5,1,2,3,4\n2,0.25,1,2,3,4\n");
}
