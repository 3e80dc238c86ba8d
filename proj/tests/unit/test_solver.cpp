#include <doctest.h>

#include <cmath>

#include "glassey/core/norms.hpp"
#include "glassey/errors.hpp"
#include "glassey/solver/exact_n3.hpp"
#include "glassey/solver/profile.hpp"
#include "glassey/solver/solver.hpp"
#include "support.hpp"

using namespace glassey;
using namespace glassey::solver;
using core::ProblemSpec;
using core::RadialField;
using core::RadialGrid;

namespace {

const ProblemSpec kFree{3, 2.0, 0.0, 0.0};

InitialData gaussian_data(const RadialGrid& g, double eps = 1.0, Assignment a = Assignment::to_u0) {
  return make_profile(DataProfile{ProfileFamily::gaussian, eps, 1.0, 0.0, a, ""}, g);
}

double rel_l2_error(const RadialField& got, const RadialField& want) {
  return core::weighted_l2(got - want, 3, 0, 0) / core::weighted_l2(want, 3, 0, 0);
}

double linear_error(int cells, double t) {
  const RadialGrid g(12.0, cells);
  const auto data = gaussian_data(g);
  EvolveOptions o;
  o.linear_only = true;
  const auto out = evolve(kFree, data, t, nullptr, o);
  return rel_l2_error(out.trajectory.back().u, exact_free_n3(data.u0, data.u1, t).u);
}

Forcing bump_forcing(const RadialGrid& g, double amplitude) {
  Forcing f;
  f.support_radius = 1.0;
  f.eval = [g, amplitude](double t, std::span<double> out) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      const double r = g.node(j);
      out[j] = (r < 1.0 && t < 0.5) ? amplitude * std::exp(-1.0 / (1.0 - r * r)) * t * (0.5 - t) : 0.0;
    }
  };
  return f;
}

}  // namespace

TEST_CASE("profiles") {
  const RadialGrid g(20.0, 2000);
  const auto d = gaussian_data(g, 0.5, Assignment::split);
  CHECK(d.u0[0] == 0.5);
  CHECK(d.u1[0] == 0.5);
  CHECK(d.support_radius == doctest::Approx(6.07).epsilon(0.01));
  const auto bump = make_profile(DataProfile{ProfileFamily::smooth_bump, 1.0, 2.0, 1.0, Assignment::to_u1, ""}, g);
  CHECK(bump.u0[100] == 0.0);
  CHECK(bump.u1[100] == doctest::Approx(std::exp(-1.0)));  // r = 1 is the center
  CHECK(bump.u1[300] == 0.0);
  CHECK(bump.support_radius == 3.0);
  CHECK(gaussian_data(g, 0.0).support_radius == 0.0);
  CHECK_THROWS_AS(make_profile(DataProfile{ProfileFamily::gaussian, 1.0, 4.0, 0.0, Assignment::to_u0, ""}, g),
                  SupportOverflow);
  CHECK_THROWS_AS((DataProfile{ProfileFamily::gaussian, -1.0}.validate()), PreconditionViolation);
  CHECK(parse_family(to_string(ProfileFamily::smooth_bump)) == ProfileFamily::smooth_bump);
  CHECK(parse_assignment("split") == Assignment::split);
  CHECK_THROWS_AS(parse_family("box"), PreconditionViolation);
}

TEST_CASE("exact n=3 oracle reproduces its data and conserves energy") {
  const RadialGrid g(20.0, 2000);
  const auto d = gaussian_data(g);
  const auto s0 = exact_free_n3(d.u0, d.u1, 0.0);
  for (std::size_t j = 0; j < g.size(); j += 50) CHECK(s0.u[j] == doctest::Approx(d.u0[j]).epsilon(1e-8));
  const auto s3 = exact_free_n3(d.u0, d.u1, 3.0);
  // r u = (F(r+t) + F(r-t))/2 with F(s) = s exp(-s^2)
  const double r = 3.0;
  const double want = ((r + 3) * std::exp(-36.0) + 0.0) / (2 * r);
  CHECK(std::fabs(s3.u[300] - want) < 1e-8);
  CHECK(energy(s3, 3) == doctest::Approx(energy(s0, 3)).epsilon(1e-4));
}

TEST_CASE("linear solver converges to the exact solution at second order") {
  const double e1 = linear_error(300, 1.0), e2 = linear_error(600, 1.0), e3 = linear_error(1200, 1.0);
  CHECK(e3 < 1e-3);
  CHECK(testing::order(e1, e2) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(testing::order(e2, e3) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("linear energy is conserved") {
  const RadialGrid g(14.0, 2800);
  const auto data = gaussian_data(g, 1.0, Assignment::split);
  EvolveOptions o;
  o.linear_only = true;
  o.sample_stride = 20;
  const auto out = evolve(kFree, data, 5.0, nullptr, o);
  const double e0 = energy(out.trajectory[0], 3);
  for (const auto& s : out.trajectory.states()) CHECK(std::fabs(energy(s, 3) / e0 - 1.0) < 1e-4);
  const auto golden = testing::golden("solver.txt", "energy_gauss_n3");
  const RadialGrid gg(20.0, static_cast<int>(golden.resolution));
  const auto dg = gaussian_data(gg);
  CHECK(testing::rel_err(energy(core::WaveState(0.0, dg.u0, dg.u1), 3), golden.value) <= golden.tolerance);
}

TEST_CASE("sampling lands on t_end") {
  const RadialGrid g(12.0, 600);
  EvolveOptions o;
  o.sample_stride = 7;
  const auto out = evolve(kFree, gaussian_data(g), 1.3, nullptr, o);
  CHECK(out.status == SolveStatus::completed);
  CHECK(out.trajectory.back().time == doctest::Approx(1.3).epsilon(1e-12));
  CHECK(out.trajectory.dt_sample() == doctest::Approx(sample_interval(g, 1.3, o)).epsilon(1e-14));
  const auto zero = evolve(kFree, gaussian_data(g), 0.0, nullptr, o);
  CHECK(zero.trajectory.size() == 1);
}

TEST_CASE("causality and option preconditions") {
  const RadialGrid g(10.0, 500);
  CHECK_THROWS_AS(evolve(kFree, gaussian_data(g), 3.0), PreconditionViolation);
  EvolveOptions bad;
  bad.cfl = 0.0;
  CHECK_THROWS_AS(evolve(kFree, gaussian_data(g), 1.0, nullptr, bad), PreconditionViolation);
  bad = {};
  bad.sample_stride = 0;
  CHECK_THROWS_AS(evolve(kFree, gaussian_data(g), 1.0, nullptr, bad), PreconditionViolation);
  auto nan_data = gaussian_data(g);
  nan_data.u0[4] = std::nan("");
  CHECK_THROWS_AS(evolve(kFree, nan_data, 1.0), NonFiniteInput);
}

TEST_CASE("finite propagation speed") {
  const RadialGrid g(20.0, 2000);
  const auto data = make_profile(DataProfile{ProfileFamily::smooth_bump, 1.0, 1.0, 0.0, Assignment::to_u0, ""}, g);
  EvolveOptions o;
  o.linear_only = true;
  const auto out = evolve(kFree, data, 4.0, nullptr, o);
  const auto& last = out.trajectory.back();
  double outside = 0.0, inside = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double r = g.node(j);
    if (r > 1.0 + 4.0 + 0.5) outside = std::max(outside, std::fabs(last.u[j]));
    else inside = std::max(inside, std::fabs(last.u[j]));
  }
  CHECK(outside < 1e-6 * inside);
}

TEST_CASE("linear evolution is time reversible") {
  const RadialGrid g(14.0, 2800);
  const auto data = gaussian_data(g, 1.0, Assignment::split);
  EvolveOptions o;
  o.linear_only = true;
  const auto fwd = evolve(kFree, data, 2.0, nullptr, o).trajectory.back();
  const InitialData back{fwd.u, -1.0 * fwd.v, data.support_radius + 2.0};
  const auto ret = evolve(kFree, back, 2.0, nullptr, o).trajectory.back();
  CHECK(rel_l2_error(ret.u, data.u0) < 1e-4);
  CHECK(rel_l2_error(-1.0 * ret.v, data.u1) < 1e-3);
}

TEST_CASE("nonlinear solve: small data survive, large data blow up") {
  const RadialGrid g(20.0, 1000);
  const ProblemSpec spec{3, 2.0, 1.0, 0.0};
  const auto small = evolve(spec, gaussian_data(g, 0.05, Assignment::to_u1), 5.0);
  CHECK(small.status == SolveStatus::completed);
  CHECK_FALSE(small.t_blowup.has_value());

  EvolveOptions o;
  o.record_states = false;
  const auto big = evolve(spec, gaussian_data(g, 5.0, Assignment::to_u1), 5.0, nullptr, o);
  CHECK(big.status == SolveStatus::blew_up);
  REQUIRE(big.t_blowup.has_value());
  CHECK(*big.t_blowup > 0.0);
  CHECK(*big.t_blowup < 1.0);
  CHECK(big.trajectory.size() == 1);
  CHECK(big.peak_gradient > o.blowup_threshold);
}

TEST_CASE("nonlinearity and energy helpers") {
  const RadialGrid g(10.0, 100);
  const auto u = RadialField::sample(g, [](double r) { return r * r; });
  const auto v = RadialField::sample(g, [](double r) { return -r; });
  const auto n = nonlinearity(core::WaveState(0.0, u, v), ProblemSpec{3, 2.0, 1.0, 0.5});
  // |v|^2 + 0.5 |2r|^2 = 3 r^2
  CHECK(n[50] == doctest::Approx(3 * 25.0).epsilon(1e-9));
  CHECK(energy(core::WaveState(0.0, RadialField::zeros(g), RadialField::zeros(g)), 3) == 0.0);
}

TEST_CASE("duhamel response is linear in the forcing") {
  const RadialGrid g(10.0, 500);
  const auto f1 = bump_forcing(g, 1.0);
  const auto f3 = bump_forcing(g, 3.0);
  const auto a = duhamel(f1, 2.0, kFree, g);
  const auto b = duhamel(f3, 2.0, kFree, g);
  CHECK(a.size() == b.size());
  const auto& ua = a.back().u;
  const auto& ub = b.back().u;
  for (std::size_t j = 0; j < g.size(); j += 10) CHECK(ub[j] == doctest::Approx(3.0 * ua[j]).epsilon(1e-12));
  CHECK(a[0].u[0] == 0.0);
  CHECK(core::weighted_l2(ua, 3, 0, 0) > 0.0);
}

TEST_CASE("local energy of the free wave against quadrature goldens") {
  const core::WeightParams base(0.3, 0.2, 1.0);
  for (const auto& [T, r_max] : {std::pair{2.0, 12.0}, std::pair{10.0, 20.0}}) {
    const auto tag = "_T" + std::to_string(static_cast<int>(T));
    const auto ref = testing::golden("solver.txt", "le1_local" + tag);
    const RadialGrid g(r_max, static_cast<int>(ref.resolution));
    EvolveOptions o;
    o.linear_only = true;
    o.sample_stride = 4;
    const auto traj = evolve(kFree, gaussian_data(g), T, nullptr, o).trajectory;
    const auto le = core::le_norm(traj, base.with_horizon(T));
    for (const auto& [name, value] : le.components) {
      const auto want = testing::golden("solver.txt", "le1_" + name + tag);
      INFO(name << tag << ": got " << value << ", golden " << want.value);
      CHECK(testing::rel_err(value, want.value) <= want.tolerance);
    }
  }
}
