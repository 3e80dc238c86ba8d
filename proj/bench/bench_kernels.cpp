// Serial reference kernels against their OpenMP counterparts, plus one full
// solver run. Sizes are node counts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "glassey/kernels.hpp"
#include "glassey/solver/profile.hpp"
#include "glassey/solver/solver.hpp"

namespace k = glassey::kernels;

namespace {

std::vector<double> wave(std::size_t n, double shift) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = std::sin(1e-3 * static_cast<double>(j) + shift);
  return v;
}

template <bool Par>
void derivative(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto f = wave(n, 0.0);
  std::vector<double> out(n);
  for (auto _ : st) {
    if constexpr (Par) k::parallel::derivative(f, 1e-3, out);
    else k::serial::derivative(f, 1e-3, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Par>
void laplacian(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto f = wave(n, 0.0);
  std::vector<double> out(n);
  for (auto _ : st) {
    if constexpr (Par) k::parallel::laplacian(f, 1e-3, 3, out);
    else k::serial::laplacian(f, 1e-3, 3, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Par>
void weighted_sum_sq(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto f = wave(n, 0.0), w = wave(n, 1.0);
  for (auto _ : st) {
    double s = Par ? k::parallel::weighted_sum_sq(f, w) : k::serial::weighted_sum_sq(f, w);
    benchmark::DoNotOptimize(s);
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Par>
void power_nonlinearity(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto v = wave(n, 0.0), g = wave(n, 1.0);
  std::vector<double> out(n);
  for (auto _ : st) {
    if constexpr (Par) k::parallel::power_nonlinearity(v, g, 1.0, 0.5, 2.5, out);
    else k::serial::power_nonlinearity(v, g, 1.0, 0.5, 2.5, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Par>
void rk4_update(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto x = wave(n, 0.0);
  const auto a = wave(n, 0.5), b = wave(n, 1.0), c = wave(n, 1.5), d = wave(n, 2.0);
  for (auto _ : st) {
    if constexpr (Par) k::parallel::rk4_update(x, 1e-9, a, b, c, d);
    else k::serial::rk4_update(x, 1e-9, a, b, c, d);
    benchmark::DoNotOptimize(x.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void evolve_gaussian(benchmark::State& st) {
  const glassey::core::RadialGrid grid(20.0, static_cast<int>(st.range(0)));
  const auto data = glassey::solver::make_profile({}, grid);
  glassey::solver::EvolveOptions o;
  o.record_states = false;
  for (auto _ : st) {
    auto run = glassey::solver::evolve({3, 2.5, 1.0, 0.0}, data, 2.0, nullptr, o);
    benchmark::DoNotOptimize(run.peak_gradient);
  }
}

}  // namespace

#define GLASSEY_PAIR(fn)                                                 \
  BENCHMARK(fn<false>)->Name(#fn "/serial")->RangeMultiplier(8)->Range(1 << 12, 1 << 21); \
  BENCHMARK(fn<true>)->Name(#fn "/parallel")->RangeMultiplier(8)->Range(1 << 12, 1 << 21);

GLASSEY_PAIR(derivative)
GLASSEY_PAIR(laplacian)
GLASSEY_PAIR(weighted_sum_sq)
GLASSEY_PAIR(power_nonlinearity)
GLASSEY_PAIR(rk4_update)

BENCHMARK(evolve_gaussian)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
