#include <benchmark/benchmark.h>

#include <cmath>

#include "folia/attractor.hpp"
#include "folia/conjugacy.hpp"
#include "folia/fixtures.hpp"
#include "folia/orbit.hpp"
#include "folia/rauzy.hpp"
#include "folia/sweep.hpp"
#include "folia/trace.hpp"
#include "support/generators.hpp"

using namespace folia;

static void BM_RationalMultiplyAdd(benchmark::State& state) {
  const Rational a(355, 113), b(-103993, 33102), c(1, 7);
  for (auto _ : state) benchmark::DoNotOptimize(a * b + c);
}
BENCHMARK(BM_RationalMultiplyAdd);

static void BM_FirstReturnRandomAiet(benchmark::State& state) {
  gen::Rng rng(1);
  auto t = gen::random_bijective_aiet(rng, static_cast<int>(state.range(0)));
  IntervalSet target(Interval(Rational(1, 5), Rational(3, 5)));
  for (auto _ : state) benchmark::DoNotOptimize(iet::first_return(t, target, 64));
}
BENCHMARK(BM_FirstReturnRandomAiet)->Arg(2)->Arg(4)->Arg(6);

static void BM_TraceDiscoLeaf(benchmark::State& state) {
  const auto disco = geom::disco_surface();
  for (auto _ : state) {
    benchmark::DoNotOptimize(geom::trace_leaf(disco, {0, {Rational(1, 3), Rational(1, 7)}}, geom::Direction(1, 3),
                                              static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_TraceDiscoLeaf)->Arg(16)->Arg(128);

static void BM_ClassifyDisco(benchmark::State& state) {
  const auto m = rv::disco_first_return(rv::direction_from_slope(gen::cantor_like_slope()));
  rv::ClassifyOptions o;
  o.max_depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rv::classify(m, o));
}
BENCHMARK(BM_ClassifyDisco)->Arg(20)->Arg(60);

static void BM_BuildAttractor(benchmark::State& state) {
  const auto f = rv::disco_first_return(rv::direction_from_slope(gen::cantor_like_slope())).to_partial();
  const Interval hole = IntervalSet(f.ambient()).subtract(f.image()).parts()[0];
  for (auto _ : state) benchmark::DoNotOptimize(attractor::build_attractor(f, hole, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildAttractor)->Arg(10)->Arg(20)->Arg(40);

static void BM_SweepDisco(benchmark::State& state) {
  const auto grid = rv::parse_grid("1/10:9/10:100");
  rv::ClassifyOptions o;
  for (auto _ : state) benchmark::DoNotOptimize(rv::sweep_disco(grid, o, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_SweepDisco)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_BuildH(benchmark::State& state) {
  const double r = 610.0 / 987.0;
  auto sample = conj::sample_orbit<double>([r](double x) { return std::fmod(x + r, 1.0); }, 0.0, 1.0,
                                           std::sqrt(2.0) - 1.0, static_cast<std::size_t>(state.range(0)));
  conj::ConjugacyOptions o;
  o.betas = conj::default_betas();
  for (auto _ : state) benchmark::DoNotOptimize(conj::build_h(sample, o));
}
BENCHMARK(BM_BuildH)->Arg(987);
BENCHMARK_MAIN();
