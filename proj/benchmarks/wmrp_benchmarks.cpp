#include <numbers>

#include <benchmark/benchmark.h>

#include "wmrp/control.hpp"
#include "wmrp/dynamics.hpp"
#include "wmrp/sim.hpp"

namespace {

using namespace wmrp;

Scenario ReferenceScenario() {
  Scenario sc;
  sc.initial = {20, 30, std::numbers::pi, std::numbers::pi / 4, 0.5, 0, -1.5, 0};
  return sc;
}

ReducedState ReferenceState() { return FullToReduced(ReferenceScenario().initial); }

void BM_ComputeAccelerations(benchmark::State& state) {
  const Params p;
  const ReducedState s = ReferenceState();
  const ControlInput u{1.0, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeAccelerations(s, u, p));
  }
}
BENCHMARK(BM_ComputeAccelerations);

void BM_ControlLaw(benchmark::State& state) {
  const Params p;
  const Gains g;
  const ReducedState s = ReferenceState();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeControl(s, g, p));
  }
}
BENCHMARK(BM_ControlLaw);

void BM_Rk4Step(benchmark::State& state) {
  const Params p;
  Controller controller(p, Gains{});
  ReducedState s = ReferenceState();
  auto rate = [&](double, const ReducedState& x) {
    return ComputeStateDerivative(x, controller(x).input, p);
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(Rk4Step(rate, s, 0.0, 1e-3));
  }
}
BENCHMARK(BM_Rk4Step);

void BM_Simulate(benchmark::State& state) {
  Scenario sc = ReferenceScenario();
  sc.t_final = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Simulate(sc));
  }
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
