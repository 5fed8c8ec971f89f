#include <benchmark/benchmark.h>

#include <cmath>

#include "ramanmem/bessel.hpp"
#include "ramanmem/kernel.hpp"
#include "ramanmem/linmap.hpp"
#include "ramanmem/oracle.hpp"

namespace {

using namespace ramanmem;

PhysicalParams bench_params(double c) {
  PhysicalParams p;
  p.optical_depth = 1800.0;
  p.gamma = 2.0 * M_PI * 8.5e6;
  p.detuning = 2.0 * M_PI * 18.4e9;
  p.pulse_energy = 4.8e-9;
  p.control_fwhm = 300e-12;
  p.signal_fwhm = 300e-12;
  p.signal_delay = 200e-12;
  p.kappa = c * c * p.detuning * p.detuning / (p.optical_depth * p.gamma * p.pulse_energy);
  return p;
}

void BM_BesselJ0(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j0(x));
    x += 0.37;
    if (x > 40.0) x = 0.0;
  }
}
BENCHMARK(BM_BesselJ0);

void BM_Store(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  TimeGrid grid(-1.6e-9, 1.9e-9, n);
  DepthGrid depth(n / 2);
  ControlProfile ctrl = build_control(bench_params(1.0), grid, 0.0);
  ComplexEnvelope a_in = gaussian_envelope(grid, 200e-12, 300e-12, 1.0);
  for (auto _ : state) {
    SpinWaveProfile b = store(a_in, ctrl, depth);
    benchmark::DoNotOptimize(b);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Store)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_Transmit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  TimeGrid grid(-1.6e-9, 1.9e-9, n);
  ControlProfile ctrl = build_control(bench_params(1.0), grid, 0.0);
  ComplexEnvelope a_in = gaussian_envelope(grid, 200e-12, 300e-12, 1.0);
  for (auto _ : state) {
    ComplexEnvelope t = transmit(a_in, ctrl);
    benchmark::DoNotOptimize(t);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Transmit)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_OracleOrder4(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  TimeGrid grid(-1.6e-9, 1.9e-9, n);
  DepthGrid depth(n / 2);
  ControlProfile ctrl = build_control(bench_params(1.0), grid, 0.0);
  ComplexEnvelope a_in = gaussian_envelope(grid, 200e-12, 300e-12, 1.0);
  for (auto _ : state) {
    PropagationResult r = propagate(a_in, ctrl, depth, {Scheme::order4, false});
    benchmark::DoNotOptimize(r);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OracleOrder4)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_DominantMode(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  TimeGrid grid(-1.6e-9, 1.9e-9, n);
  DepthGrid depth(std::max<std::size_t>(64, n / 2));
  ControlProfile ctrl = build_control(bench_params(1.5), grid, 0.0);
  LinearMap map = build_map(MapKind::total_forward, ctrl, depth);
  for (auto _ : state) {
    DominantMode mode = dominant_mode(map, 1e-8, 100000);
    benchmark::DoNotOptimize(mode);
  }
}
BENCHMARK(BM_DominantMode)->RangeMultiplier(2)->Range(128, 512);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
