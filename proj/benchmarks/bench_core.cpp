#include <benchmark/benchmark.h>

#include <vibwit/processmatrix.hpp>
#include <vibwit/signals.hpp>
#include <vibwit/special.hpp>
#include <vibwit/vibronic.hpp>
#include <vibwit/witness.hpp>

using namespace vibwit;

namespace {

PulseSpec pulse(double sigma) {
  PulseSpec p;
  p.sigma = sigma;
  p.carrier = 0.0;
  return p;
}

void BM_FranckCondonMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fc_matrix_1d(100.0, 200.0, 0.5, n, n));
}
BENCHMARK(BM_FranckCondonMatrix)->Arg(10)->Arg(20);

void BM_BuildSystem(benchmark::State& state) {
  const DimerModel m = make_preset("coherent-dimer");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_vibronic_system(m, n, 273.0));
}
BENCHMARK(BM_BuildSystem)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ShiftSiteEnergies(benchmark::State& state) {
  const VibronicSystem base = build_vibronic_system(make_preset("coherent-dimer"), 10, 273.0);
  double shift = 0.0;
  for (auto _ : state) {
    shift += 0.1;
    benchmark::DoNotOptimize(shift_site_energies(base, -300.0 + shift, -200.0 - shift));
  }
}
BENCHMARK(BM_ShiftSiteEnergies)->Unit(benchmark::kMillisecond);

void BM_ComputeChi(benchmark::State& state) {
  const VibronicSystem sys = build_vibronic_system(make_preset("coherent-dimer"), 10, 273.0);
  const auto times = linspace(0.0, 900.0, 512);
  for (auto _ : state) benchmark::DoNotOptimize(compute_chi(sys, times));
}
BENCHMARK(BM_ComputeChi)->Unit(benchmark::kMillisecond);

void BM_FinitePulsePumpProbe(benchmark::State& state) {
  const VibronicSystem sys = build_vibronic_system(make_preset("coherent-dimer"), 10, 273.0);
  const auto times = linspace(0.0, 900.0, 512);
  const double sigma = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(finite_pulse_pp(sys, pulse(sigma), pulse(sigma), times, PolarizationSetting{}));
  }
}
BENCHMARK(BM_FinitePulsePumpProbe)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_OrderedOverlap(benchmark::State& state) {
  double d = 0.01;
  for (auto _ : state) {
    d += 1e-6;
    benchmark::DoNotOptimize(special::ordered_overlap(d, 0.03, 2.0));
  }
}
BENCHMARK(BM_OrderedOverlap);

void BM_TransformTrace(benchmark::State& state) {
  SignalTrace s;
  s.axis = linspace(0.0, 900.0, 512);
  for (double t : s.axis) s.real.push_back(1.0 + 0.1 * std::cos(0.04 * t));
  for (auto _ : state) benchmark::DoNotOptimize(transform_trace(s));
}
BENCHMARK(BM_TransformTrace)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
