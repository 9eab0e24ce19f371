#include <benchmark/benchmark.h>

#include <spinrotor/clifford.hpp>
#include <spinrotor/dirac_wave.hpp>
#include <spinrotor/pauli.hpp>
#include <spinrotor/quadrature.hpp>
#include <spinrotor/rotating_frame.hpp>

namespace {

using namespace spinrotor;

void BM_MatExpClosedForm(benchmark::State& state) {
  const DiracSet& dm = dirac_matrices(Representation::DiracPauli);
  const ComplexMatrix4 gen = ComplexMatrix4(0.3465735902799726 * dm.alpha2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mat_exp(gen));
  }
}
BENCHMARK(BM_MatExpClosedForm);

void BM_MatExpScalingSquaring(benchmark::State& state) {
  const DiracSet& dm = dirac_matrices(Representation::DiracPauli);
  const ComplexMatrix4 gen = ComplexMatrix4(
      0.3 * dm.alpha1 + 0.2 * dm.alpha2 * dm.alpha3 +
      std::complex<double>(0.0, 0.1) * dm.beta * dm.alpha2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mat_exp_scaling_squaring(gen));
  }
}
BENCHMARK(BM_MatExpScalingSquaring);

void BM_BuildTransform(benchmark::State& state) {
  FrameParams p;
  p.r = 1.0;
  p.Omega = 0.6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_transform(p));
  }
}
BENCHMARK(BM_BuildTransform);

void BM_FrameSpinorOperators(benchmark::State& state) {
  FrameParams p;
  p.r = 1.0;
  p.Omega = 0.6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(frame_spinor_operators(p));
  }
}
BENCHMARK(BM_FrameSpinorOperators);

void BM_CharacteristicRoots(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(characteristic_roots(2.0, 0.01, -0.625, 0.25));
  }
}
BENCHMARK(BM_CharacteristicRoots);

void BM_SingularPair(benchmark::State& state) {
  const WaveConfig cfg{-0.5, 0.0025, 0.25};
  // First use pays for the one-time convention calibration; keep it out of
  // the measured loop.
  benchmark::DoNotOptimize(singular_pair(cfg));
  for (auto _ : state) {
    benchmark::DoNotOptimize(singular_pair(cfg));
  }
}
BENCHMARK(BM_SingularPair);

void BM_IntegrateSpin(benchmark::State& state) {
  PauliConfig cfg;
  cfg.g = 2.0;
  cfg.H = 0.1;
  cfg.Hz = -0.5;
  cfg.Omega = 1.0;
  SpinVector s0;
  s0.s1 = 0.0;
  s0.s2 = 0.0;
  s0.s3 = 1.0;
  const double t_max = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_spin(s0, cfg, t_max, 0.01));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(t_max / 0.01));
}
BENCHMARK(BM_IntegrateSpin)->Arg(1)->Arg(10);

void BM_GaussHermite(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gauss_hermite(n));
  }
}
BENCHMARK(BM_GaussHermite)->Arg(16)->Arg(48)->Arg(96);

void BM_AssembleWavefunction(benchmark::State& state) {
  const WaveConfig cfg{-0.5, 0.0025, 0.25};
  const SingularPair pair = singular_pair(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        assemble_wavefunction(pair.plus, cfg, 0.3, -0.2, 0.1, 0.7));
  }
}
BENCHMARK(BM_AssembleWavefunction);

}  // namespace

BENCHMARK_MAIN();
