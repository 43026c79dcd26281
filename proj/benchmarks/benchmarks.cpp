#include <numbers>
#include <random>

#include <benchmark/benchmark.h>

#include "pulseforge/dynamics.hpp"
#include "pulseforge/fidelity.hpp"
#include "pulseforge/gates.hpp"
#include "pulseforge/optimizer.hpp"

using namespace pulseforge;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SpinSystem fixture(int n) {
  SpinSystem sys;
  sys.n = n;
  sys.couplings = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    sys.shifts.push_back(kTwoPi * 1500.0 * (k - n / 2));
    sys.labels.push_back("S" + std::to_string(k + 1));
    if (k + 1 < n) sys.couplings(k, k + 1) = sys.couplings(k + 1, k) = 40.0;
  }
  return sys;
}

PulseSequence sample_sequence(int periods) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PulseSequence seq;
  for (int m = 0; m < periods; ++m) {
    PulsePeriod p;
    p.power = kTwoPi * 1e3 * (2.0 + 8.0 * unit(rng));
    p.offset = kTwoPi * 4000.0 * (2.0 * unit(rng) - 1.0);
    p.phase = kTwoPi * unit(rng);
    p.duration = 30e-6 + 50e-6 * unit(rng);
    seq.periods.push_back(p);
  }
  return seq;
}

void BM_PeriodPropagator(benchmark::State& state) {
  const SpinSystem sys = fixture(int(state.range(0)));
  const PulsePeriod p = sample_sequence(1).periods[0];
  for (auto _ : state)
    benchmark::DoNotOptimize(period_propagator(sys, p));
}
BENCHMARK(BM_PeriodPropagator)->Arg(2)->Arg(3)->Arg(4)->Arg(5);

void BM_NetPropagator(benchmark::State& state) {
  const SpinSystem sys = fixture(3);
  const PulseSequence seq = sample_sequence(int(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(net_propagator(sys, seq));
}
BENCHMARK(BM_NetPropagator)->Arg(3)->Arg(6)->Arg(12);

void BM_GateFidelityUnitary(benchmark::State& state) {
  const SpinSystem sys = fixture(3);
  const Operator target = standard_gate("rot(1,x,90)", sys);
  const Operator u = net_propagator(sys, sample_sequence(4));
  for (auto _ : state)
    benchmark::DoNotOptimize(gate_fidelity_unitary(target, u));
}
BENCHMARK(BM_GateFidelityUnitary);

void BM_GateFidelityStates(benchmark::State& state) {
  const int n = int(state.range(0));
  const SpinSystem sys = fixture(n);
  const Operator target = standard_gate("rot(1,x,90)", sys);
  const Operator u = net_propagator(sys, sample_sequence(3));
  const auto map = [&](const Operator& rho) { return evolve_state(rho, u); };
  for (auto _ : state)
    benchmark::DoNotOptimize(gate_fidelity_states(target, map, n));
}
BENCHMARK(BM_GateFidelityStates)->Arg(2)->Arg(3);

void BM_Objective(benchmark::State& state) {
  const SpinSystem sys = fixture(3);
  GateSpec gate;
  gate.target = standard_gate("rot(1,x,90)", sys);
  gate.name = "rot(1,x,90)";
  gate.max_power = kTwoPi * 12e3;
  gate.max_total_duration = 400e-6;
  gate.max_periods = 4;
  const PenaltyConfig pen = default_penalties(gate, sys);
  const ParamScaling scaling{pen.power_cap, pen.offset_cap,
                             pen.duration_cap / 4.0};
  const Eigen::VectorXd x = scaling.encode(sample_sequence(4));
  for (auto _ : state)
    benchmark::DoNotOptimize(objective(x, sys, gate, pen, scaling));
}
BENCHMARK(BM_Objective);

}  // namespace

BENCHMARK_MAIN();
