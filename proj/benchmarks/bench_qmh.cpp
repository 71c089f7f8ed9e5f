#include <benchmark/benchmark.h>

#include "qmh/montecarlo.hpp"
#include "qmh/photonics.hpp"
#include "qmh/protocol.hpp"

namespace {

void BM_BuildDiscardPovm(benchmark::State& state) {
    for (auto _ : state) {
        auto model = qmh::protocol::build_discard_povm();
        benchmark::DoNotOptimize(model);
    }
}
BENCHMARK(BM_BuildDiscardPovm);

void BM_QQuantum(benchmark::State& state) {
    const auto model = qmh::protocol::build_discard_povm();
    const auto rho = qmh::protocol::DensityMatrix::pure(qmh::protocol::prepare_psi0());
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmh::protocol::q_quantum(model, rho));
    }
}
BENCHMARK(BM_QQuantum);

void BM_SimulateQuantum(benchmark::State& state) {
    const auto n = state.range(0);
    for (auto _ : state) {
        qmh::rng::RngStream rng(42, 0);
        auto trials = qmh::mc::simulate_quantum(n, 0.0, 1.0, rng);
        benchmark::DoNotOptimize(trials);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SimulateQuantum)->Arg(10000)->Arg(100000);

void BM_EstimateQ(benchmark::State& state) {
    qmh::rng::RngStream rng(42, 0);
    const auto trials = qmh::mc::simulate_quantum(100000, 0.0, 1.0, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmh::mc::estimate_q(trials, 0.95));
    }
}
BENCHMARK(BM_EstimateQ);

void BM_PhotonicRun(benchmark::State& state) {
    const auto circuit = qmh::photonics::design_discard_circuit();
    qmh::photonics::ModeState in;
    in.amps = qmh::protocol::prepare_psi0().amps;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmh::photonics::run_circuit(circuit, in));
    }
}
BENCHMARK(BM_PhotonicRun);

}  // namespace

BENCHMARK_MAIN();
