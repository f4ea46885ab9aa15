// SPDX-License-Identifier: MIT
#include <benchmark/benchmark.h>

#include "dirzeta/barnes.hpp"
#include "dirzeta/directional.hpp"
#include "dirzeta/exact.hpp"
#include "dirzeta/qengine.hpp"
#include "dirzeta/witten.hpp"

using namespace dirzeta;

namespace {

const char* preset_name(const benchmark::State& state) { return state.range(0) == 0 ? "so5" : "g2"; }

void BM_ValueAt(benchmark::State& state) {
  const Problem pr = preset_problem(preset_name(state));
  for (auto _ : state) benchmark::DoNotOptimize(value_at(pr));
}
BENCHMARK(BM_ValueAt)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DerivativeAt(benchmark::State& state) {
  const Problem pr = preset_problem(preset_name(state));
  for (auto _ : state) benchmark::DoNotOptimize(derivative_at(pr));
}
BENCHMARK(BM_DerivativeAt)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Q0 and Q1 for every context with |k| <= 2 and Pset of size <= 1.
void BM_QCoefficients(benchmark::State& state) {
  const Problem pr = preset_problem(preset_name(state));
  std::vector<QContext> ctxs;
  for (unsigned j = 0; j < pr.spec.Q; ++j) {
    for (const auto& pset : std::vector<std::vector<unsigned>>{{}, {0}, {1}}) {
      for (unsigned t = 0; t <= 2; ++t) {
        for (const auto& k : compositions(t, 2 - static_cast<unsigned>(pset.size()))) ctxs.push_back({&pr, j, pset, k});
      }
    }
  }
  for (auto _ : state) {
    for (const auto& c : ctxs) {
      benchmark::DoNotOptimize(q0(c));
      benchmark::DoNotOptimize(q1(c));
    }
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * ctxs.size()));
}
BENCHMARK(BM_QCoefficients)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BarnesDerivative(benchmark::State& state) {
  const unsigned m = static_cast<unsigned>(state.range(0));
  const std::vector<Rational> d{rat(1), rat(3, 2)}, w{rat(2, 3), rat(5, 4)};
  for (auto _ : state) benchmark::DoNotOptimize(barnes_derivative({1, 2}, m, d, w));
}
BENCHMARK(BM_BarnesDerivative)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Rg2Exact(benchmark::State& state) {
  const auto n = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rg2_exact(n));
}
BENCHMARK(BM_Rg2Exact)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ContinuationZeta(benchmark::State& state) {
  Problem pr;
  pr.spec = {1, 1, {{rat(1)}}, {rat(1)}};
  pr.dir = {{rat(0)}, {rat(1)}};
  pr.target = TargetPoint::zero(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(continuation_eval(pr, -0.5).value);
}
BENCHMARK(BM_ContinuationZeta)->Unit(benchmark::kMillisecond);

void BM_ContinuationSo5(benchmark::State& state) {
  const Problem pr = preset_problem("so5");
  ContinuationParams prm;
  prm.theta = 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(continuation_eval(pr, 0.7, prm).value);
}
BENCHMARK(BM_ContinuationSo5)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

// The packaged benchmark_main archive carries LTO bytecode from another compiler release.
BENCHMARK_MAIN();
