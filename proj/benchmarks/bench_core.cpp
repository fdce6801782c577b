#include <benchmark/benchmark.h>

#include "d4tuples/bounds.hpp"
#include "d4tuples/pell.hpp"
#include "d4tuples/reduction.hpp"
#include "d4tuples/tuples.hpp"
#include "d4tuples/verify.hpp"

namespace {

using d4::Integer;

void BM_SequenceWalk(benchmark::State& state) {
  d4::SequencePair sp = d4::sequence_pair(1, 96, -1);
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sp.v_at(m));
  }
}
BENCHMARK(BM_SequenceWalk)->Arg(100)->Arg(1000);

void BM_IntersectionScan(benchmark::State& state) {
  const std::size_t m_max = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(d4::find_intersections(1, 96, m_max));
  }
}
BENCHMARK(BM_IntersectionScan)->Arg(100)->Arg(500);

void BM_ClosedForm(benchmark::State& state) {
  d4::PairContext ctx = d4::PairContext::make(1, 96, -1);
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(d4::closed_form_v(ctx, m));
  }
}
BENCHMARK(BM_ClosedForm)->Arg(10)->Arg(50);

void BM_ReducePair(benchmark::State& state) {
  const Integer M0("43000000000000000000");
  for (auto _ : state) {
    benchmark::DoNotOptimize(d4::reduce_pair(1, 3360, M0, 5));
  }
}
BENCHMARK(BM_ReducePair);

void BM_B1Case(benchmark::State& state) {
  const long a = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(d4::campaign_b1_case(a));
  }
}
BENCHMARK(BM_B1Case)->Arg(1)->Arg(500)->Arg(18072);

void BM_EnumerateTriples(benchmark::State& state) {
  const long limit = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(d4::enumerate_d4_triples(limit));
  }
}
BENCHMARK(BM_EnumerateTriples)->Arg(300)->Arg(2000);

void BM_SextupleBound(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(d4::sextuple_m_bound(170016));
  }
}
BENCHMARK(BM_SextupleBound);

}  // namespace

BENCHMARK_MAIN();
