// Parallel enumeration kernel against the serial reference. The queries are
// valid, so both walk the whole budget before reporting no countermodel.

#include <benchmark/benchmark.h>

#include "modalcheck/enumerator.hpp"

using namespace modalcheck;

namespace {

struct Query {
  std::vector<Formula> premises;
  Formula conclusion;
  FrameClass frame;
};

Query query(int which) {
  if (which == 0) return {{parse("g -> []g"), parse("<>g")}, parse("g"), {FrameCondition::Symmetric}};
  return {{}, parse("[](p -> q) -> ([]p -> []q)"), {}};
}

template <auto Find>
void run(benchmark::State& state) {
  const Query q = query(static_cast<int>(state.range(0)));
  const auto budget = EnumerationBudget::for_query(q.premises, q.conclusion, static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto w = Find(q.premises, q.conclusion, q.frame, budget);
    benchmark::DoNotOptimize(w);
  }
}

void args(benchmark::internal::Benchmark* b) {
  b->Args({0, 3})->Args({0, 4})->Args({1, 3})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(run<find_countermodel_serial>)->Name("serial")->Apply(args);
BENCHMARK(run<find_countermodel>)->Name("parallel")->Apply(args);

BENCHMARK_MAIN();
