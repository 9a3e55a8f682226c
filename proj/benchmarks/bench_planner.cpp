#include <benchmark/benchmark.h>

#include <random>

#include "empath/empathy.hpp"
#include "empath/recognition.hpp"
#include "fixtures.hpp"
#include "random_domain.hpp"

using namespace empath;
using namespace empath::testing;

namespace {

const char* stem_at(std::int64_t i) { return kFixtures[static_cast<std::size_t>(i)]; }

void BM_SolveEmp(benchmark::State& state) {
  const auto problem = load_fixture(stem_at(state.range(0))).emp();
  for (auto _ : state) benchmark::DoNotOptimize(solve_emp(problem));
  state.SetLabel(stem_at(state.range(0)));
}
BENCHMARK(BM_SolveEmp)->Arg(0)->Arg(2)->Arg(3);

void BM_AllOptimal(benchmark::State& state) {
  const auto problem = load_fixture("wrong_bus").mep();
  SearchOptions opts;
  opts.all_optimal = true;
  opts.threads = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_optimal(problem, opts));
}
BENCHMARK(BM_AllOptimal)->Arg(1)->Arg(2)->Arg(4);

void BM_CheckEmpathy(benchmark::State& state) {
  const auto problem = load_fixture("bus").emp();
  const auto truth = load_actor("bus");
  for (auto _ : state) benchmark::DoNotOptimize(check_selective_task_empathy(problem, truth));
}
BENCHMARK(BM_CheckEmpathy);

void BM_Posterior(benchmark::State& state) {
  const auto problem = load_fixture("wrong_bus").empr();
  for (auto _ : state) benchmark::DoNotOptimize(posterior(problem, 1.0, Perspective::kActor));
}
BENCHMARK(BM_Posterior);

void BM_RandomProblems(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<MepProblem> problems;
  for (int i = 0; i < 50; ++i) problems.push_back(random_mep(rng, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    for (const auto& p : problems) {
      try {
        benchmark::DoNotOptimize(solve_optimal(p, {}));
      } catch (const NoSolution&) {
      }
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(problems.size()));
}
BENCHMARK(BM_RandomProblems)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
