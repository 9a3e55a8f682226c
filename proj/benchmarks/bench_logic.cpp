#include <benchmark/benchmark.h>

#include <random>

#include "empath/errors.hpp"
#include "empath/knowledge_base.hpp"
#include "empath/kripke.hpp"
#include "empath/oracle_check.hpp"
#include "generators.hpp"

using namespace empath;
using namespace empath::testing;

namespace {

void BM_KnowledgeBaseTell(benchmark::State& state) {
  const auto pool = all_rmls(small_vocab(3, 2), 2);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (auto _ : state) {
    KnowledgeBase kb;
    for (int i = 0; i < state.range(0); ++i) {
      try {
        kb = kb.tell(pool[pick(rng)]);
      } catch (const InconsistencyError&) {
      }
    }
    benchmark::DoNotOptimize(kb);
  }
}
BENCHMARK(BM_KnowledgeBaseTell)->Arg(8)->Arg(32);

void BM_KnowledgeBaseEntails(benchmark::State& state) {
  const auto pool = all_rmls(small_vocab(3, 2), 2);
  KnowledgeBase kb;
  for (std::size_t i = 0; i < pool.size(); i += 7) {
    try {
      kb = kb.tell(pool[i]);
    } catch (const InconsistencyError&) {
    }
  }
  for (auto _ : state) {
    std::size_t hits = 0;
    for (const auto& r : pool) hits += kb.entails(r);
    benchmark::DoNotOptimize(hits);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pool.size()));
}
BENCHMARK(BM_KnowledgeBaseEntails);

void BM_ModelEnumeration(benchmark::State& state) {
  const Vocabulary vocab = small_vocab(2, 2);
  OracleOptions opts;
  opts.max_worlds = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_models(vocab, opts));
}
BENCHMARK(BM_ModelEnumeration)->Arg(2)->Arg(3);

void BM_AgreementSweep(benchmark::State& state) {
  AgreementOptions opts;
  opts.depth = 1;
  opts.max_premises = 1;
  opts.oracle.max_worlds = 3;
  for (auto _ : state) benchmark::DoNotOptimize(agreement_sweep(small_vocab(2, 1), opts));
}
BENCHMARK(BM_AgreementSweep)->Unit(benchmark::kMillisecond);

}  // namespace
