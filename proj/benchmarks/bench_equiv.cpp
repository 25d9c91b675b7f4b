#include <benchmark/benchmark.h>

#include "cfgkat/driver.hpp"
#include "cfgkat/oracle.hpp"
#include "cfgkat/thompson.hpp"

using namespace cfgkat;

namespace {

ExpPtr pact_chain(size_t n) {
  std::vector<ExpPtr> stmts;
  stmts.push_back(exp::if_(bexp::prim("t"), exp::skip(), exp::skip()));
  for (size_t k = 0; k < n; ++k) stmts.push_back(exp::act("p"));
  return exp::seq_all(std::move(stmts));
}

ExpPtr goto_program() {
  return exp::seq_all({
      exp::label("l0"),
      exp::if_(bexp::not_(bexp::prim("t")), exp::goto_("l1"), exp::skip()),
      exp::act("p"),
      exp::if_(bexp::prim("t"), exp::goto_("l1"), exp::skip()),
      exp::act("q"),
      exp::goto_("l0"),
      exp::label("l1"),
  });
}

ExpPtr break_program() {
  return exp::while_(bexp::prim("t"),
                     exp::seq(exp::act("p"), exp::if_(bexp::not_(bexp::prim("t")), exp::act("q"),
                                                      exp::break_())));
}

void BM_ChainSelfEquiv(benchmark::State& state) {
  ExpPtr chain = pact_chain(static_cast<size_t>(state.range(0)));
  for (auto _ : state) {
    EquivalenceReport r = equiv(*chain, *chain);
    benchmark::DoNotOptimize(r.equivalent);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ChainSelfEquiv)->Range(1 << 10, 1 << 14)->Complexity(benchmark::oNLogN);

void BM_GotoVsBreak(benchmark::State& state) {
  ExpPtr a = goto_program();
  ExpPtr b = break_program();
  for (auto _ : state) {
    EquivalenceReport r = equiv(*a, *b);
    benchmark::DoNotOptimize(r.equivalent);
  }
}
BENCHMARK(BM_GotoVsBreak);

void BM_RandomProgramEquiv(benchmark::State& state) {
  std::vector<std::pair<ExpPtr, ExpPtr>> pairs;
  for (uint64_t seed = 0; seed < 32; ++seed) {
    ExpPtr e = random_program(seed);
    pairs.emplace_back(e, random_rewrite(*e, seed + 1));
  }
  size_t k = 0;
  for (auto _ : state) {
    const auto& [e, f] = pairs[k++ % pairs.size()];
    EquivalenceReport r = equiv(*e, *f);
    benchmark::DoNotOptimize(r.equivalent);
  }
}
BENCHMARK(BM_RandomProgramEquiv);

void BM_OracleTraceLanguage(benchmark::State& state) {
  ExpPtr e = break_program();
  Alphabets al = collect_alphabets(*e, *e);
  for (auto _ : state) {
    Lang lang = trace_language(*e, 0, al, static_cast<size_t>(state.range(0)));
    benchmark::DoNotOptimize(lang.size());
  }
}
BENCHMARK(BM_OracleTraceLanguage)->DenseRange(4, 10, 2);

}  // namespace

BENCHMARK_MAIN();
