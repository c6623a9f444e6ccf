#include "pppt/bayesnet.hpp"
#include "pppt/deciders.hpp"
#include "pppt/ptm.hpp"
#include "pppt/reductions.hpp"

#include <benchmark/benchmark.h>

using namespace pppt;

namespace {

// Two-state machine that accepts after two heads in a row.
ptm::Machine cascade() {
  ptm::MachineDescription d;
  d.states = {"s0", "s1", "acc", "rej"};
  d.start_state = "s0";
  d.accept_state = "acc";
  d.reject_state = "rej";
  d.tape_alphabet = {"_", "0", "1"};
  d.blank = "_";
  d.input_alphabet = {"0", "1"};
  for (const auto& s : {"s0", "s1"}) {
    for (const auto& a : d.tape_alphabet) {
      d.transitions.push_back({s, a, "1", a, ptm::Move::Right, std::string(s) == "s0" ? "s1" : "acc"});
      d.transitions.push_back({s, a, "0", a, ptm::Move::Right, "s0"});
    }
  }
  return ptm::Machine::build(d);
}

void BM_AcceptanceEnumeration(benchmark::State& state) {
  const auto m = cascade();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ptm::acceptance_probability(m, {}, n));
}
BENCHMARK(BM_AcceptanceEnumeration)->DenseRange(4, 16, 4);

void BM_CompileAndInfer(benchmark::State& state) {
  const auto m = cascade();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto c = reductions::compile_ptm_to_bn({}, n, m, 1);
    benchmark::DoNotOptimize(bn::marginal(c.network, {{c.query_node, c.accept_outcome}}));
  }
}
BENCHMARK(BM_CompileAndInfer)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_FormulaCounting(benchmark::State& state) {
  std::vector<reductions::Formula> clauses;
  for (int i = 1; i < state.range(0); ++i) {
    clauses.push_back(reductions::Formula::disjunction(
        {reductions::Formula::var("x" + std::to_string(i)),
         reductions::Formula::negation(reductions::Formula::var("x" + std::to_string(i + 1)))}));
  }
  const auto f = reductions::Formula::conjunction(clauses);
  for (auto _ : state) benchmark::DoNotOptimize(reductions::count_satisfying(f));
}
BENCHMARK(BM_FormulaCounting)->DenseRange(8, 16, 4);

void BM_ExactMajority(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(deciders::majority_correct_probability(Rational(3, 5), n));
}
BENCHMARK(BM_ExactMajority)->Arg(101)->Arg(501)->Arg(1001);

void BM_ForwardSample(benchmark::State& state) {
  const auto m = cascade();
  const auto c = reductions::compile_ptm_to_bn({}, 6, m, 1);
  std::uint64_t t = 0;
  for (auto _ : state) {
    RandomStream s(1, t++);
    benchmark::DoNotOptimize(bn::forward_sample(c.network, s));
  }
}
BENCHMARK(BM_ForwardSample);

}  // namespace

BENCHMARK_MAIN();
