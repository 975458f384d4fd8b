#include <benchmark/benchmark.h>

#include "grpd/construct.hpp"
#include "grpd/descent.hpp"
#include "grpd/kernels.hpp"

namespace {

grpd::GroupoidPtr translation(std::size_t n) {
  const grpd::FiniteGroup s = grpd::FiniteGroup::symmetric(n);
  grpd::ActionOnSet a{s, s.order(), grpd::Side::kRight, {}, {}};
  a.table.resize(s.order() * s.order());
  for (grpd::Elem x = 0; x < s.order(); ++x)
    for (grpd::Elem k = 0; k < s.order(); ++k) a.table[x * s.order() + k] = s.mul(x, k);
  return grpd::translation_groupoid(a);
}

void BM_AssociativitySerial(benchmark::State& state) {
  const auto g = translation(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(grpd::kernels::serial::associativity(*g));
}

void BM_AssociativityOmp(benchmark::State& state) {
  const auto g = translation(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(grpd::kernels::omp::associativity(*g));
}

grpd::Cover three_parts() {
  return {3, {{0, 1}, {1, 2}, {0, 1, 2}}, {}, {}};
}

void BM_StackCheck(benchmark::State& state) {
  const auto g = grpd::b_group(grpd::FiniteGroup::cyclic(3));
  grpd::StackOptions o;
  o.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(grpd::check_stack_property(three_parts(), g, o));
}

}  // namespace

BENCHMARK(BM_AssociativitySerial)->Arg(3)->Arg(4);
BENCHMARK(BM_AssociativityOmp)->Arg(3)->Arg(4);
BENCHMARK(BM_StackCheck)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
