#include <benchmark/benchmark.h>

#include <random>

#include "ramop/cooperad.hpp"
#include "ramop/dual.hpp"
#include "ramop/forms.hpp"
#include "ramop/graph.hpp"
#include "ramop/linear.hpp"
#include "ramop/ram.hpp"

using namespace ramop;

namespace {

// Relation-shaped: few small integer entries per row, more rows than columns.
linear::SparseMatrix relation_like(linear::Index cols, std::size_t per_row, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  linear::SparseMatrix m;
  m.ncols = cols;
  for (std::size_t r = 0; r < 2 * std::size_t{cols}; ++r) {
    std::vector<linear::Entry> row;
    for (std::size_t k = 0; k < per_row; ++k)
      row.push_back({static_cast<linear::Index>(rng() % cols), linear::Rational(static_cast<long>(rng() % 5) - 2)});
    m.rows.push_back(linear::canonical(std::move(row)));
  }
  return m;
}

void BM_Rref(benchmark::State& state) {
  const auto m = relation_like(static_cast<linear::Index>(state.range(0)), 4, 42);
  for (auto _ : state) benchmark::DoNotOptimize(linear::rank(m));
}
BENCHMARK(BM_Rref)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_RamComponent(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto q = ram::make_quotient("ram");
    benchmark::DoNotOptimize(q->component(n)->dim());
  }
}
BENCHMARK(BM_RamComponent)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_RComponent(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    graph::GraphQuotient q(graph::r_presentation());
    benchmark::DoNotOptimize(q.component(n)->dim());
  }
}
BENCHMARK(BM_RComponent)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_ThetaBasis(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  graph::GraphQuotient q(graph::r_presentation());
  std::vector<Atom> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(static_cast<Atom>(i));
  const auto dim = q.component(n)->dim();
  const auto split = cooperad::splits(labels, true);
  for (auto _ : state)
    for (std::size_t k = 0; k < dim; ++k)
      for (const auto& [I, J] : split) benchmark::DoNotOptimize(cooperad::theta(I, J, q.basis_element(labels, k)));
}
BENCHMARK(BM_ThetaBasis)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

void BM_Conjecture(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto rho = dual::make_rho();
    benchmark::DoNotOptimize(dual::conjecture_verdict(rho, n).isomorphism);
  }
}
BENCHMARK(BM_Conjecture)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

void BM_FormsSurvey(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(forms::relation_survey(n, 20, 1729));
}
BENCHMARK(BM_FormsSurvey)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
