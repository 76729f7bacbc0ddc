// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "modvar/algebra.hpp"
#include "modvar/bar.hpp"
#include "modvar/exactla/kernels.hpp"
#include "modvar/homology.hpp"
#include "modvar/rep.hpp"
#include "modvar/rng.hpp"

using namespace modvar;

namespace {

Matrix<PrimeField> random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  const PrimeField f;
  Rng rng(seed);
  Matrix<PrimeField> m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.uniform(rng);
  return m;
}

void BM_RankParallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto m = random_matrix(n, n, 7);
  for (auto _ : st) benchmark::DoNotOptimize(rank(m));
}

void BM_RankSerial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto m = random_matrix(n, n, 7);
  for (auto _ : st) benchmark::DoNotOptimize(reference::rank(m));
}

// Local algebra with two commuting square-zero loops, M = N = a 2-dimensional module.
struct BarCase {
  FDAlgebra<PrimeField> A;
  Rep<PrimeField> M;

  BarCase() : A(make()), M(Rep<PrimeField>::zero(A.quiver(), A.field(), {2})) {
    M.mats[0](1, 0) = 3;
    M.mats[1](1, 0) = 1;
  }

  static FDAlgebra<PrimeField> make() {
    Quiver q(1, {{"a", 0, 0}, {"b", 0, 0}});
    auto path = [&](std::vector<ArrowId> v) { return Path::from_arrows(q, std::move(v)); };
    AlgebraSpec s{q, {{{1, path({1, 0})}, {-1, path({0, 1})}}, {{1, path({0, 0})}}, {{1, path({1, 1})}}}, 4};
    return build_algebra(s, PrimeField{});
  }
};

void BM_BarBlocks(benchmark::State& st) {
  static const BarCase c;
  const auto i = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(bar_slice(c.A, c.M, c.M, i, kDefaultCellLimit).rank);
}

void BM_BarDense(benchmark::State& st) {
  static const BarCase c;
  const auto i = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(bar_rank_reference(c.A, c.M, c.M, i, kDefaultCellLimit));
}

}  // namespace

BENCHMARK(BM_RankParallel)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_RankSerial)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_BarBlocks)->Arg(1)->Arg(2)->Arg(3);
BENCHMARK(BM_BarDense)->Arg(1)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
