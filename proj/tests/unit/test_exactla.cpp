#include <gtest/gtest.h>

#include "modvar/errors.hpp"
#include "modvar/exactla/kernels.hpp"
#include "modvar/rng.hpp"

using namespace modvar;

namespace {

template <class F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix<F> m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.uniform(rng);
  return m;
}

// Product of a rows x k and a k x cols matrix: rank at most k.
template <class F>
Matrix<F> low_rank(const F& f, std::size_t rows, std::size_t cols, std::size_t k, Rng& rng) {
  return random_matrix(f, rows, k, rng) * random_matrix(f, k, cols, rng);
}

}  // namespace

TEST(PrimeField, Arithmetic) {
  const PrimeField f(7);
  EXPECT_EQ(f.add(5, 4), 2u);
  EXPECT_EQ(f.sub(2, 5), 4u);
  EXPECT_EQ(f.mul(3, 5), 1u);
  EXPECT_EQ(f.inv(3), 5u);
  EXPECT_EQ(f.from_int(-1), 6u);
  EXPECT_EQ(f.parse("-3"), 4u);
}

TEST(PrimeField, DefaultModulusInverse) {
  const PrimeField f;
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    auto x = f.uniform(rng);
    if (x == 0) continue;
    EXPECT_EQ(f.mul(x, f.inv(x)), 1u);
  }
}

TEST(PrimeField, RejectsComposite) {
  EXPECT_THROW(PrimeField(9), InputError);
  EXPECT_THROW(PrimeField(1), InputError);
  EXPECT_NO_THROW(PrimeField(2));
}

TEST(RationalField, ParseAndPrint) {
  const RationalField q;
  auto x = q.parse("-6/4");
  EXPECT_EQ(q.to_string(x), "-3/2");
  EXPECT_EQ(q.to_string(q.inv(x)), "-2/3");
  EXPECT_THROW(q.parse("1/0"), InputError);
  EXPECT_THROW(q.parse("abc"), InputError);
}

TEST(Rank, KnownMatrices) {
  const PrimeField f(5);
  EXPECT_EQ(rank(Matrix<PrimeField>::from_ints(f, {{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(rank(Matrix<PrimeField>::from_ints(f, {{1, 2}, {3, 4}})), 2u);
  // det = -2 = 3 mod 5, but rank 1 mod 2
  EXPECT_EQ(rank(Matrix<PrimeField>::from_ints(PrimeField(2), {{1, 2}, {3, 4}})), 1u);
  EXPECT_EQ(rank(Matrix<PrimeField>(f, 0, 3)), 0u);
}

TEST(Rank, RationalKnown) {
  const RationalField q;
  auto m = Matrix<RationalField>::from_ints(q, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  EXPECT_EQ(rank(m), 2u);
}

// Property: the parallel kernel reproduces the serial reference exactly.
TEST(Rank, ParallelMatchesReference) {
  const PrimeField f;
  Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 1 + rng.below(120), cols = 1 + rng.below(120), k = rng.below(40);
    auto m = low_rank(f, rows, cols, k == 0 ? 1 : k, rng);
    EXPECT_EQ(rank(m), reference::rank(m));
    auto a = rref(m), b = reference::rref(m);
    EXPECT_EQ(a.pivot_cols, b.pivot_cols);
    EXPECT_TRUE(a.reduced == b.reduced);
  }
}

TEST(Rank, ParallelMatchesReferenceLarge) {
  const PrimeField f;
  Rng rng(43);
  auto m = low_rank(f, 300, 280, 150, rng);
  EXPECT_EQ(rank(m), 150u);
  EXPECT_EQ(reference::rank(m), 150u);
}

TEST(Rank, TransposeInvariant) {
  const PrimeField f(3);
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_matrix(f, 1 + rng.below(9), 1 + rng.below(9), rng);
    EXPECT_EQ(rank(m), rank(m.transpose()));
  }
}

TEST(Kernel, RankNullityAndAnnihilation) {
  const PrimeField f;
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 1 + rng.below(15), cols = 1 + rng.below(15);
    auto m = low_rank(f, rows, cols, 1 + rng.below(6), rng);
    auto k = kernel_basis(m);
    EXPECT_EQ(k.cols() + rank(m), cols);
    EXPECT_TRUE((m * k).is_zero());
    EXPECT_EQ(rank(k), k.cols());
  }
}

TEST(Solve, ConsistentAndInconsistent) {
  const PrimeField f(11);
  auto a = Matrix<PrimeField>::from_ints(f, {{1, 1}, {2, 2}});
  std::vector<std::uint64_t> good = {3, 6}, bad = {3, 5};
  auto x = solve(a, std::span<const std::uint64_t>(good));
  ASSERT_TRUE(x);
  EXPECT_EQ(f.add((*x)[0], (*x)[1]), 3u);
  EXPECT_FALSE(solve(a, std::span<const std::uint64_t>(bad)));
}

TEST(Inverse, RoundTrip) {
  const RationalField q;
  auto a = Matrix<RationalField>::from_ints(q, {{2, 1}, {7, 4}});
  auto inv = inverse(a);
  ASSERT_TRUE(inv);
  EXPECT_TRUE(a * *inv == Matrix<RationalField>::identity(q, 2));
  EXPECT_FALSE(inverse(Matrix<RationalField>::from_ints(q, {{1, 2}, {2, 4}})));
}

TEST(Kron, ShapeAndEntries) {
  const PrimeField f;
  auto a = Matrix<PrimeField>::from_ints(f, {{1, 2, 0}, {0, 1, 3}});
  auto b = Matrix<PrimeField>::from_ints(f, {{1, 1}, {2, 0}, {0, 5}, {4, 4}});
  auto k = kron(a, b);
  EXPECT_EQ(k.rows(), 8u);
  EXPECT_EQ(k.cols(), 6u);
  EXPECT_EQ(k(1 * 4 + 2, 2 * 2 + 1), f.mul(3, 5));
  EXPECT_EQ(rank(k), rank(a) * rank(b));
}

TEST(ColumnSpace, BasisSpansColumns) {
  const PrimeField f;
  Rng rng(9);
  auto m = low_rank(f, 8, 10, 3, rng);
  auto c = column_space_basis(m);
  EXPECT_EQ(c.cols(), 3u);
  EXPECT_EQ(rank(hstack(c, m)), 3u);
}

TEST(Rng, SplitIsStable) {
  Rng root(123);
  Rng a = root.split("x"), b = root.split("x"), c = root.split("y");
  EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(root.split("x").next(), c.next());
  Rng d = root.split(std::uint64_t{3});
  Rng e = root.split(std::uint64_t{3});
  EXPECT_EQ(d.below(1000), e.below(1000));
}
