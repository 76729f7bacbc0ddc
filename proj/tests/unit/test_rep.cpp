#include <gtest/gtest.h>

#include "modvar/errors.hpp"
#include "modvar/hom.hpp"
#include "support.hpp"

using namespace modvar;
using namespace modvar::tst;

TEST(Rep, CheckShapes) {
  auto A = algebra("kronecker");
  auto M = kron11(A, 1, 2);
  EXPECT_NO_THROW(check_shapes(A.quiver(), M));
  M.mats[0] = Matrix<PrimeField>(A.field(), 2, 1);
  EXPECT_THROW(check_shapes(A.quiver(), M), InputError);
}

TEST(Rep, RelationsDetected) {
  auto A = algebra("klein4");
  EXPECT_TRUE(check_relations(A, m_lambda(A, 3)).ok);
  auto bad = module(A, "klein4_bad");
  auto rep = check_relations(A, bad);
  EXPECT_FALSE(rep.ok);
  EXPECT_FALSE(rep.failing_relations.empty());
}

TEST(Rep, RandomRepShapes) {
  auto A = algebra("wild_kronecker_ext");
  Rng rng(11);
  auto M = random_rep(A, {1, 2, 1}, rng);
  ASSERT_EQ(M.mats.size(), 3u);
  EXPECT_EQ(M.mats[0].shape(), "1x2");
  EXPECT_EQ(M.mats[1].shape(), "1x2");
  EXPECT_EQ(M.mats[2].shape(), "2x1");
  auto K = algebra("kronecker");
  auto N = random_rep(K, {1, 1}, rng);
  EXPECT_EQ(N.mats.size(), 2u);
}

TEST(Hom, LocalFamilyValues) {
  auto A = algebra("klein4");
  const Quiver& q = A.quiver();
  EXPECT_EQ(hom_dim(q, m_lambda(A, 1), m_lambda(A, 1)), 2u);
  EXPECT_EQ(hom_dim(q, m_lambda(A, 1), m_lambda(A, 2)), 1u);
  EXPECT_EQ(hom_dim(q, m_lambda(A, 5), m_lambda(A, -5)), 1u);
}

TEST(Hom, BasisElementsAreHomomorphisms) {
  auto A = algebra("wild_kronecker_ext");
  Rng rng(3);
  for (int k = 0; k < 5; ++k) {
    auto M = random_rep(A, {1, 2, 1}, rng);
    auto N = random_rep(A, {2, 3, 1}, rng);
    auto H = hom_basis(A.quiver(), M, N);
    for (const auto& f : H.basis) EXPECT_TRUE(is_homomorphism(A.quiver(), M, N, f));
  }
}

TEST(Hom, Additivity) {
  auto A = algebra("a3");
  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    auto M = random_rep(A, {1, 2, 1}, rng);
    auto N = random_rep(A, {2, 1, 1}, rng);
    auto X = random_rep(A, {1, 1, 2}, rng);
    const Quiver& q = A.quiver();
    EXPECT_EQ(hom_dim(q, direct_sum(M, N), X), hom_dim(q, M, X) + hom_dim(q, N, X));
    EXPECT_EQ(hom_dim(q, X, direct_sum(M, N)), hom_dim(q, X, M) + hom_dim(q, X, N));
  }
}

TEST(Hom, ProjectiveEvaluation) {
  // hom(P(i), M) = dim M_i
  auto A = algebra("klein4");
  auto M = m_lambda(A, 4);
  EXPECT_EQ(hom_dim(A.quiver(), projective_module(A, 0), M), 2u);
  auto B = algebra("a3");
  Rng rng(2);
  auto N = random_rep(B, {2, 1, 3}, rng);
  for (Vertex i = 0; i < 3; ++i) EXPECT_EQ(hom_dim(B.quiver(), projective_module(B, i), N), N.dims[i]);
}

TEST(Iso, ConjugatesAreIsomorphic) {
  for (const char* name : {"klein4", "kronecker", "a3"}) {
    auto A = algebra(name);
    Rng rng(17);
    Rep<PrimeField> M = name == std::string("klein4") ? m_lambda(A, 6) : random_rep(A, std::vector<std::size_t>(A.n_vertices(), 2), rng);
    auto g = random_group_element(A.field(), M.dims, rng);
    auto N = conjugate(A.quiver(), g, M);
    EXPECT_TRUE(check_relations(A, N).ok);
    EXPECT_EQ(iso_test(A, M, N, 3, rng), IsoVerdict::Iso) << name;
    EXPECT_EQ(iso_test(A, M, M, 3, rng), IsoVerdict::Iso) << name;
  }
}

TEST(Iso, DistinctParametersNotIsomorphic) {
  auto A = algebra("klein4");
  Rng rng(1);
  EXPECT_EQ(iso_test(A, m_lambda(A, 2), m_lambda(A, 3), 8, rng), IsoVerdict::NotIso);
  auto K = algebra("kronecker");
  EXPECT_EQ(iso_test(K, kron11(K, 1, 0), kron11(K, 0, 1), 8, rng), IsoVerdict::NotIso);
  EXPECT_EQ(iso_test(K, kron11(K, 1, 2), kron11(K, 3, 6), 8, rng), IsoVerdict::Iso);
  EXPECT_EQ(iso_test(K, kron11(K, 1, 2), kron11(K, 1, 3), 8, rng), IsoVerdict::NotIso);
}

TEST(Iso, DimensionMismatch) {
  auto K = algebra("kronecker");
  Rng rng(1);
  EXPECT_EQ(iso_test(K, simple_module(K, 0), simple_module(K, 1), 8, rng), IsoVerdict::NotIso);
}

TEST(Rep, DirectSumBlocks) {
  auto K = algebra("kronecker");
  auto S = direct_sum(kron11(K, 1, 0), kron11(K, 0, 1));
  EXPECT_EQ(S.dims, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(hom_dim(K.quiver(), S, S), 2u);
}
