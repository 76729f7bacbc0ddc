#include <gtest/gtest.h>

#include "modvar/errors.hpp"
#include "modvar/exactla/kernels.hpp"
#include "support.hpp"

using namespace modvar;
using namespace modvar::tst;

TEST(Expr, Grammar) {
  const PrimeField f(101);
  EXPECT_EQ(Expr<PrimeField>::parse("-1/L", f).eval(f, 2), f.neg(f.inv(2)));
  EXPECT_EQ(Expr<PrimeField>::parse("L*L + 2*(L - 3)", f).eval(f, 5), 29u);
  EXPECT_EQ(Expr<PrimeField>::parse("--L", f).eval(f, 7), 7u);
  EXPECT_EQ(Expr<PrimeField>::parse("12", f).eval(f, 0), 12u);
  EXPECT_FALSE(Expr<PrimeField>::parse("3*(1+2)", f).depends_on_parameter());
  EXPECT_TRUE(Expr<PrimeField>::parse("0*L", f).depends_on_parameter());
}

TEST(Expr, Rational) {
  const RationalField q;
  auto e = Expr<RationalField>::parse("(L+1)/(2*L)", q);
  EXPECT_EQ(q.to_string(e.eval(q, q.from_int(3))), "2/3");
}

TEST(Expr, Malformed) {
  const PrimeField f;
  for (const char* bad : {"", "L+", "(L", "L)", "2x", "L L", "1/"})
    EXPECT_THROW(Expr<PrimeField>::parse(bad, f), InputError) << bad;
  try {
    Expr<PrimeField>::parse("1 + $", f);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("column"), std::string::npos) << e.what();
  }
}

TEST(Expr, PoleIsSpecializationError) {
  const PrimeField f;
  auto e = Expr<PrimeField>::parse("1/(L-2)", f);
  EXPECT_THROW(e.eval(f, 2), SpecializationError);
  EXPECT_NO_THROW(e.eval(f, 3));
}

TEST(Family, KroneckerSpecialization) {
  auto K = algebra("kronecker");
  auto fam = family_from_json(K.quiver(), K.field(), read_json_file(source_path("fixtures/families/kronecker_1_L.json")));
  auto M = fam.specialize(K.quiver(), 0);
  EXPECT_TRUE(M == kron11(K, 1, 0));
  EXPECT_TRUE(fam.depends_on_parameter());
}

TEST(Family, ExcludedAndPole) {
  auto A = algebra("klein4");
  auto fam = family_from_json(A.quiver(), A.field(), read_json_file(source_path("fixtures/families/m_lambda.json")));
  EXPECT_TRUE(fam.is_excluded(0));
  EXPECT_THROW(fam.specialize(A.quiver(), 0), SpecializationError);
  EXPECT_TRUE(fam.specialize(A.quiver(), 5) == m_lambda(A, 5));

  auto B = algebra("a3");
  auto pole = family_from_json(B.quiver(), B.field(), read_json_file(source_path("fixtures/families/a3_pole.json")));
  EXPECT_THROW(pole.specialize(B.quiver(), 0), SpecializationError);
}

TEST(Family, ConstantFamily) {
  auto A = algebra("klein4");
  auto M = m_lambda(A, 9);
  auto fam = ModuleFamily<PrimeField>::constant(A.quiver(), M);
  EXPECT_FALSE(fam.depends_on_parameter());
  EXPECT_TRUE(fam.specialize(A.quiver(), 17) == M);
}

TEST(Sampler, FamilySamplerSkipsExcluded) {
  const PrimeField f2(2);
  auto A = algebra("kronecker", f2);
  ModuleFamily<PrimeField> fam = family_from_json(A.quiver(), f2, read_json_file(source_path("fixtures/families/kronecker_1_L.json")));
  fam.excluded = {0};
  FamilySampler<PrimeField> s(A.quiver(), fam);
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    auto x = s.draw(rng);
    ASSERT_TRUE(x.lambda);
    EXPECT_EQ(*x.lambda, 1u);
  }
  fam.excluded = {0, 1};
  FamilySampler<PrimeField> dead(A.quiver(), fam);
  EXPECT_THROW(dead.draw(rng), InputError);
}

TEST(Sampler, Deterministic) {
  auto A = algebra("wild_kronecker_ext");
  HereditarySampler<PrimeField> s(A, {1, 2, 1});
  Rng r1(99), r2(99);
  EXPECT_TRUE(s.draw(r1).module == s.draw(r2).module);
  EXPECT_FALSE(s.parametrized());
  EXPECT_THROW(s.at(0), InputError);
}

TEST(Sampler, JordanSamplerLocallyFree) {
  auto A = algebra("pfeifer2");
  JordanSampler<PrimeField> s(A, 2);
  Rng rng(4);
  const Quiver& q = A.quiver();
  for (int k = 0; k < 10; ++k) {
    auto M = s.draw(rng).module;
    EXPECT_EQ(M.dims, (std::vector<std::size_t>{2, 2}));
    EXPECT_TRUE(check_relations(A, M).ok);
    // a and c are nilpotent of rank n - 1
    EXPECT_EQ(rank(M.mats[q.index_of("a")]), 1u);
    EXPECT_EQ(rank(M.mats[q.index_of("c")]), 1u);
  }
}

TEST(Sampler, JordanNeedsOneLoopPerVertex) {
  auto A = algebra("kronecker");
  EXPECT_THROW(JordanSampler<PrimeField>(A, 2), InputError);
}

TEST(Sampler, ConstantAt) {
  auto A = algebra("klein4");
  ConstantSampler<PrimeField> s(m_lambda(A, 2));
  EXPECT_TRUE(s.at(5) == m_lambda(A, 2));
  Rng rng(0);
  EXPECT_FALSE(s.draw(rng).lambda);
}
