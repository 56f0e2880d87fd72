#include <gtest/gtest.h>

#include "generators.hpp"
#include "nilcomp/error.hpp"
#include "nilcomp/linalg.hpp"
#include "nilcomp/rational.hpp"

using namespace nilcomp;

namespace {

IntMatrix int_matrix(std::size_t r, std::size_t c, std::vector<long> v) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < v.size(); ++i) m(i / c, i % c) = v[i];
  return m;
}

void expect_valid_snf(const IntMatrix& m) {
  const SmithForm s = snf(m);
  EXPECT_EQ(s.U * m * s.V, s.D);
  EXPECT_EQ(unimodular_inverse(s.U) * s.U, IntMatrix::identity(m.rows()));
  EXPECT_EQ(unimodular_inverse(s.V) * s.V, IntMatrix::identity(m.cols()));
  const auto f = s.invariant_factors();
  for (std::size_t i = 0; i + 1 < f.size(); ++i) EXPECT_EQ(f[i + 1] % f[i], 0);
}

}  // namespace

TEST(Rational, FloorFracAndReduce) {
  EXPECT_EQ(floor_of(Rational(-3, 2)), -2);
  EXPECT_EQ(frac(Rational(-3, 2)), Rational(1, 2));
  EXPECT_EQ(reduce_mod(Rational(5, 4), Rational(1, 2)), Rational(1, 4));
  EXPECT_TRUE(is_integer(Rational(4) / Rational(2)));
}

TEST(Rational, BinomialHandlesNegativeAndRationalArguments) {
  EXPECT_EQ(binomial(Integer(-3), 2), 6);
  EXPECT_EQ(binomial(Integer(5), 2), 10);
  EXPECT_EQ(binomial(Rational(1, 2), 2), Rational(-1, 8));
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational(" -6/4 "), Rational(-3, 2));
  EXPECT_EQ(to_string(Rational(-3, 2)), "-3/2");
  EXPECT_EQ(to_string(Rational(4)), "4");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
}

TEST(Rational, PrimeFactors) {
  EXPECT_EQ(prime_factors(Integer(360)), (std::vector<Integer>{2, 3, 5}));
  EXPECT_TRUE(prime_factors(Integer(1)).empty());
}

TEST(Snf, DiagonalTwoThree) {
  const auto m = int_matrix(2, 2, {2, 0, 0, 3});
  EXPECT_EQ(snf(m).D, int_matrix(2, 2, {1, 0, 0, 6}));
  expect_valid_snf(m);
}

TEST(Snf, Identity) { EXPECT_EQ(snf(IntMatrix::identity(3)).D, IntMatrix::identity(3)); }

TEST(Snf, TwoByTwoExample) {
  const auto m = int_matrix(2, 2, {2, 4, 6, 8});
  EXPECT_EQ(snf(m).D, int_matrix(2, 2, {2, 0, 0, 4}));
  expect_valid_snf(m);
}

TEST(Snf, RandomRectangularMatrices) {
  gen::Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto r = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    const auto c = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = gen::uniform(rng, -9, 9);
    expect_valid_snf(m);
  }
}

TEST(SolveInteger, ParticularAndKernel) {
  const auto a = int_matrix(1, 2, {2, 4});
  auto sol = solve_integer(a, {6});
  ASSERT_TRUE(sol);
  EXPECT_EQ(a * sol->particular, (std::vector<Integer>{6}));
  ASSERT_EQ(sol->kernel.size(), 1u);
  EXPECT_EQ(a * sol->kernel[0], (std::vector<Integer>{0}));
  EXPECT_FALSE(solve_integer(a, {3}));
}

TEST(SolveRational, ConsistentAndInconsistent) {
  RatMatrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  a(1, 0) = 2;
  a(1, 1) = 2;
  EXPECT_TRUE(solve_rational(a, {Rational(1), Rational(2)}));
  EXPECT_FALSE(solve_rational(a, {Rational(1), Rational(3)}));
  EXPECT_EQ(rational_rank(a), 1u);
  const IntMatrix k = integer_left_nullspace(a);
  ASSERT_EQ(k.rows(), 1u);
  EXPECT_EQ(to_rational(k) * a, RatMatrix(1, 2));
}

TEST(LatticeBasis, SpansGenerators) {
  const auto gens = int_matrix(2, 3, {2, 4, 0, 0, 6, 3});
  const IntMatrix basis = lattice_basis(gens);
  EXPECT_EQ(basis.cols(), 2u);
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    std::vector<Integer> col{gens(0, j), gens(1, j)};
    EXPECT_TRUE(solve_integer(basis, col)) << "column " << j;
  }
}
