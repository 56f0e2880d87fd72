#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "nilcomp/abelian.hpp"
#include "nilcomp/error.hpp"
#include "oracles.hpp"

using namespace nilcomp;

namespace {

constexpr double kTol = 1e-9;
// 5^{-1/4}, the U^2 norm of e(x^2/5), from a brute-force sum in Python.
constexpr double kQuadraticU2 = 0.6687403049764221;

ComplexTable quadratic_phase(std::int64_t n) {
  return ComplexTable::from_function(FiniteAbelianGroup({n}), [n](const GroupElement& x) {
    return phase(Rational(x.coords[0] * x.coords[0]) / Rational(n));
  });
}

}  // namespace

TEST(FiniteAbelianGroup, OrderRankExponent) {
  FiniteAbelianGroup g({2, 3});
  EXPECT_EQ(g.order(), 6u);
  EXPECT_EQ(g.rank(), 1u);
  EXPECT_EQ(g.exponent(), 6);
  FiniteAbelianGroup h({2, 4});
  EXPECT_EQ(h.rank(), 2u);
  EXPECT_EQ(h.exponent(), 4);
}

TEST(FiniteAbelianGroup, IndexRoundTrip) {
  FiniteAbelianGroup g({3, 4});
  for (std::size_t i = 0; i < g.order(); ++i) EXPECT_EQ(g.index_of(g.element_at(i)), i);
  EXPECT_EQ(g.add(g.element({2, 3}), g.element({2, 3})), g.element({1, 2}));
  EXPECT_EQ(g.element({3, 5}), g.element({0, 1}));
}

TEST(Fiber, ModTwoReduction) {
  auto tau = AbelianHom::reduction(FiniteAbelianGroup({4}), FiniteAbelianGroup({2}));
  auto f0 = fiber(tau, tau.target().element({0}));
  auto f1 = fiber(tau, tau.target().element({1}));
  ASSERT_EQ(f0.size(), 2u);
  EXPECT_EQ(f0[0].coords[0], 0);
  EXPECT_EQ(f0[1].coords[0], 2);
  ASSERT_EQ(f1.size(), 2u);
  EXPECT_EQ(f1[0].coords[0], 1);
  EXPECT_EQ(f1[1].coords[0], 3);
}

TEST(Fiber, IdentityAndNonSurjective) {
  FiniteAbelianGroup z3({3});
  AbelianHom id(z3, z3, {{1}});
  auto f = fiber(id, z3.element({2}));
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].coords[0], 2);
  AbelianHom zero(z3, z3, {{0}});
  EXPECT_FALSE(zero.is_surjective());
  try {
    fiber(zero, z3.element({1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonSurjective);
  }
}

TEST(AbelianHom, RejectsIllDefinedMaps) {
  EXPECT_THROW(AbelianHom(FiniteAbelianGroup({3}), FiniteAbelianGroup({2}), {{1}}), Error);
}

TEST(Gowers, ConstantAndCharacter) {
  FiniteAbelianGroup z5({5});
  auto one = ComplexTable::from_function(z5, [](const GroupElement&) { return Complex(1, 0); });
  EXPECT_NEAR(gowers_norm(one, 2), 1.0, kTol);
  auto chi = ComplexTable::from_function(z5, [](const GroupElement& x) { return phase(Rational(x.coords[0]) / Rational(5)); });
  EXPECT_NEAR(gowers_norm(chi, 2), 1.0, kTol);
}

TEST(Gowers, QuadraticPhaseOnZ5) { EXPECT_NEAR(gowers_norm(quadratic_phase(5), 2), kQuadraticU2, 1e-12); }

TEST(Gowers, MatchesBruteForceOracle) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = gen::group(rng, 12);
    auto f = gen::bounded_table(rng, g);
    for (unsigned s = 1; s <= 3; ++s) EXPECT_NEAR(gowers_norm(f, s), oracle::gowers_norm(f, s), kTol);
  }
}

TEST(Gowers, PullbackIdentity) {
  gen::Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto z = gen::group(rng, 8);
    auto tau = gen::surjection(rng, z, 24);
    auto f = gen::bounded_table(rng, z);
    EXPECT_NEAR(gowers_norm(f, 2), gowers_norm(f.pullback(tau), 2), kTol);
    EXPECT_NEAR(gowers_norm(f, 3), gowers_norm(f.pullback(tau), 3), kTol);
  }
}

TEST(Gowers, RejectsOversizedRequests) {
  FiniteAbelianGroup g({101, 101});
  auto f = ComplexTable::from_function(g, [](const GroupElement&) { return Complex(1, 0); });
  EXPECT_THROW(gowers_norm(f, 3), Error);
}

TEST(Correlate, HandExamples) {
  FiniteAbelianGroup z2({2});
  ComplexTable one(z2, {1, 1});
  EXPECT_NEAR(std::abs(correlate(one, one) - Complex(1, 0)), 0, kTol);
  ComplexTable sign(z2, {1, -1});
  EXPECT_NEAR(std::abs(correlate(sign, one)), 0, kTol);
  ComplexTable fi(z2, {Complex(1, 0), Complex(0, 1)});
  EXPECT_NEAR(std::abs(correlate(fi, one) - Complex(0.5, 0.5)), 0, kTol);
  ComplexTable other(FiniteAbelianGroup({3}), {1, 1, 1});
  EXPECT_THROW(correlate(one, other), Error);
}

TEST(CALGroup, ReductionAndOrder) {
  CALGroup g(1, FiniteAbelianGroup({4}));
  auto p = g.point({Rational(7, 6)}, {6});
  EXPECT_EQ(p.torus[0], Rational(1, 6));
  EXPECT_EQ(p.finite.coords[0], 2);
  EXPECT_EQ(g.order(p), 6);
  EXPECT_EQ(g.scale(p, -1), g.negate(p));
}

TEST(CALHom, SurjectivityAndKernelComponents) {
  CALGroup t(1, FiniteAbelianGroup());
  RatMatrix two(1, 1);
  two(0, 0) = 2;
  CALHom doubling(t, t, two);
  EXPECT_TRUE(doubling.is_surjective());
  EXPECT_EQ(doubling.kernel_component_exponent(), 2);

  CALGroup z4(0, FiniteAbelianGroup({4})), z2(0, FiniteAbelianGroup({2}));
  RatMatrix one(1, 1);
  one(0, 0) = 1;
  CALHom reduce(z4, z2, one);
  EXPECT_TRUE(reduce.is_surjective());
  EXPECT_EQ(reduce.kernel_component_exponent(), 2);

  RatMatrix zero(1, 1);
  CALHom trivial(t, t, zero);
  EXPECT_FALSE(trivial.is_surjective());
}
