#include <gtest/gtest.h>

#include <numeric>

#include "generators.hpp"
#include "nilcomp/error.hpp"
#include "nilcomp/lift.hpp"

using namespace nilcomp;

namespace {

UnipotentMatrix E(std::size_t dim, std::size_t i, std::size_t j, const Rational& c = 1) {
  return UnipotentMatrix::elementary(dim, i, j, c);
}

void expect_reduces_to(const PolyMap& lifted, const PolyMap& f) {
  const auto& quotient = f.ambient();
  for (const auto& t : f.indices())
    EXPECT_TRUE(quotient.equivalent(lifted.coefficient(t), f.coefficient(t)));
}

}  // namespace

TEST(CentralCorrection, Examples) {
  auto fl = FilteredLattice::lower_central(3);
  EXPECT_TRUE(central_rational_correction(fl, E(3, 0, 1, 2), 1).is_identity());

  auto g = E(3, 0, 1) * E(3, 0, 2, Rational(1, 4));
  auto r = central_rational_correction(fl, g, 1);
  EXPECT_EQ(r, E(3, 0, 2, Rational(-1, 4)));
  EXPECT_EQ(g * r, E(3, 0, 1));

  auto h = E(3, 0, 2, Rational(1, 4));
  EXPECT_EQ(central_rational_correction(fl, h, 2), E(3, 0, 2, Rational(-1, 4)));
  EXPECT_THROW(central_rational_correction(fl, E(3, 0, 1, Rational(1, 2)), 1), Error);
}

TEST(CentralCorrection, RandomInputsGiveCentralCorrections) {
  gen::Rng rng(51);
  auto fl = FilteredLattice::lower_central(4);
  for (int trial = 0; trial < 20; ++trial) {
    const long q = gen::uniform(rng, 1, 4);
    auto base = gen::q_rational(rng, fl, q);
    auto noisy = base * E(4, 0, 3, gen::rational(rng, 7, 5));
    auto r = central_rational_correction(fl, noisy, q);
    EXPECT_TRUE(fl.in_level(r, 3));
    EXPECT_TRUE(fl.in_lattice((noisy * r).pow(q)));
    auto x = gen::unipotent(rng, fl, 3);
    EXPECT_EQ(r * x, x * r);
  }
}

TEST(LiftAbelian, FiniteReduction) {
  CALGroup z4(0, FiniteAbelianGroup({4})), z2(0, FiniteAbelianGroup({2}));
  RatMatrix one(1, 1);
  one(0, 0) = 1;
  CALHom eta(z4, z2, one);
  AbelianPolyMap m(z2, 1, 1, {{{1}, z2.point({}, {1})}});
  auto lift = lift_abelian_poly(m, eta, 2);
  for (long x = -6; x <= 6; ++x) {
    EXPECT_EQ(eta.apply(lift.lifted.eval({x})), m.eval({x}));
    EXPECT_EQ(lift.lifted.eval({x}), z4.point({}, {x}));
  }
  EXPECT_EQ(lift.minimal_period, 4);
  EXPECT_EQ(lift.q_prime, 2);
}

TEST(LiftAbelian, CircleDoubling) {
  CALGroup t(1, FiniteAbelianGroup());
  RatMatrix two(1, 1);
  two(0, 0) = 2;
  CALHom eta(t, t, two);
  AbelianPolyMap m(t, 1, 1, {{{1}, t.point({Rational(1, 3)}, {})}});
  auto lift = lift_abelian_poly(m, eta, 3);
  EXPECT_EQ(lift.lifted.coefficient({1}), t.point({Rational(1, 6)}, {}));
  EXPECT_EQ(lift.minimal_period, 6);
  for (long x = 0; x < 12; ++x) EXPECT_EQ(eta.apply(lift.lifted.eval({x})), m.eval({x}));
}

TEST(LiftAbelian, ZeroMapLiftsToZero) {
  CALGroup t(1, FiniteAbelianGroup({2}));
  RatMatrix three(2, 2);
  three(0, 0) = 3;
  three(1, 1) = 1;
  CALHom eta(CALGroup(1, FiniteAbelianGroup({4})), t, three);
  AbelianPolyMap zero(t, 2, 2);
  EXPECT_TRUE(lift_abelian_poly(zero, eta, 5).lifted.is_zero());
}

TEST(LiftLastLevel, HeisenbergEqualPeriods) {
  auto inst = heisenberg_instance(2, 2);
  auto res = lift_last_level(inst.lattice, inst.map, 2);
  expect_reduces_to(res.lifted, inst.map);
  EXPECT_EQ(res.report.q, 2);
  EXPECT_EQ(res.report.output_period, 2048);
  EXPECT_TRUE(is_periodic_mod_lattice(res.lifted, res.report.output_period));
  EXPECT_TRUE(is_periodic_mod_lattice(res.lifted, res.report.minimal_period));
}

TEST(LiftLastLevel, HeisenbergTwoThree) {
  auto inst = heisenberg_instance(2, 3);
  auto res = lift_last_level(inst.lattice, inst.map, 6);
  expect_reduces_to(res.lifted, inst.map);
  EXPECT_EQ(res.report.q, 6);
  EXPECT_EQ(res.report.output_period, period_bound(2, 6));
  EXPECT_TRUE(is_periodic_mod_lattice(res.lifted, res.report.output_period));
  EXPECT_EQ(res.report.output_period % res.report.minimal_period, 0);
}

TEST(LiftLastLevel, AlreadyRational) {
  auto fl = FilteredLattice::lower_central(3);
  PolyMap f(fl.quotient_top(), 1, {{{1}, E(3, 0, 1, 3)}});
  auto res = lift_last_level(fl, f, 1);
  EXPECT_TRUE(res.report.corrections.empty());
  EXPECT_EQ(res.report.q, 1);
  expect_reduces_to(res.lifted, f);
}

TEST(Fibration, IdentityShortCircuits) {
  auto fl = FilteredLattice::lower_central(3);
  gen::Rng rng(52);
  auto f = gen::polymap(rng, fl, 1, 2);
  auto fib = FibrationDatum::identity(fl);
  EXPECT_TRUE(fib.is_identity());
  auto res = lift_through_fibration(fib, f, minimal_period(f));
  EXPECT_EQ(res.lifted, f);
  EXPECT_EQ(res.report.output_period, minimal_period(f));
}

TEST(Fibration, HeisenbergOverItsAbelianization) {
  auto inst = heisenberg_instance(2, 3);
  auto fib = FibrationDatum::projection(inst.lattice, inst.lattice.quotient_top());
  auto res = lift_through_fibration(fib, inst.map, 6);
  for (const auto& t : inst.map.indices())
    EXPECT_EQ(fib.apply(res.lifted.coefficient(t)), inst.map.coefficient(t));
  EXPECT_TRUE(is_periodic_mod_lattice(res.lifted, res.report.output_period));
}

TEST(Fibration, FourByFourTopQuotient) {
  gen::Rng rng(53);
  auto y = FilteredLattice::lower_central(4);
  auto x = y.quotient_top();
  auto fib = FibrationDatum::projection(y, x);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = gen::polymap(rng, x, 1, 2);
    auto res = lift_through_fibration(fib, f, minimal_period(f));
    for (const auto& t : f.indices()) EXPECT_EQ(fib.apply(res.lifted.coefficient(t)), f.coefficient(t));
    EXPECT_TRUE(is_periodic_mod_lattice(res.lifted, res.report.output_period));
  }
}

TEST(Fibration, RejectsNonHomomorphisms) {
  auto y = FilteredLattice::lower_central(3);
  RatMatrix psi(3, 3);
  psi(0, 0) = 1;
  psi(1, 1) = 1;
  psi(2, 2) = 2;
  EXPECT_THROW(FibrationDatum(y, y, psi), Error);
}

TEST(MinimalPeriodSearch, HeisenbergExamples) {
  for (auto [n, m, expect] : std::vector<std::tuple<long, long, bool>>{{2, 3, true}, {2, 2, false}, {3, 4, true}}) {
    auto inst = heisenberg_instance(n, m);
    auto lift = minimal_period_lift_search(inst.lattice, inst.map, {n, m});
    EXPECT_EQ(lift.has_value(), expect) << n << "," << m;
    if (lift) {
      EXPECT_TRUE(is_periodic_mod_lattice(*lift, std::vector<Integer>{n, m}));
      expect_reduces_to(*lift, inst.map);
    }
  }
}

TEST(MinimalPeriodSearch, CoprimalityGrid) {
  for (long n = 2; n <= 6; ++n)
    for (long m = 2; m <= 6; ++m) {
      auto inst = heisenberg_instance(n, m);
      EXPECT_EQ(minimal_period_lift_search(inst.lattice, inst.map, {n, m}).has_value(), std::gcd(n, m) == 1);
    }
}
