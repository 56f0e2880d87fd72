#include <gtest/gtest.h>

#include "generators.hpp"
#include "nilcomp/error.hpp"
#include "nilcomp/nilseq.hpp"

using namespace nilcomp;

namespace {

UnipotentMatrix E(std::size_t dim, std::size_t i, std::size_t j, const Rational& c = 1) {
  return UnipotentMatrix::elementary(dim, i, j, c);
}

// (Q, +) inside the 2x2 group with a degree-2 filtration, so y -> y^2/4 is polynomial.
FilteredLattice line_degree_two() { return FilteredLattice(2, 2, {0, 2, 0, 0}); }

FrequencySpec unit_frequency(const FilteredLattice& fl, long m = 1) { return FrequencySpec(fl, {0, m, 0, 0}); }

ProjectedNilsequence quadratic_example() {
  auto fl = line_degree_two();
  PolyMap g(fl, 1, {{{1}, E(2, 0, 1, Rational(1, 4))}, {{2}, E(2, 0, 1, Rational(1, 2))}});
  auto tau = AbelianHom::reduction(FiniteAbelianGroup({4}), FiniteAbelianGroup({2}));
  return project(tau, g, unit_frequency(fl));
}

}  // namespace

TEST(Malcev, LatticeElementsReduceToZero) {
  auto fl = FilteredLattice::lower_central(3);
  auto g = E(3, 0, 1, 2) * E(3, 1, 2, -3) * E(3, 0, 2, 5);
  auto r = malcev_reduce(fl, g);
  for (const auto& c : r.coords) EXPECT_EQ(c, 0);
  EXPECT_EQ(r.gamma, g);
  EXPECT_TRUE(r.representative.is_identity());
}

TEST(Malcev, Examples) {
  auto r2 = malcev_reduce(FilteredLattice::lower_central(2), E(2, 0, 1, Rational(3, 2)));
  EXPECT_EQ(r2.coords, (std::vector<Rational>{Rational(1, 2)}));
  EXPECT_EQ(r2.gamma, E(2, 0, 1));

  auto fl = FilteredLattice::lower_central(3);
  auto g = E(3, 0, 1, Rational(3, 2)) * E(3, 0, 2, Rational(5, 4));
  auto r = malcev_reduce(fl, g);
  EXPECT_EQ(r.coords, (std::vector<Rational>{Rational(1, 2), 0, Rational(1, 4)}));
  EXPECT_EQ(r.representative * r.gamma, g);
  // oracle: right-multiply by I - E12, then by I - E13
  EXPECT_EQ(g * E(3, 0, 1, -1) * E(3, 0, 2, -1), r.representative);
}

TEST(Malcev, RandomReductionIsExactAndIdempotent) {
  gen::Rng rng(61);
  std::vector<Integer> den(16, 1);
  den[2] = 2;
  den[3] = 2;
  den[7] = 2;
  for (auto fl : {FilteredLattice::lower_central(4), FilteredLattice::lower_central(4, den)}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto g = gen::unipotent(rng, fl, 5, 9);
      auto r = malcev_reduce(fl, g);
      EXPECT_EQ(r.representative * r.gamma, g);
      EXPECT_TRUE(fl.in_lattice(r.gamma));
      for (std::size_t i = 0; i < r.coords.size(); ++i) {
        EXPECT_GE(r.coords[i], 0);
        EXPECT_LT(r.coords[i] * fl.denominator(fl.positions()[i]), 1);
      }
      EXPECT_EQ(malcev_reduce(fl, r.representative).coords, r.coords);
    }
  }
}

TEST(FrequencySpec, ModesAndInvariance) {
  auto fl = FilteredLattice::lower_central(3);
  FrequencySpec top(fl, {0, 0, 2, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(top.mode(), FrequencySpec::Mode::Exact);
  FrequencySpec low(fl, {0, 1, 0, 0, 0, -1, 0, 0, 0});
  EXPECT_EQ(low.mode(), FrequencySpec::Mode::Exact);
  EXPECT_EQ(low.total_frequency(), 2);
  auto f4 = FilteredLattice::lower_central(4);
  std::vector<Integer> mid(16, 0);
  mid[2] = 1;
  FrequencySpec sampled(f4, mid);
  EXPECT_EQ(sampled.mode(), FrequencySpec::Mode::Sampled);
  EXPECT_NO_THROW(sampled.check_invariance(1, 200));
  EXPECT_THROW(FrequencySpec(fl, {1, 0, 0, 0, 0, 0, 0, 0, 0}), Error);
}

TEST(FrequencySpec, InvariantUnderLatticeTranslation) {
  gen::Rng rng(62);
  auto fl = FilteredLattice::lower_central(3);
  FrequencySpec F(fl, {0, 1, 3, 0, 0, 2, 0, 0, 0});
  for (int trial = 0; trial < 20; ++trial) {
    auto g = gen::unipotent(rng, fl, 5);
    auto gamma = gen::lattice_element(rng, fl);
    EXPECT_NEAR(std::abs(F.at(g) - F.at(g * gamma)), 0, 1e-12);
    EXPECT_NEAR(std::abs(F.at(g)), 1, 1e-12);
  }
}

TEST(Project, IdentityTauLinearMap) {
  auto fl = FilteredLattice::lower_central(2);
  const long n = 5;
  PolyMap g(fl, 1, {{{1}, E(2, 0, 1, Rational(1, n))}});
  FiniteAbelianGroup zn({n});
  AbelianHom id(zn, zn, {{1}});
  auto phi = project(id, g, unit_frequency(fl));
  for (long x = 0; x < n; ++x) EXPECT_NEAR(std::abs(phi.table[x] - phase(Rational(x) / Rational(n))), 0, 1e-12);
  EXPECT_TRUE(phi.rank_preserving);
}

TEST(Project, QuadraticFiberAverage) {
  auto phi = quadratic_example();
  EXPECT_NEAR(std::abs(phi.table[0] - Complex(1, 0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(phi.table[1] - Complex(0, 1)), 0, 1e-12);
}

TEST(Project, ConstantFrequency) {
  auto fl = line_degree_two();
  PolyMap g(fl, 1, {{{1}, E(2, 0, 1, Rational(1, 4))}, {{2}, E(2, 0, 1, Rational(1, 2))}});
  auto tau = AbelianHom::reduction(FiniteAbelianGroup({4}), FiniteAbelianGroup({2}));
  auto phi = project(tau, g, unit_frequency(fl, 0));
  for (const auto& v : phi.table.values()) EXPECT_NEAR(std::abs(v - Complex(1, 0)), 0, 1e-12);
}

TEST(Project, Errors) {
  auto fl = FilteredLattice::lower_central(2);
  PolyMap g(fl, 1, {{{1}, E(2, 0, 1, Rational(1, 3))}});
  auto tau = AbelianHom::reduction(FiniteAbelianGroup({4}), FiniteAbelianGroup({2}));
  try {
    project(tau, g, unit_frequency(fl));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PeriodMismatch);
  }
  PolyMap g2(fl, 2);
  EXPECT_THROW(project(tau, g2, unit_frequency(fl)), Error);
}

TEST(Obstruction, QuadraticSelfCorrelation) {
  auto phi = quadratic_example();
  auto r = obstruction_report(phi.table, phi, 2);
  EXPECT_NEAR(r.delta, 1.0, 1e-12);
  EXPECT_GT(r.gowers, 0);
  EXPECT_TRUE(r.pullback_identity);
  EXPECT_EQ(r.max_denominator, 4);
  EXPECT_EQ(r.total_frequency, 1);
  EXPECT_TRUE(r.rank_preserving);
}

TEST(Obstruction, ZeroFunction) {
  auto phi = quadratic_example();
  ComplexTable zero(phi.table.group(), {0, 0});
  auto r = obstruction_report(zero, phi, 1);
  EXPECT_EQ(r.delta, 0);
  EXPECT_EQ(r.gowers, 0);
}

TEST(Obstruction, RandomSignsOnZ8) {
  gen::Rng rng(63);
  auto fl = FilteredLattice::lower_central(3);
  FiniteAbelianGroup z8({8});
  AbelianHom id(z8, z8, {{1}});
  // a^8 has E13 entry 8/32 + 28/16 = 2, so g is 8-periodic
  auto a = UnipotentMatrix::from_entries(3, {1, Rational(1, 8), Rational(1, 32), 0, 1, Rational(1, 2), 0, 0, 1});
  PolyMap g(fl, 1, {{{1}, a}});
  auto phi = project(id, g, FrequencySpec(fl, {0, 0, 1, 0, 0, 0, 0, 0, 0}));
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Complex> signs;
    for (int i = 0; i < 8; ++i) signs.emplace_back(gen::uniform(rng, 0, 1) ? 1.0 : -1.0, 0.0);
    ComplexTable f(z8, signs);
    auto r = obstruction_report(f, phi, 2);
    EXPECT_TRUE(r.pullback_identity);
    EXPECT_NEAR(r.gowers, gowers_norm(f, 3), 1e-12);
    EXPECT_LE(r.delta, 1 + 1e-9);
  }
}

TEST(Project, RandomTablesAreOneBounded) {
  gen::Rng rng(64);
  auto fl = FilteredLattice::lower_central(3);
  FrequencySpec F(fl, {0, 1, 2, 0, 0, -1, 0, 0, 0});
  for (int trial = 0; trial < 10; ++trial) {
    const long d = gen::uniform(rng, 2, 4);
    FiniteAbelianGroup src({d * 2}), dst({d});
    auto tau = AbelianHom::reduction(src, dst);
    PolyMap g(fl, 1, {{{1}, E(3, 0, 1, Rational(gen::uniform(rng, 0, d)) / Rational(d)) * E(3, 1, 2)}});
    auto phi = project(tau, g, F);
    EXPECT_LE(phi.table.sup_norm(), 1 + 1e-12);
  }
}
