#include <gtest/gtest.h>

#include "generators.hpp"
#include "nilcomp/cubes.hpp"
#include "nilcomp/error.hpp"
#include "oracles.hpp"

using namespace nilcomp;

namespace {

UnipotentMatrix E(std::size_t dim, std::size_t i, std::size_t j, const Rational& c = 1) {
  return UnipotentMatrix::elementary(dim, i, j, c);
}

// Each output coordinate is a constant, an input bit, or its complement.
struct CubeMorphism {
  unsigned m;
  std::vector<int> source;  // -1: constant, otherwise input index
  std::vector<bool> flip;

  Vertex operator()(Vertex w, unsigned n) const {
    Vertex out = 0;
    for (unsigned i = 0; i < n; ++i) {
      bool bit = flip[i];
      if (source[i] >= 0) bit = bit != (((w >> (m - 1 - static_cast<unsigned>(source[i]))) & 1u) != 0);
      out = (out << 1) | (bit ? 1u : 0u);
    }
    return out;
  }
};

CubeMorphism random_morphism(gen::Rng& rng, unsigned m, unsigned n) {
  CubeMorphism phi{m, {}, {}};
  for (unsigned i = 0; i < n; ++i) {
    phi.source.push_back(static_cast<int>(gen::uniform(rng, -1, static_cast<long>(m) - 1)));
    phi.flip.push_back(gen::uniform(rng, 0, 1) == 1);
  }
  return phi;
}

CubeConfig random_hk_cube(gen::Rng& rng, const FilteredLattice& fl, unsigned n) {
  CubeConfig c{n, std::vector<UnipotentMatrix>(1u << n, UnipotentMatrix::identity(fl.dim()))};
  for (Vertex v : vertex_order(n)) {
    const int level = std::min<int>(static_cast<int>(weight(v)), fl.degree() + 1);
    if (level > fl.degree()) continue;
    auto g = gen::unipotent(rng, fl, 3);
    // keep only the part of g in G_level
    auto coords = fl.coordinates(g);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (fl.level(fl.positions()[i]) < level) coords[i] = 0;
    g = fl.from_coordinates(coords);
    for (Vertex w = 0; w < (1u << n); ++w)
      if ((w & v) == v) c.values[w] = c.values[w] * g;
  }
  return c;
}

}  // namespace

TEST(Vertex, OrderAndStrings) {
  EXPECT_EQ(vertex_order(2), (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_EQ(vertex_order(3), (std::vector<Vertex>{0, 1, 2, 4, 3, 5, 6, 7}));
  EXPECT_EQ(vertex_string(6, 3), "110");
  EXPECT_EQ(parse_vertex("110", 3), 6u);
  EXPECT_THROW(parse_vertex("12", 2), Error);
  EXPECT_THROW(parse_vertex("1", 2), Error);
}

TEST(HkCubeFactor, ConstantCube) {
  auto fl = FilteredLattice::lower_central(3);
  auto g = E(3, 0, 1, Rational(1, 3)) * E(3, 1, 2);
  CubeConfig c{3, std::vector<UnipotentMatrix>(8, g)};
  auto f = hk_cube_factor(c, fl);
  ASSERT_TRUE(f.member());
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_EQ(f.factors[0].vertex, 0u);
  EXPECT_EQ(f.factors[0].element, g);
}

TEST(HkCubeFactor, HeisenbergSquare) {
  auto fl = FilteredLattice::lower_central(3);
  auto I = UnipotentMatrix::identity(3);
  auto g = E(3, 0, 1);
  CubeConfig c{2, {I, I, g, g * E(3, 0, 2)}};
  auto f = hk_cube_factor(c, fl);
  ASSERT_TRUE(f.member());
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].vertex, 2u);
  EXPECT_EQ(f.factors[0].element, g);
  EXPECT_EQ(f.factors[1].vertex, 3u);
  EXPECT_EQ(f.factors[1].element, E(3, 0, 2));

  c.values[3] = g * E(3, 0, 1);
  auto bad = hk_cube_factor(c, fl);
  EXPECT_FALSE(bad.member());
  EXPECT_EQ(*bad.witness, 3u);
}

TEST(HkCubeFactor, CompositionWithCubeMorphisms) {
  gen::Rng rng(41);
  auto fl = FilteredLattice::lower_central(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<unsigned>(gen::uniform(rng, 1, 3));
    auto c = random_hk_cube(rng, fl, n);
    ASSERT_TRUE(hk_cube_factor(c, fl).member());
    const auto m = static_cast<unsigned>(gen::uniform(rng, 1, 3));
    auto phi = random_morphism(rng, m, n);
    CubeConfig pulled{m, {}};
    for (Vertex w = 0; w < (1u << m); ++w) pulled.values.push_back(c.values[phi(w, n)]);
    EXPECT_TRUE(hk_cube_factor(pulled, fl).member());
  }
}

TEST(AbelianCubes, MatchExhaustiveEnumeration) {
  for (std::int64_t modulus : {2, 3}) {
    CALGroup group(0, FiniteAbelianGroup({modulus}));
    for (unsigned k = 1; k <= 2; ++k) {
      for (unsigned n = 1; n <= 2; ++n) {
        auto table = oracle::hk_cubes(modulus, n, k);
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
          auto values = oracle::decode(idx, modulus, std::size_t{1} << n);
          AbelianCube cube{n, {}};
          for (auto v : values) cube.values.push_back(group.point({}, {v}));
          EXPECT_EQ(abelian_cube_factor(cube, group, k).member(), static_cast<bool>(table[idx]))
              << "m=" << modulus << " k=" << k << " n=" << n << " idx=" << idx;
        }
      }
    }
  }
}

TEST(CompleteCorner, Examples) {
  CALGroup circle(1, FiniteAbelianGroup());
  std::vector<CALPoint> zeros(7, circle.zero());
  EXPECT_EQ(complete_corner_abelian(zeros, circle, 2), circle.zero());

  std::vector<Integer> linear, monomial;
  for (Vertex v = 0; v < 7; ++v) {
    const long v1 = (v >> 2) & 1, v2 = (v >> 1) & 1, v3 = v & 1;
    linear.push_back(v1 + v2 + v3);
    monomial.push_back(v1 * v2);
  }
  EXPECT_EQ(complete_corner_integer(linear, 2), 3);
  EXPECT_EQ(complete_corner_integer(monomial, 2), 1);
  EXPECT_THROW(complete_corner_integer({1, 2}, 2), Error);
}

TEST(CompleteCorner, CompletionIsACube) {
  gen::Rng rng(42);
  CALGroup z3(0, FiniteAbelianGroup({3}));
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CALPoint> corner;
    for (int i = 0; i < 7; ++i) corner.push_back(z3.point({}, {gen::uniform(rng, 0, 2)}));
    AbelianCube cube{3, corner};
    cube.values.push_back(complete_corner_abelian(corner, z3, 2));
    EXPECT_EQ(alternating_sum(cube, z3), z3.zero());
    EXPECT_TRUE(abelian_cube_factor(cube, z3, 2).member());
  }
}
