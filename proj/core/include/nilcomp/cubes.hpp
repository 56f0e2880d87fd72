#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nilcomp/abelian.hpp"
#include "nilcomp/filtered.hpp"
#include "nilcomp/unipotent.hpp"

namespace nilcomp {

/// A vertex of {0,1}^n is the integer whose binary digits, most significant
/// first, are v_1 ... v_n.
using Vertex = unsigned;

constexpr unsigned max_cube_dimension = 6;

unsigned weight(Vertex v);
/// Vertices ordered by weight, then numerically.
std::vector<Vertex> vertex_order(unsigned n);
std::string vertex_string(Vertex v, unsigned n);
/// Inverse of vertex_string; throws Parse.
Vertex parse_vertex(const std::string& text, unsigned n);

struct CubeConfig {
  unsigned n = 0;
  std::vector<UnipotentMatrix> values;  // indexed by vertex
};

struct CubeFactor {
  Vertex vertex;
  UnipotentMatrix element;
};

struct CubeFactorization {
  std::vector<CubeFactor> factors;  // nonidentity corrections only
  std::optional<Vertex> witness;    // first failing vertex for non-members

  bool member() const noexcept { return !witness.has_value(); }
  explicit operator bool() const noexcept { return member(); }
};

/// Greedy peel in vertex_order: g_v = current(v)^-1 c(v) must lie in G_{|v|},
/// then the upper face {w >= v} is multiplied on the right by g_v.
CubeFactorization hk_cube_factor(const CubeConfig& cube, const FilteredLattice& fl);

struct AbelianCube {
  unsigned n = 0;
  std::vector<CALPoint> values;
};

struct AbelianCubeFactor {
  Vertex vertex;
  CALPoint element;
};

struct AbelianCubeFactorization {
  std::vector<AbelianCubeFactor> factors;
  std::optional<Vertex> witness;

  bool member() const noexcept { return !witness.has_value(); }
  explicit operator bool() const noexcept { return member(); }
};

/// Same peel for the degree-k abelian filtration D_k(A): corrections at
/// vertices of weight above k must vanish.
AbelianCubeFactorization abelian_cube_factor(const AbelianCube& cube, const CALGroup& group, unsigned k);

/// sum_v (-1)^{|v|} c(v)
CALPoint alternating_sum(const AbelianCube& cube, const CALGroup& group);

/// Completes a corner on {0,1}^{k+1} (values for every vertex but the top
/// one, in vertex index order) so that the alternating sum vanishes.
CALPoint complete_corner_abelian(const std::vector<CALPoint>& corner, const CALGroup& group, unsigned k);
Integer complete_corner_integer(const std::vector<Integer>& corner, unsigned k);

}  // namespace nilcomp
