#include "nilcomp/cubes.hpp"

#include <algorithm>
#include <bit>

#include "nilcomp/error.hpp"

namespace nilcomp {

namespace {

void check_cube_dimension(unsigned n, std::size_t values) {
  if (n > max_cube_dimension)
    fail(ErrorKind::TooLarge, "cube dimension " + std::to_string(n) + " exceeds " + std::to_string(max_cube_dimension));
  if (values != (std::size_t{1} << n))
    fail(ErrorKind::DimMismatch, "cube of dimension " + std::to_string(n) + " needs " +
                                     std::to_string(std::size_t{1} << n) + " values");
}

bool above(Vertex w, Vertex v) { return (w & v) == v; }

void check_corner(std::size_t size, unsigned k) {
  if (k + 1 > max_cube_dimension) fail(ErrorKind::TooLarge, "corner dimension exceeds the cube cap");
  if (size + 1 != (std::size_t{1} << (k + 1)))
    fail(ErrorKind::DimMismatch, "a corner on {0,1}^" + std::to_string(k + 1) + " needs " +
                                     std::to_string((std::size_t{1} << (k + 1)) - 1) + " values");
}

}  // namespace

unsigned weight(Vertex v) { return static_cast<unsigned>(std::popcount(v)); }

std::vector<Vertex> vertex_order(unsigned n) {
  if (n > max_cube_dimension) fail(ErrorKind::TooLarge, "cube dimension exceeds the cap");
  std::vector<Vertex> out(std::size_t{1} << n);
  for (Vertex v = 0; v < out.size(); ++v) out[v] = v;
  std::stable_sort(out.begin(), out.end(), [](Vertex a, Vertex b) { return weight(a) < weight(b); });
  return out;
}

std::string vertex_string(Vertex v, unsigned n) {
  std::string s(n, '0');
  for (unsigned i = 0; i < n; ++i)
    if (v & (1u << (n - 1 - i))) s[i] = '1';
  return s;
}

Vertex parse_vertex(const std::string& text, unsigned n) {
  if (text.size() != n) fail(ErrorKind::Parse, "vertex '" + text + "' does not have " + std::to_string(n) + " digits");
  Vertex v = 0;
  for (char c : text) {
    if (c != '0' && c != '1') fail(ErrorKind::Parse, "vertex '" + text + "' is not binary");
    v = (v << 1) | static_cast<Vertex>(c - '0');
  }
  return v;
}

CubeFactorization hk_cube_factor(const CubeConfig& cube, const FilteredLattice& fl) {
  check_cube_dimension(cube.n, cube.values.size());
  std::vector<UnipotentMatrix> target;
  for (const auto& g : cube.values) target.push_back(fl.project(g));
  std::vector<UnipotentMatrix> current(target.size(), UnipotentMatrix::identity(fl.dim()));
  CubeFactorization out;
  for (Vertex v : vertex_order(cube.n)) {
    const UnipotentMatrix g = fl.project(current[v].inverse() * target[v]);
    if (g.is_identity()) continue;
    if (!fl.in_level(g, static_cast<int>(weight(v)))) {
      out.witness = v;
      return out;
    }
    for (Vertex w = 0; w < current.size(); ++w)
      if (above(w, v)) current[w] = fl.project(current[w] * g);
    out.factors.push_back({v, g});
  }
  return out;
}

AbelianCubeFactorization abelian_cube_factor(const AbelianCube& cube, const CALGroup& group, unsigned k) {
  check_cube_dimension(cube.n, cube.values.size());
  std::vector<CALPoint> current(cube.values.size(), group.zero());
  AbelianCubeFactorization out;
  for (Vertex v : vertex_order(cube.n)) {
    const CALPoint g = group.subtract(cube.values[v], current[v]);
    if (g == group.zero()) continue;
    if (weight(v) > k) {
      out.witness = v;
      return out;
    }
    for (Vertex w = 0; w < current.size(); ++w)
      if (above(w, v)) current[w] = group.add(current[w], g);
    out.factors.push_back({v, g});
  }
  return out;
}

CALPoint alternating_sum(const AbelianCube& cube, const CALGroup& group) {
  check_cube_dimension(cube.n, cube.values.size());
  CALPoint acc = group.zero();
  for (Vertex v = 0; v < cube.values.size(); ++v)
    acc = weight(v) % 2 == 0 ? group.add(acc, cube.values[v]) : group.subtract(acc, cube.values[v]);
  return acc;
}

CALPoint complete_corner_abelian(const std::vector<CALPoint>& corner, const CALGroup& group, unsigned k) {
  check_corner(corner.size(), k);
  AbelianCube cube{k + 1, corner};
  cube.values.push_back(group.zero());
  const CALPoint s = alternating_sum(cube, group);
  // the top vertex has weight k+1, so c(top) = (-1)^k * s
  return k % 2 == 0 ? s : group.negate(s);
}

Integer complete_corner_integer(const std::vector<Integer>& corner, unsigned k) {
  check_corner(corner.size(), k);
  Integer s = 0;
  for (Vertex v = 0; v < corner.size(); ++v) s += weight(v) % 2 == 0 ? corner[v] : Integer(-corner[v]);
  return k % 2 == 0 ? s : Integer(-s);
}

}  // namespace nilcomp
