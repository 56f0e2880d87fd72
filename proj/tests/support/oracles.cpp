#include "oracles.hpp"

#include <cmath>
#include <bit>
#include <deque>

namespace oracle {

using nilcomp::Complex;
using nilcomp::GroupElement;

double gowers_norm(const nilcomp::ComplexTable& f, unsigned s) {
  const auto& group = f.group();
  const std::size_t n = group.order();
  std::vector<std::size_t> idx(s + 1, 0);
  Complex total = 0;
  std::size_t count = 0;
  for (;;) {
    const GroupElement x = group.element_at(idx[0]);
    Complex prod = 1;
    for (unsigned w = 0; w < (1u << s); ++w) {
      GroupElement y = x;
      for (unsigned j = 0; j < s; ++j)
        if (w & (1u << j)) y = group.add(y, group.element_at(idx[j + 1]));
      const Complex v = f.at(y);
      prod *= (std::popcount(w) % 2 == 0) ? v : std::conj(v);
    }
    total += prod;
    ++count;
    std::size_t d = 0;
    while (d <= s && ++idx[d] == n) idx[d++] = 0;
    if (d > s) break;
  }
  const double avg = total.real() / static_cast<double>(count);
  return avg <= 0 ? 0.0 : std::pow(avg, 1.0 / std::ldexp(1.0, static_cast<int>(s)));
}

nilcomp::UnipotentMatrix power(const nilcomp::UnipotentMatrix& g, long n) {
  auto result = nilcomp::UnipotentMatrix::identity(g.dim());
  const auto step = n >= 0 ? g : g.inverse();
  for (long i = 0; i < std::labs(n); ++i) result = result * step;
  return result;
}

long rationality_order(const nilcomp::FilteredLattice& fl, const nilcomp::UnipotentMatrix& g, long cap) {
  auto p = fl.project(g);
  auto acc = p;
  for (long q = 1; q <= cap; ++q) {
    if (fl.in_lattice(acc)) return q;
    acc = fl.project(acc * p);
  }
  return 0;
}

std::size_t encode(const std::vector<std::int64_t>& values, std::int64_t m) {
  std::size_t index = 0;
  for (auto v : values) index = index * static_cast<std::size_t>(m) + static_cast<std::size_t>(v);
  return index;
}

std::vector<std::int64_t> decode(std::size_t index, std::int64_t m, std::size_t length) {
  std::vector<std::int64_t> out(length);
  for (std::size_t i = length; i-- > 0;) {
    out[i] = static_cast<std::int64_t>(index % static_cast<std::size_t>(m));
    index /= static_cast<std::size_t>(m);
  }
  return out;
}

std::vector<bool> hk_cubes(std::int64_t m, unsigned n, unsigned k) {
  const std::size_t vertices = std::size_t{1} << n;
  // faces: a set of fixed coordinates (mask) with prescribed values
  std::vector<std::vector<std::int64_t>> gens;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<unsigned>(std::popcount(mask)) > k) continue;
    for (unsigned vals = 0; vals < (1u << n); ++vals) {
      if ((vals & ~mask) != 0) continue;
      std::vector<std::int64_t> g(vertices, 0);
      for (unsigned v = 0; v < vertices; ++v)
        if ((v & mask) == vals) g[v] = 1 % m;
      gens.push_back(std::move(g));
    }
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < vertices; ++i) total *= static_cast<std::size_t>(m);
  std::vector<bool> seen(total, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const auto cur = decode(queue.front(), m, vertices);
    queue.pop_front();
    for (const auto& g : gens) {
      auto next = cur;
      for (std::size_t v = 0; v < vertices; ++v) next[v] = (next[v] + g[v]) % m;
      const std::size_t e = encode(next, m);
      if (!seen[e]) {
        seen[e] = true;
        queue.push_back(e);
      }
    }
  }
  return seen;
}

}  // namespace oracle
