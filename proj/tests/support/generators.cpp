#include "generators.hpp"

#include <cmath>

#include "nilcomp/error.hpp"

namespace gen {

using namespace nilcomp;

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational rational(Rng& rng, long max_den, long max_abs_num) {
  return Rational(uniform(rng, -max_abs_num, max_abs_num)) / Rational(uniform(rng, 1, max_den));
}

UnipotentMatrix unipotent(Rng& rng, const FilteredLattice& fl, long max_den, long max_abs_num) {
  std::vector<Rational> c;
  for (std::size_t i = 0; i < fl.positions().size(); ++i) c.push_back(rational(rng, max_den, max_abs_num));
  return fl.from_coordinates(c);
}

UnipotentMatrix lattice_element(Rng& rng, const FilteredLattice& fl, int level, long range) {
  std::vector<Rational> c;
  for (const auto& p : fl.positions())
    c.push_back(fl.level(p) >= level ? Rational(uniform(rng, -range, range)) / Rational(fl.denominator(p))
                                     : Rational(0));
  return fl.from_coordinates(c);
}

UnipotentMatrix q_rational(Rng& rng, const FilteredLattice& fl, long q, int level) {
  return fl.project(rat_pow(lattice_element(rng, fl, level), Rational(1) / Rational(q)));
}

PolyMap polymap(Rng& rng, const FilteredLattice& fl, std::size_t arity, long q) {
  std::map<MultiIndex, UnipotentMatrix> coeffs;
  for (const auto& t : multi_indices(arity, static_cast<unsigned>(fl.degree()))) {
    const unsigned d = total_degree(t);
    coeffs.emplace(t, d == 0 ? unipotent(rng, fl, 4) : q_rational(rng, fl, q, static_cast<int>(d)));
  }
  return PolyMap(fl, arity, coeffs);
}

FiniteAbelianGroup group(Rng& rng, std::size_t max_order, std::size_t max_factors) {
  for (;;) {
    const auto factors = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_factors)));
    std::vector<std::int64_t> moduli;
    std::size_t order = 1;
    for (std::size_t i = 0; i < factors; ++i) {
      moduli.push_back(uniform(rng, 2, 8));
      order *= static_cast<std::size_t>(moduli.back());
    }
    if (order <= max_order) return FiniteAbelianGroup(moduli);
  }
}

AbelianHom surjection(Rng& rng, const FiniteAbelianGroup& target, std::size_t max_source_order) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    FiniteAbelianGroup source = group(rng, max_source_order, 3);
    if (source.order() < target.order()) continue;
    std::vector<std::vector<std::int64_t>> m(target.num_factors(), std::vector<std::int64_t>(source.num_factors()));
    for (auto& row : m)
      for (auto& v : row) v = uniform(rng, 0, 7);
    try {
      AbelianHom tau(source, target, m);
      if (tau.is_surjective()) return tau;
    } catch (const Error&) {
      // not well defined on the chosen source
    }
  }
  fail(ErrorKind::InvalidArgument, "could not sample a surjection");
}

ComplexTable bounded_table(Rng& rng, const FiniteAbelianGroup& group) {
  std::uniform_real_distribution<double> radius(0.0, 1.0), angle(0.0, 2 * M_PI);
  std::vector<Complex> values(group.order());
  for (auto& v : values) v = std::polar(radius(rng), angle(rng));
  return ComplexTable(group, std::move(values));
}

}  // namespace gen
