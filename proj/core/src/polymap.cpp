#include "nilcomp/polymap.hpp"

#include <algorithm>
#include <set>

#include "nilcomp/error.hpp"

namespace nilcomp {

namespace {

std::string index_string(const MultiIndex& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

Point as_point(const MultiIndex& t) { return Point(t.begin(), t.end()); }

bool dominated(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

void append_with_sum(std::size_t n, unsigned d, MultiIndex& prefix, std::vector<MultiIndex>& out) {
  if (prefix.size() + 1 == n) {
    prefix.push_back(d);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (unsigned first = 0; first <= d; ++first) {
    prefix.push_back(first);
    append_with_sum(n, d - first, prefix, out);
    prefix.pop_back();
  }
}

std::size_t position_of(const std::vector<MultiIndex>& indices, const MultiIndex& t) {
  auto it = std::find(indices.begin(), indices.end(), t);
  if (it == indices.end()) fail(ErrorKind::InvalidArgument, "no coefficient with index " + index_string(t));
  return static_cast<std::size_t>(it - indices.begin());
}

Point shifted(Point x, std::size_t i, const Integer& by) {
  x[i] += by;
  return x;
}

bool periodic_in(const PolyMap& pm, std::size_t i, const Integer& period) {
  const auto diff = interpolate(pm.ambient(), pm.arity(), [&](const Point& x) {
    return pm.eval(x).inverse() * pm.eval(shifted(x, i, period));
  });
  const auto& cs = diff.coefficients();
  return std::all_of(cs.begin(), cs.end(), [&](const UnipotentMatrix& c) { return pm.ambient().in_lattice(c); });
}

std::vector<Integer> union_primes(const Integer& a, const Integer& b) {
  std::set<Integer> primes;
  for (const auto& p : prime_factors(a)) primes.insert(p);
  for (const auto& p : prime_factors(b)) primes.insert(p);
  return {primes.begin(), primes.end()};
}

template <class Periodic>
Integer descend(Integer period, const std::vector<Integer>& primes, Periodic&& periodic) {
  for (const auto& p : primes)
    while (period % p == 0 && periodic(Integer(period / p))) period /= p;
  return period;
}

Integer nonconstant_order_lcm(const PolyMap& pm) {
  Integer q = 1;
  for (std::size_t i = 1; i < pm.indices().size(); ++i)
    q = lcm(q, *rationality_order(pm.ambient(), pm.coefficients()[i]));
  return q;
}

}  // namespace

unsigned total_degree(const MultiIndex& t) {
  unsigned s = 0;
  for (auto v : t) s += v;
  return s;
}

std::vector<MultiIndex> multi_indices(std::size_t n, unsigned k) {
  std::vector<MultiIndex> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  MultiIndex prefix;
  for (unsigned d = 0; d <= k; ++d) append_with_sum(n, d, prefix, out);
  return out;
}

Integer binomial(const Point& x, const MultiIndex& t) {
  if (x.size() != t.size()) fail(ErrorKind::ArityMismatch, "point and multi-index lengths differ");
  Integer r = 1;
  for (std::size_t i = 0; i < t.size() && r != 0; ++i) r *= binomial(x[i], t[i]);
  return r;
}

std::vector<Point> grid(std::size_t n, unsigned k) {
  double count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= static_cast<double>(k) + 1;
  if (count > 1e6) fail(ErrorKind::TooLarge, "interpolation grid exceeds 10^6 points");
  std::vector<Point> out{Point(n, Integer(0))};
  for (std::size_t i = n; i-- > 0;) {
    std::vector<Point> next;
    next.reserve(out.size() * (k + 1));
    for (const auto& p : out)
      for (unsigned v = 0; v <= k; ++v) next.push_back(shifted(p, i, v));
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PolyMap::PolyMap(FilteredLattice ambient, std::size_t arity, const std::map<MultiIndex, UnipotentMatrix>& coeffs)
    : ambient_(std::move(ambient)), arity_(arity), indices_(multi_indices(arity, degree())) {
  coeffs_.assign(indices_.size(), UnipotentMatrix::identity(ambient_.dim()));
  for (const auto& [t, g] : coeffs) {
    if (t.size() != arity_)
      fail(ErrorKind::ArityMismatch, "coefficient index " + index_string(t) + " does not have arity " +
                                         std::to_string(arity_));
    const UnipotentMatrix a = ambient_.project(g);
    if (total_degree(t) > degree()) {
      if (!a.is_identity())
        fail(ErrorKind::NotPolynomial, "coefficient " + index_string(t) + " exceeds the degree of the filtration");
      continue;
    }
    if (total_degree(t) > 0 && !ambient_.in_level(a, static_cast<int>(total_degree(t))))
      fail(ErrorKind::NotPolynomial, "coefficient " + index_string(t) + " is not in G_" +
                                         std::to_string(total_degree(t)));
    coeffs_[position_of(indices_, t)] = a;
  }
}

const UnipotentMatrix& PolyMap::coefficient(const MultiIndex& t) const { return coeffs_[position_of(indices_, t)]; }

UnipotentMatrix PolyMap::eval(const Point& x) const {
  if (x.size() != arity_)
    fail(ErrorKind::ArityMismatch, "point has " + std::to_string(x.size()) + " coordinates, map has arity " +
                                       std::to_string(arity_));
  UnipotentMatrix acc = UnipotentMatrix::identity(ambient_.dim());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (coeffs_[i].is_identity()) continue;
    const Integer e = binomial(x, indices_[i]);
    if (e != 0) acc *= coeffs_[i].pow(e);
  }
  return ambient_.project(acc);
}

PolyMap PolyMap::with_ambient(FilteredLattice ambient) const {
  std::map<MultiIndex, UnipotentMatrix> coeffs;
  for (std::size_t i = 0; i < indices_.size(); ++i) coeffs.emplace(indices_[i], coeffs_[i]);
  return PolyMap(std::move(ambient), arity_, coeffs);
}

PolyMap interpolate(const FilteredLattice& ambient, std::size_t arity, const MatrixFunction& values, int shift) {
  const unsigned k = static_cast<unsigned>(ambient.degree());
  const auto indices = multi_indices(arity, k);
  std::map<MultiIndex, UnipotentMatrix> coeffs;
  std::vector<UnipotentMatrix> found;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto& t = indices[i];
    const Point x = as_point(t);
    UnipotentMatrix prefix = UnipotentMatrix::identity(ambient.dim());
    for (std::size_t j = 0; j < i; ++j)
      if (dominated(indices[j], t)) prefix *= found[j].pow(binomial(x, indices[j]));
    const UnipotentMatrix a = ambient.project(prefix.inverse() * values(x));
    const int need = static_cast<int>(total_degree(t)) + shift;
    if (total_degree(t) > 0 && !ambient.in_level(a, need))
      fail(ErrorKind::NotPolynomial, "Taylor coefficient " + index_string(t) + " is not in G_" + std::to_string(need));
    found.push_back(a);
    coeffs.emplace(t, a);
  }
  PolyMap pm(ambient, arity, coeffs);
  for (const auto& x : grid(arity, k)) {
    Integer s = 0;
    for (const auto& v : x) s += v;
    if (s <= k) continue;
    if (!(ambient.project(values(x)) == pm.eval(x))) {
      MultiIndex t;
      for (const auto& v : x) t.push_back(static_cast<unsigned>(v.get_ui()));
      fail(ErrorKind::NotPolynomial, "values have a nontrivial Taylor coefficient at " + index_string(t));
    }
  }
  return pm;
}

PolyMap derivative(const PolyMap& pm, const Point& h) {
  if (h.size() != pm.arity()) fail(ErrorKind::ArityMismatch, "shift has the wrong number of coordinates");
  if (std::all_of(h.begin(), h.end(), [](const Integer& v) { return v == 0; }))
    fail(ErrorKind::InvalidArgument, "derivative shift must be nonzero");
  return interpolate(
      pm.ambient(), pm.arity(),
      [&](const Point& x) {
        Point y = x;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += h[i];
        return pm.eval(x).inverse() * pm.eval(y);
      },
      1);
}

std::vector<UnipotentMatrix> hall_petresco(const UnipotentMatrix& g, const UnipotentMatrix& h,
                                           const FilteredLattice& fl) {
  fl.require_valid();
  const UnipotentMatrix a = fl.project(g), b = fl.project(h);
  const UnipotentMatrix ab = a * b;
  auto u = [&](const Integer& n) { return fl.project(ab.pow(-n) * a.pow(n) * b.pow(n)); };
  const int k = fl.degree();
  std::vector<UnipotentMatrix> c(2, UnipotentMatrix::identity(fl.dim()));
  for (int i = 2; i <= k; ++i) {
    UnipotentMatrix prefix = UnipotentMatrix::identity(fl.dim());
    for (int j = 2; j < i; ++j) prefix *= c[j].pow(binomial(Integer(i), static_cast<unsigned>(j)));
    UnipotentMatrix ci = fl.project(prefix.inverse() * u(i));
    if (!fl.in_level(ci, i))
      fail(ErrorKind::FiltrationViolation, "Hall-Petresco coefficient c_" + std::to_string(i) + " is not in G_" +
                                               std::to_string(i));
    c.push_back(std::move(ci));
  }
  for (int n = 0; n <= 2 * k; ++n) {
    UnipotentMatrix rhs = ab.pow(n);
    for (int i = 2; i <= k; ++i) rhs *= c[i].pow(binomial(Integer(n), static_cast<unsigned>(i)));
    if (!(fl.project(a.pow(n) * b.pow(n)) == fl.project(rhs)))
      fail(ErrorKind::FiltrationViolation, "Hall-Petresco identity fails at n = " + std::to_string(n));
  }
  return {c.begin() + 2, c.end()};
}

bool is_periodic_mod_lattice(const PolyMap& pm, const Integer& period) {
  return is_periodic_mod_lattice(pm, std::vector<Integer>(pm.arity(), period));
}

bool is_periodic_mod_lattice(const PolyMap& pm, const std::vector<Integer>& periods) {
  if (periods.size() != pm.arity()) fail(ErrorKind::ArityMismatch, "one period per argument is required");
  for (const auto& p : periods)
    if (p <= 0) fail(ErrorKind::InvalidArgument, "periods must be positive");
  for (std::size_t i = 0; i < periods.size(); ++i)
    if (!periodic_in(pm, i, periods[i])) return false;
  return true;
}

Integer abelian_rationality_bound(unsigned k, const Integer& period) {
  if (k == 0) return 1;
  if (k == 1) return period;
  return lcm(period, abelian_rationality_bound(k - 1, factorial(k) * period));
}

Integer rationality_bound(unsigned k, const Integer& period) {
  if (k == 0) return 1;
  const Integer q1 = rationality_bound(k - 1, period);
  const Integer corrected = period_bound(k, q1);
  return lcm(q1, abelian_rationality_bound(k, lcm(period, corrected)));
}

RationalizeResult rationalize(const PolyMap& pm, const Integer& period) {
  pm.ambient().require_valid();
  if (period <= 0) fail(ErrorKind::InvalidArgument, "period must be positive");
  if (!is_periodic_mod_lattice(pm, period))
    fail(ErrorKind::PreconditionFailed, "map is not " + to_string(period) + "-periodic modulo the lattice");
  RationalizeResult out;
  out.q = 1;
  for (std::size_t i = 1; i < pm.indices().size(); ++i) {
    out.orders.push_back(*rationality_order(pm.ambient(), pm.coefficients()[i]));
    out.q = lcm(out.q, out.orders.back());
  }
  out.q_bound = rationality_bound(pm.degree(), period);
  if (out.q_bound % out.q != 0)
    fail(ErrorKind::PreconditionFailed, "coefficient orders do not divide the induction bound");
  for (std::size_t i = 1; i < pm.indices().size(); ++i) {
    out.witnesses.push_back(pm.ambient().project(pm.coefficients()[i].pow(out.q)));
    if (!pm.ambient().in_lattice(out.witnesses.back()))
      fail(ErrorKind::PreconditionFailed, "witness " + index_string(pm.indices()[i]) + " is not in the lattice");
  }
  return out;
}

Integer period_bound(unsigned k, const Integer& q) {
  const unsigned long kk = k;
  return ipow(q, 1 + kk * kk * (kk + 1) * (kk + 1) / 4) * factorial(k);
}

Integer period_from_rational(const PolyMap& pm, const Integer& q) {
  if (q <= 0) fail(ErrorKind::InvalidArgument, "q must be positive");
  for (std::size_t i = 1; i < pm.indices().size(); ++i)
    if (!pm.ambient().in_lattice(pm.coefficients()[i].pow(q)))
      fail(ErrorKind::PreconditionFailed, "coefficient " + index_string(pm.indices()[i]) + " raised to " +
                                              to_string(q) + " is not in the lattice");
  const Integer m = period_bound(pm.degree(), q);
  if (!is_periodic_mod_lattice(pm, m))
    fail(ErrorKind::PeriodMismatch, "map is not periodic with the bound " + to_string(m));
  return m;
}

std::vector<Integer> minimal_periods(const PolyMap& pm) {
  const Integer q = nonconstant_order_lcm(pm);
  const Integer bound = period_from_rational(pm, q);
  const auto primes = union_primes(q, factorial(pm.degree()));
  std::vector<Integer> out;
  for (std::size_t i = 0; i < pm.arity(); ++i)
    out.push_back(descend(bound, primes, [&](const Integer& p) { return periodic_in(pm, i, p); }));
  return out;
}

Integer minimal_period(const PolyMap& pm) {
  Integer m = 1;
  for (const auto& p : minimal_periods(pm)) m = lcm(m, p);
  return m;
}

AbelianPolyMap::AbelianPolyMap(CALGroup target, std::size_t arity, unsigned degree,
                               const std::map<MultiIndex, CALPoint>& coeffs)
    : target_(std::move(target)), arity_(arity), degree_(degree), indices_(multi_indices(arity, degree)) {
  coeffs_.assign(indices_.size(), target_.zero());
  for (const auto& [t, a] : coeffs) {
    if (t.size() != arity_) fail(ErrorKind::ArityMismatch, "coefficient index " + index_string(t) + " has the wrong arity");
    const CALPoint p = target_.point(a.torus, a.finite.coords);
    if (total_degree(t) > degree_) {
      if (!(p == target_.zero()))
        fail(ErrorKind::NotPolynomial, "coefficient " + index_string(t) + " exceeds the degree");
      continue;
    }
    coeffs_[position_of(indices_, t)] = p;
  }
}

const CALPoint& AbelianPolyMap::coefficient(const MultiIndex& t) const { return coeffs_[position_of(indices_, t)]; }

CALPoint AbelianPolyMap::eval(const Point& x) const {
  if (x.size() != arity_) fail(ErrorKind::ArityMismatch, "point has the wrong number of coordinates");
  CALPoint acc = target_.zero();
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const Integer e = binomial(x, indices_[i]);
    if (e != 0) acc = target_.add(acc, target_.scale(coeffs_[i], e));
  }
  return acc;
}

bool AbelianPolyMap::is_zero() const {
  const CALPoint z = target_.zero();
  return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const CALPoint& c) { return c == z; });
}

AbelianPolyMap interpolate_abelian(const CALGroup& target, std::size_t arity, unsigned degree,
                                   const PointFunction& values) {
  const auto indices = multi_indices(arity, degree);
  std::map<MultiIndex, CALPoint> coeffs;
  std::vector<CALPoint> found;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const Point x = as_point(indices[i]);
    CALPoint a = values(x);
    for (std::size_t j = 0; j < i; ++j)
      if (dominated(indices[j], indices[i])) a = target.subtract(a, target.scale(found[j], binomial(x, indices[j])));
    found.push_back(a);
    coeffs.emplace(indices[i], a);
  }
  AbelianPolyMap m(target, arity, degree, coeffs);
  for (const auto& x : grid(arity, degree)) {
    Integer s = 0;
    for (const auto& v : x) s += v;
    if (s > degree && !(values(x) == m.eval(x)))
      fail(ErrorKind::NotPolynomial, "values are not polynomial of degree " + std::to_string(degree));
  }
  return m;
}

AbelianPolyMap derivative(const AbelianPolyMap& m, const Point& h) {
  if (h.size() != m.arity()) fail(ErrorKind::ArityMismatch, "shift has the wrong number of coordinates");
  const unsigned degree = m.degree() == 0 ? 0 : m.degree() - 1;
  return interpolate_abelian(m.target(), m.arity(), degree, [&](const Point& x) {
    Point y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h[i];
    return m.target().subtract(m.eval(y), m.eval(x));
  });
}

namespace {

bool abelian_periodic_in(const AbelianPolyMap& m, std::size_t i, const Integer& period) {
  Point h(m.arity(), Integer(0));
  h[i] = period;
  return derivative(m, h).is_zero();
}

}  // namespace

bool is_periodic(const AbelianPolyMap& m, const Integer& period) {
  if (period <= 0) fail(ErrorKind::InvalidArgument, "period must be positive");
  for (std::size_t i = 0; i < m.arity(); ++i)
    if (!abelian_periodic_in(m, i, period)) return false;
  return true;
}

AbelianRationalizeResult rationalize(const AbelianPolyMap& m, const Integer& period) {
  if (!is_periodic(m, period))
    fail(ErrorKind::PreconditionFailed, "map is not " + to_string(period) + "-periodic");
  AbelianRationalizeResult out;
  out.q = 1;
  for (std::size_t i = 1; i < m.indices().size(); ++i) {
    out.orders.push_back(m.target().order(m.coefficients()[i]));
    out.q = lcm(out.q, out.orders.back());
  }
  out.q_bound = abelian_rationality_bound(m.degree(), period);
  if (out.q_bound % out.q != 0)
    fail(ErrorKind::PreconditionFailed, "coefficient orders do not divide the induction bound");
  return out;
}

Integer minimal_period(const AbelianPolyMap& m) {
  Integer q = 1;
  for (std::size_t i = 1; i < m.indices().size(); ++i) q = lcm(q, m.target().order(m.coefficients()[i]));
  const Integer bound = q * factorial(m.degree());
  const auto primes = union_primes(q, factorial(m.degree()));
  Integer out = 1;
  for (std::size_t i = 0; i < m.arity(); ++i)
    out = lcm(out, descend(bound, primes, [&](const Integer& p) { return abelian_periodic_in(m, i, p); }));
  return out;
}

}  // namespace nilcomp
