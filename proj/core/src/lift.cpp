#include "nilcomp/lift.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "nilcomp/error.hpp"

namespace nilcomp {

namespace {

bool is_central(const FilteredLattice& fl, const UnipotentMatrix& r) {
  for (const auto& p : fl.positions()) {
    const auto e = UnipotentMatrix::elementary(fl.dim(), p.row, p.col);
    if (!(fl.project(e * r) == fl.project(r * e))) return false;
  }
  return true;
}

Integer order_lcm(const PolyMap& pm) {
  Integer q = 1;
  for (std::size_t i = 1; i < pm.coefficients().size(); ++i)
    q = lcm(q, *rationality_order(pm.ambient(), pm.coefficients()[i]));
  return q;
}

const UnipotentMatrix* find_coefficient(const PolyMap& pm, const MultiIndex& t) {
  if (total_degree(t) > pm.degree()) return nullptr;
  return &pm.coefficient(t);
}

Integer row_denominator(const std::vector<Rational>& row) {
  Integer d = 1;
  for (const auto& v : row) d = lcm(d, Integer(v.get_den()));
  return d;
}

// Integer system rows (coefficients then right-hand side) scaled to clear
// denominators.
std::optional<IntegerSolution> solve_scaled(const std::vector<std::vector<Rational>>& rows, std::size_t unknowns) {
  IntMatrix a(rows.size(), unknowns);
  std::vector<Integer> b(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Integer d = row_denominator(rows[r]);
    for (std::size_t c = 0; c < unknowns; ++c) a(r, c) = Rational(rows[r][c] * d).get_num();
    b[r] = Rational(rows[r][unknowns] * d).get_num();
  }
  return solve_integer(a, b);
}

constexpr std::size_t preimage_search_cap = std::size_t{1} << 16;

// Least preimage (cover order) of `a` under eta among those of order
// dividing `big_q`.
CALPoint least_preimage(const CALHom& eta, const CALPoint& a, const Integer& big_q) {
  const CALGroup& src = eta.source();
  const CALGroup& dst = eta.target();
  const std::size_t ta = src.torus_dim(), fa = src.finite().num_factors();
  const std::size_t na = ta + fa, tb = dst.torus_dim(), nb = dst.coordinate_count();
  const std::size_t unknowns = na + nb + fa;  // u, w, lambda, mu
  const auto a_cover = dst.to_cover(a);
  const Rational qq(big_q);

  std::vector<std::vector<Rational>> rows;
  for (std::size_t r = 0; r < nb; ++r) {
    std::vector<Rational> row(unknowns + 1);
    for (std::size_t c = 0; c < ta; ++c) row[c] = eta.matrix()(r, c) / qq;
    for (std::size_t c = ta; c < na; ++c) row[c] = eta.matrix()(r, c);
    row[na + r] = r < tb ? Rational(-1) : Rational(-dst.finite().moduli()[r - tb]);
    row[unknowns] = a_cover[r];
    rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < fa; ++j) {
    std::vector<Rational> row(unknowns + 1);
    row[ta + j] = qq;
    row[na + nb + j] = Rational(-src.finite().moduli()[j]);
    rows.push_back(std::move(row));
  }
  const auto sol = solve_scaled(rows, unknowns);
  if (!sol) fail(ErrorKind::PreconditionFailed, "no preimage of order dividing " + to_string(big_q));

  auto to_point = [&](const std::vector<Integer>& v) {
    std::vector<Rational> cover(na);
    for (std::size_t c = 0; c < ta; ++c) cover[c] = Rational(v[c]) / qq;
    for (std::size_t c = ta; c < na; ++c) cover[c] = Rational(v[c]);
    return src.from_cover(cover);
  };
  std::vector<CALPoint> steps;
  for (const auto& k : sol->kernel) {
    CALPoint d = to_point(k);
    if (!(d == src.zero())) steps.push_back(std::move(d));
  }
  CALPoint start = to_point(sol->particular);
  std::set<std::vector<Rational>> seen{src.to_cover(start)};
  std::deque<CALPoint> queue{start};
  while (!queue.empty() && seen.size() < preimage_search_cap) {
    const CALPoint p = queue.front();
    queue.pop_front();
    for (const auto& s : steps) {
      CALPoint next = src.add(p, s);
      if (seen.insert(src.to_cover(next)).second) queue.push_back(std::move(next));
    }
  }
  return src.from_cover(*seen.begin());
}

// Exponent of Lambda_X / phi(Lambda_Y) for the band map in lattice
// coordinates.
Integer coker_exponent(const RatMatrix& phi, const std::vector<Integer>& sx, const std::vector<Integer>& sy) {
  if (phi.rows() == 0) return 1;
  IntMatrix b(phi.rows(), phi.cols());
  for (std::size_t p = 0; p < phi.rows(); ++p)
    for (std::size_t q = 0; q < phi.cols(); ++q) b(p, q) = Rational(phi(p, q) * sx[p] / sy[q]).get_num();
  const auto factors = snf(b).invariant_factors();
  if (factors.size() != phi.rows()) fail(ErrorKind::NonSurjective, "band map is not surjective");
  return factors.back();
}

}  // namespace

UnipotentMatrix central_rational_correction(const FilteredLattice& fl, const UnipotentMatrix& g, const Integer& q) {
  fl.require_valid();
  if (q <= 0) fail(ErrorKind::InvalidArgument, "q must be positive");
  const UnipotentMatrix g0 = fl.project(g);
  if (fl.degree() == 0) return UnipotentMatrix::identity(fl.dim());
  const FilteredLattice quotient = fl.quotient_top();
  const UnipotentMatrix y = g0.pow(q);
  if (!quotient.in_lattice(quotient.project(y)))
    fail(ErrorKind::PreconditionFailed, "g^" + to_string(q) + " is not in Gamma G_k");
  RatMatrix r = RatMatrix::identity(fl.dim());
  for (const auto& p : fl.band(fl.degree())) {
    const Rational cell = Rational(1) / Rational(fl.denominator(p));
    r(p.row, p.col) = -reduce_mod(y(p.row, p.col), cell) / Rational(q);
  }
  const UnipotentMatrix out = UnipotentMatrix::from_matrix(std::move(r));
  if (!fl.in_lattice((g0 * out).pow(q)) || !is_central(fl, out))
    fail(ErrorKind::PreconditionFailed, "central correction failed to verify");
  return out;
}

AbelianLiftResult lift_abelian_poly(const AbelianPolyMap& m, const CALHom& eta, const Integer& period) {
  if (!(eta.target() == m.target())) fail(ErrorKind::GroupMismatch, "hom target differs from the map's target");
  if (!eta.is_surjective()) fail(ErrorKind::NonSurjective, "lifting hom is not surjective");
  if (period <= 0) fail(ErrorKind::InvalidArgument, "period must be positive");
  if (!is_periodic(m, period))
    fail(ErrorKind::PreconditionFailed, "map is not " + to_string(period) + "-periodic");
  const Integer qp = eta.kernel_component_exponent();
  const CALGroup& src = eta.source();

  Integer q = 1;
  std::map<MultiIndex, CALPoint> coeffs;
  for (std::size_t i = 0; i < m.indices().size(); ++i) {
    const CALPoint& a = m.coefficients()[i];
    const Integer order = m.target().order(a);
    if (i > 0) q = lcm(q, order);
    CALPoint b = least_preimage(eta, a, order * qp);
    if (!(eta.apply(b) == a)) fail(ErrorKind::PreconditionFailed, "preimage failed to verify");
    coeffs.emplace(m.indices()[i], std::move(b));
  }
  AbelianPolyMap lifted(src, m.arity(), m.degree(), coeffs);
  Integer lifted_q = 1;
  for (std::size_t i = 1; i < lifted.coefficients().size(); ++i)
    lifted_q = lcm(lifted_q, src.order(lifted.coefficients()[i]));
  const Integer bound = period_bound(m.degree(), lifted_q);
  if (!is_periodic(lifted, bound)) fail(ErrorKind::PeriodMismatch, "lift is not periodic with the bound");
  const Integer minimal = minimal_period(lifted);
  return {std::move(lifted), q, qp, bound, minimal};
}

LiftResult lift_last_level(const FilteredLattice& fl, const PolyMap& f, const Integer& period) {
  fl.require_valid();
  if (fl.degree() == 0) fail(ErrorKind::InvalidArgument, "lifting needs a lattice of positive degree");
  if (f.ambient().dim() != fl.dim()) fail(ErrorKind::DimMismatch, "map and lattice dimensions differ");
  const FilteredLattice quotient = fl.quotient_top();
  const PolyMap fq = f.with_ambient(quotient);
  const RationalizeResult rat = rationalize(fq, period);

  LiftReport report;
  report.input_period = period;
  report.q = rat.q;
  std::map<MultiIndex, UnipotentMatrix> coeffs;
  for (const auto& t : multi_indices(f.arity(), static_cast<unsigned>(fl.degree()))) {
    const UnipotentMatrix* found = find_coefficient(fq, t);
    const UnipotentMatrix a = found ? *found : UnipotentMatrix::identity(fl.dim());
    if (total_degree(t) == 0) {
      coeffs.emplace(t, a);
      continue;
    }
    const UnipotentMatrix r = central_rational_correction(fl, a, rat.q);
    if (!r.is_identity()) report.corrections.push_back({fl.degree(), t, r});
    coeffs.emplace(t, fl.project(a * r));
  }
  PolyMap lifted(fl, f.arity(), coeffs);
  if (!(lifted.with_ambient(quotient) == fq))
    fail(ErrorKind::PreconditionFailed, "lift does not reduce to the input");
  report.output_period = period_bound(static_cast<unsigned>(fl.degree()), rat.q);
  if (!is_periodic_mod_lattice(lifted, report.output_period))
    fail(ErrorKind::PeriodMismatch, "lift is not periodic with the bound");
  report.minimal_period = minimal_period(lifted);
  return {std::move(lifted), std::move(report)};
}

FibrationDatum::FibrationDatum(FilteredLattice y, FilteredLattice x, RatMatrix psi)
    : y_(std::move(y)), x_(std::move(x)), psi_(std::move(psi)) {
  y_.require_valid();
  x_.require_valid();
  const auto& yp = y_.positions();
  const auto& xp = x_.positions();
  if (psi_.rows() != xp.size() || psi_.cols() != yp.size())
    fail(ErrorKind::DimMismatch, "fibration matrix must be " + std::to_string(xp.size()) + " x " +
                                     std::to_string(yp.size()));
  if (x_.degree() > y_.degree()) fail(ErrorKind::InvalidArgument, "target degree exceeds source degree");
  for (std::size_t p = 0; p < xp.size(); ++p) {
    for (std::size_t q = 0; q < yp.size(); ++q) {
      if (psi_(p, q) == 0) continue;
      if (x_.level(xp[p]) < y_.level(yp[q]))
        fail(ErrorKind::FiltrationViolation, "Psi sends " + to_string(yp[q]) + " below its level at " + to_string(xp[p]));
      if (!is_integer(Rational(psi_(p, q) * x_.denominator(xp[p]) / y_.denominator(yp[q]))))
        fail(ErrorKind::InvalidArgument, "Psi does not map the source lattice into the target lattice");
    }
  }
  for (int level = 1; level <= x_.degree(); ++level) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t p = 0; p < xp.size(); ++p)
      if (x_.level(xp[p]) == level) rows.push_back(p);
    for (std::size_t q = 0; q < yp.size(); ++q)
      if (y_.level(yp[q]) == level) cols.push_back(q);
    RatMatrix block(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) block(i, j) = psi_(rows[i], cols[j]);
    if (rational_rank(block) != rows.size())
      fail(ErrorKind::NonSurjective, "Psi is not onto band " + std::to_string(level));
  }
  const Rational scalars[] = {Rational(1), Rational(-2, 3)};
  for (const auto& a : yp) {
    for (const auto& b : yp) {
      for (const auto& c : scalars) {
        const auto g = UnipotentMatrix::elementary(y_.dim(), a.row, a.col, c);
        const auto h = UnipotentMatrix::elementary(y_.dim(), b.row, b.col, Rational(1, 2));
        if (!(x_.project(apply(g) * apply(h)) == apply(g * h)))
          fail(ErrorKind::InvalidArgument, "Psi is not a homomorphism on " + to_string(a) + ", " + to_string(b));
      }
    }
  }
}

FibrationDatum FibrationDatum::identity(const FilteredLattice& y) {
  return FibrationDatum(y, y, RatMatrix::identity(y.positions().size()));
}

FibrationDatum FibrationDatum::projection(const FilteredLattice& y, const FilteredLattice& x) {
  if (y.dim() != x.dim()) fail(ErrorKind::DimMismatch, "projection needs lattices of the same dimension");
  const auto& yp = y.positions();
  const auto& xp = x.positions();
  RatMatrix psi(xp.size(), yp.size());
  for (std::size_t p = 0; p < xp.size(); ++p) {
    auto it = std::find(yp.begin(), yp.end(), xp[p]);
    if (it == yp.end()) fail(ErrorKind::InvalidArgument, "target position " + to_string(xp[p]) + " is inactive in the source");
    psi(p, static_cast<std::size_t>(it - yp.begin())) = 1;
  }
  return FibrationDatum(y, x, std::move(psi));
}

bool FibrationDatum::is_identity() const {
  return y_ == x_ && psi_ == RatMatrix::identity(y_.positions().size());
}

UnipotentMatrix FibrationDatum::apply(const UnipotentMatrix& g) const {
  return x_.from_coordinates(psi_ * y_.coordinates(y_.project(g)));
}

LiftResult lift_through_fibration(const FibrationDatum& fib, const PolyMap& f, const Integer& period) {
  const FilteredLattice& Y = fib.source();
  const FilteredLattice& X = fib.target();
  if (f.ambient().dim() != X.dim()) fail(ErrorKind::DimMismatch, "map dimension differs from the fibration target");
  const PolyMap fx = f.with_ambient(X);
  if (period <= 0) fail(ErrorKind::InvalidArgument, "period must be positive");
  if (!is_periodic_mod_lattice(fx, period))
    fail(ErrorKind::PreconditionFailed, "map is not " + to_string(period) + "-periodic modulo the lattice");
  const std::size_t n = fx.arity();

  if (fib.is_identity()) {
    LiftReport report;
    report.input_period = period;
    report.output_period = period;
    report.q = order_lcm(fx);
    report.minimal_period = minimal_period(fx);
    return {fx, std::move(report)};
  }

  const int k = Y.degree();
  LiftReport report;
  report.input_period = period;
  PolyMap current(Y.truncate(0), n);
  Integer current_period = 1;
  for (int j = 1; j <= k; ++j) {
    const FilteredLattice Yj = Y.truncate(j);
    const FilteredLattice Xj = X.truncate(std::min(j, X.degree()));
    LiftResult step = lift_last_level(Yj, current, current_period);
    report.corrections.insert(report.corrections.end(), step.report.corrections.begin(),
                              step.report.corrections.end());

    const auto ybandp = Y.band(j);
    const auto xbandp = X.degree() >= j ? X.band(j) : std::vector<Position>{};
    RatMatrix phi(xbandp.size(), ybandp.size());
    std::vector<Integer> sx, sy;
    for (std::size_t p = 0; p < xbandp.size(); ++p) {
      const auto xi = static_cast<std::size_t>(std::find(X.positions().begin(), X.positions().end(), xbandp[p]) -
                                               X.positions().begin());
      for (std::size_t q = 0; q < ybandp.size(); ++q) {
        const auto yi = static_cast<std::size_t>(std::find(Y.positions().begin(), Y.positions().end(), ybandp[q]) -
                                                 Y.positions().begin());
        phi(p, q) = fib.matrix()(xi, yi);
      }
    }
    for (const auto& p : xbandp) sx.push_back(X.denominator(p));
    for (const auto& q : ybandp) sy.push_back(Y.denominator(q));
    const Integer e = coker_exponent(phi, sx, sy);
    report.q_prime = lcm(report.q_prime, e);

    std::map<MultiIndex, UnipotentMatrix> coeffs;
    for (std::size_t ti = 0; ti < step.lifted.indices().size(); ++ti) {
      const MultiIndex& t = step.lifted.indices()[ti];
      UnipotentMatrix b = step.lifted.coefficients()[ti];
      const UnipotentMatrix* found = find_coefficient(fx, t);
      const UnipotentMatrix a = Xj.project(found ? *found : UnipotentMatrix::identity(X.dim()));
      const UnipotentMatrix mt = Xj.project(Xj.project(fib.apply(b)).inverse() * a);
      if (!Xj.in_level(mt, j))
        fail(ErrorKind::DiscrepancyNotAbelian, "discrepancy at level " + std::to_string(j) + " leaves the top band");
      if (!mt.is_identity()) {
        std::vector<Rational> v;
        for (const auto& p : xbandp) v.push_back(mt(p.row, p.col));
        std::vector<Rational> w;
        if (total_degree(t) == 0) {
          auto sol = solve_rational(phi, v);
          if (!sol) fail(ErrorKind::NonSurjective, "band map has no preimage for the constant term");
          w = std::move(*sol);
        } else {
          Integer order = 1;
          for (std::size_t p = 0; p < v.size(); ++p)
            order = lcm(order, Integer(Rational(v[p] * sx[p]).get_den()));
          const Integer big_q = order * e;
          std::vector<std::vector<Rational>> rows;
          for (std::size_t p = 0; p < v.size(); ++p) {
            std::vector<Rational> row(ybandp.size() + 1);
            for (std::size_t q = 0; q < ybandp.size(); ++q) row[q] = phi(p, q) / Rational(sy[q]);
            row[ybandp.size()] = v[p] * Rational(big_q);
            rows.push_back(std::move(row));
          }
          const auto sol = solve_scaled(rows, ybandp.size());
          if (!sol) fail(ErrorKind::PreconditionFailed, "no controlled preimage of the discrepancy");
          for (std::size_t q = 0; q < ybandp.size(); ++q)
            w.push_back(Rational(sol->particular[q]) / Rational(sy[q] * big_q));
        }
        RatMatrix mm = RatMatrix::identity(Y.dim());
        for (std::size_t q = 0; q < ybandp.size(); ++q) mm(ybandp[q].row, ybandp[q].col) = w[q];
        const UnipotentMatrix lift = UnipotentMatrix::from_matrix(std::move(mm));
        b = Yj.project(b * lift);
        report.corrections.push_back({j, t, lift});
      }
      if (!(Xj.project(fib.apply(b)) == a))
        fail(ErrorKind::DiscrepancyNotAbelian, "corrected coefficient does not map onto the target");
      coeffs.emplace(t, std::move(b));
    }
    current = PolyMap(Yj, n, coeffs);
    current_period = period_bound(static_cast<unsigned>(j), order_lcm(current));
    if (!is_periodic_mod_lattice(current, current_period))
      fail(ErrorKind::PeriodMismatch, "level " + std::to_string(j) + " lift is not periodic with the bound");
  }

  PolyMap lifted = current.with_ambient(Y);
  for (std::size_t i = 0; i < lifted.indices().size(); ++i) {
    const UnipotentMatrix* found = find_coefficient(fx, lifted.indices()[i]);
    const UnipotentMatrix a = found ? *found : UnipotentMatrix::identity(X.dim());
    if (!(X.project(fib.apply(lifted.coefficients()[i])) == a))
      fail(ErrorKind::DiscrepancyNotAbelian, "lift does not map onto the input");
  }
  report.q = order_lcm(lifted);
  report.output_period = period_bound(static_cast<unsigned>(k), report.q);
  if (!is_periodic_mod_lattice(lifted, report.output_period))
    fail(ErrorKind::PeriodMismatch, "lift is not periodic with the bound");
  report.minimal_period = minimal_period(lifted);
  return {std::move(lifted), std::move(report)};
}

std::optional<PolyMap> minimal_period_lift_search(const FilteredLattice& fl, const PolyMap& f,
                                                  const std::vector<Integer>& periods) {
  fl.require_valid();
  const int k = fl.degree();
  if (k == 0) fail(ErrorKind::InvalidArgument, "lifting needs a lattice of positive degree");
  if (f.ambient().dim() != fl.dim()) fail(ErrorKind::DimMismatch, "map and lattice dimensions differ");
  const FilteredLattice quotient = fl.quotient_top();
  const PolyMap fq = f.with_ambient(quotient);
  if (!is_periodic_mod_lattice(fq, periods))
    fail(ErrorKind::PreconditionFailed, "map does not have the requested periods modulo the top band");
  const std::size_t n = fq.arity();
  const auto indices = multi_indices(n, static_cast<unsigned>(k));

  std::map<MultiIndex, UnipotentMatrix> base;
  for (const auto& t : indices) {
    const UnipotentMatrix* found = find_coefficient(fq, t);
    base.emplace(t, found ? *found : UnipotentMatrix::identity(fl.dim()));
  }
  const PolyMap f0(fl, n, base);

  std::vector<PolyMap> diffs;
  for (std::size_t i = 0; i < n; ++i) {
    diffs.push_back(interpolate(fl, n, [&](const Point& x) {
      Point y = x;
      y[i] += periods[i];
      return f0.eval(x).inverse() * f0.eval(y);
    }));
  }

  // rows (i, u), unknowns t != 0
  const std::size_t unknowns = indices.size() - 1;
  const std::size_t rows = n * indices.size();
  RatMatrix a(rows, unknowns);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t ui = 0; ui < indices.size(); ++ui) {
      const MultiIndex& u = indices[ui];
      for (std::size_t ti = 1; ti < indices.size(); ++ti) {
        const MultiIndex& t = indices[ti];
        bool shape = t[i] > u[i];
        for (std::size_t c = 0; c < n && shape; ++c)
          if (c != i && t[c] != u[c]) shape = false;
        if (shape) a(i * indices.size() + ui, ti - 1) = binomial(periods[i], t[i] - u[i]);
      }
    }
  }
  const IntMatrix left = integer_left_nullspace(a);

  std::map<MultiIndex, RatMatrix> top;
  for (const auto& t : indices) top.emplace(t, RatMatrix::identity(fl.dim()));
  for (const auto& p : fl.band(k)) {
    const Rational s(fl.denominator(p));
    std::vector<Rational> c(rows);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t ui = 0; ui < indices.size(); ++ui)
        c[i * indices.size() + ui] = -s * diffs[i].coefficients()[ui](p.row, p.col);
    std::vector<Rational> target = c;
    if (left.rows() > 0) {
      std::vector<Integer> rhs(left.rows());
      for (std::size_t r = 0; r < left.rows(); ++r) {
        Rational acc = 0;
        for (std::size_t j = 0; j < rows; ++j) acc -= Rational(left(r, j)) * c[j];
        if (!is_integer(acc)) return std::nullopt;
        rhs[r] = acc.get_num();
      }
      const auto z = solve_integer(left, rhs);
      if (!z) return std::nullopt;
      for (std::size_t j = 0; j < rows; ++j) target[j] += Rational(z->particular[j]);
    }
    const auto r = solve_rational(a, target);
    if (!r) return std::nullopt;
    for (std::size_t ti = 1; ti < indices.size(); ++ti) top[indices[ti]](p.row, p.col) = (*r)[ti - 1] / s;
  }

  std::map<MultiIndex, UnipotentMatrix> coeffs;
  for (const auto& t : indices)
    coeffs.emplace(t, fl.project(base.at(t) * UnipotentMatrix::from_matrix(top.at(t))));
  PolyMap lifted(fl, n, coeffs);
  if (!is_periodic_mod_lattice(lifted, periods))
    fail(ErrorKind::PeriodMismatch, "constructed lift does not have the requested periods");
  if (!(lifted.with_ambient(quotient) == fq)) fail(ErrorKind::PreconditionFailed, "lift does not reduce to the input");
  return lifted;
}

HeisenbergInstance heisenberg_instance(const Integer& n, const Integer& m) {
  if (n <= 0 || m <= 0) fail(ErrorKind::InvalidArgument, "Heisenberg parameters must be positive");
  FilteredLattice lattice = FilteredLattice::lower_central(3);
  const auto g1 = UnipotentMatrix::elementary(3, 0, 1, Rational(1) / Rational(n));
  const auto g2 = UnipotentMatrix::elementary(3, 1, 2, Rational(1) / Rational(m));
  PolyMap map(lattice.quotient_top(), 2, {{MultiIndex{1, 0}, g1}, {MultiIndex{0, 1}, g2}});
  return {std::move(lattice), std::move(map)};
}

}  // namespace nilcomp
