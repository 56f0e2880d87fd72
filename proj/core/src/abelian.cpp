#include "nilcomp/abelian.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include "nilcomp/error.hpp"

namespace nilcomp {

Complex phase(const Rational& t) {
  const double angle = 2.0 * std::numbers::pi * frac(t).get_d();
  return {std::cos(angle), std::sin(angle)};
}

namespace {

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  order_ = 1;
  for (auto d : moduli_) {
    if (d < 1) fail(ErrorKind::InvalidArgument, "group moduli must be positive");
    if (order_ > (std::size_t{1} << 40) / static_cast<std::size_t>(d))
      fail(ErrorKind::TooLarge, "group order exceeds 2^40");
    order_ *= static_cast<std::size_t>(d);
  }
  const std::size_t r = moduli_.size();
  IntMatrix diag(r, r);
  for (std::size_t i = 0; i < r; ++i) diag(i, i) = Integer(static_cast<long>(moduli_[i]));
  for (const auto& f : snf(diag).invariant_factors())
    if (f > 1) invariant_factors_.push_back(to_int64(f));
  exponent_ = 1;
  for (auto d : moduli_) exponent_ = std::lcm(exponent_, d);
}

GroupElement FiniteAbelianGroup::element(std::vector<std::int64_t> coords) const {
  if (coords.size() != moduli_.size())
    fail(ErrorKind::DimMismatch, "element has " + std::to_string(coords.size()) + " coordinates, group has " +
                                     std::to_string(moduli_.size()) + " factors");
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = mod_floor(coords[i], moduli_[i]);
  return GroupElement{std::move(coords)};
}

GroupElement FiniteAbelianGroup::element_at(std::size_t index) const {
  if (index >= order_) fail(ErrorKind::InvalidArgument, "element index out of range");
  std::vector<std::int64_t> coords(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    const auto d = static_cast<std::size_t>(moduli_[i]);
    coords[i] = static_cast<std::int64_t>(index % d);
    index /= d;
  }
  return GroupElement{std::move(coords)};
}

std::size_t FiniteAbelianGroup::index_of(const GroupElement& x) const {
  if (x.coords.size() != moduli_.size()) fail(ErrorKind::DimMismatch, "element/group factor count mismatch");
  std::size_t index = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    index = index * static_cast<std::size_t>(moduli_[i]) + static_cast<std::size_t>(mod_floor(x.coords[i], moduli_[i]));
  return index;
}

GroupElement FiniteAbelianGroup::zero() const { return GroupElement{std::vector<std::int64_t>(moduli_.size(), 0)}; }

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  std::vector<std::int64_t> c(moduli_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords.at(i) + b.coords.at(i);
  return element(std::move(c));
}

GroupElement FiniteAbelianGroup::negate(const GroupElement& a) const {
  std::vector<std::int64_t> c(moduli_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coords.at(i);
  return element(std::move(c));
}

AbelianHom::AbelianHom(FiniteAbelianGroup source, FiniteAbelianGroup target,
                       std::vector<std::vector<std::int64_t>> matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.size() != target_.num_factors())
    fail(ErrorKind::DimMismatch, "hom matrix needs one row per target factor");
  for (const auto& row : matrix_)
    if (row.size() != source_.num_factors()) fail(ErrorKind::DimMismatch, "hom matrix needs one column per source factor");
  // d_j * column j must vanish in the target
  for (std::size_t j = 0; j < source_.num_factors(); ++j)
    for (std::size_t i = 0; i < target_.num_factors(); ++i) {
      Integer v = Integer(static_cast<long>(matrix_[i][j])) * Integer(static_cast<long>(source_.moduli()[j]));
      if (v % Integer(static_cast<long>(target_.moduli()[i])) != 0)
        fail(ErrorKind::InvalidArgument, "hom is not well defined on source generator " + std::to_string(j));
    }
}

AbelianHom AbelianHom::reduction(FiniteAbelianGroup source, FiniteAbelianGroup target) {
  if (source.num_factors() != target.num_factors())
    fail(ErrorKind::DimMismatch, "reduction map needs matching factor counts");
  std::vector<std::vector<std::int64_t>> m(target.num_factors(), std::vector<std::int64_t>(source.num_factors(), 0));
  for (std::size_t i = 0; i < m.size(); ++i) m[i][i] = 1;
  return AbelianHom(std::move(source), std::move(target), std::move(m));
}

GroupElement AbelianHom::apply(const GroupElement& y) const {
  if (y.coords.size() != source_.num_factors()) fail(ErrorKind::GroupMismatch, "element is not in the hom source");
  std::vector<std::int64_t> out(target_.num_factors(), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::int64_t d = target_.moduli()[i];
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < y.coords.size(); ++j)
      acc = mod_floor(acc + mod_floor(matrix_[i][j], d) * mod_floor(y.coords[j], d), d);
    out[i] = acc;
  }
  return GroupElement{std::move(out)};
}

bool AbelianHom::is_surjective() const {
  const std::size_t rows = target_.num_factors();
  const std::size_t cols = source_.num_factors();
  IntMatrix m(rows, cols + rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Integer(static_cast<long>(matrix_[i][j]));
    m(i, cols + i) = Integer(static_cast<long>(target_.moduli()[i]));
  }
  SmithForm s = snf(m);
  if (s.rank() != rows) return false;
  for (const auto& f : s.invariant_factors())
    if (f != 1) return false;
  return true;
}

std::vector<GroupElement> fiber(const AbelianHom& tau, const GroupElement& x) {
  if (!tau.is_surjective()) fail(ErrorKind::NonSurjective, "fiber requires a surjective homomorphism");
  const GroupElement target_x = tau.target().element(x.coords);
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < tau.source().order(); ++i) {
    GroupElement y = tau.source().element_at(i);
    if (tau.apply(y) == target_x) out.push_back(std::move(y));
  }
  return out;
}

ComplexTable::ComplexTable(FiniteAbelianGroup group, std::vector<Complex> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_.order())
    fail(ErrorKind::DimMismatch, "table has " + std::to_string(values_.size()) + " values for a group of order " +
                                     std::to_string(group_.order()));
}

ComplexTable ComplexTable::from_function(FiniteAbelianGroup group,
                                         const std::function<Complex(const GroupElement&)>& fn) {
  std::vector<Complex> values(group.order());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(group.element_at(i));
  return ComplexTable(std::move(group), std::move(values));
}

double ComplexTable::sup_norm() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

ComplexTable ComplexTable::pullback(const AbelianHom& tau) const {
  if (!(tau.target() == group_)) fail(ErrorKind::GroupMismatch, "pullback: hom target differs from table group");
  return from_function(tau.source(), [&](const GroupElement& y) { return at(tau.apply(y)); });
}

namespace {

class ShiftTable {
 public:
  explicit ShiftTable(const FiniteAbelianGroup& g) : group_(g), digits_(g.order()) {
    for (std::size_t i = 0; i < g.order(); ++i) digits_[i] = g.element_at(i).coords;
  }

  std::size_t shifted(std::size_t x, std::size_t h) const {
    std::size_t index = 0;
    const auto& mod = group_.moduli();
    for (std::size_t i = 0; i < mod.size(); ++i) {
      std::int64_t c = digits_[x][i] + digits_[h][i];
      if (c >= mod[i]) c -= mod[i];
      index = index * static_cast<std::size_t>(mod[i]) + static_cast<std::size_t>(c);
    }
    return index;
  }

 private:
  const FiniteAbelianGroup& group_;
  std::vector<std::vector<std::int64_t>> digits_;
};

// ||f||_{U^s}^{2^s}
double gowers_power(const std::vector<Complex>& f, unsigned s, const ShiftTable& shift) {
  const std::size_t n = f.size();
  if (s == 1) {
    Complex mean = 0;
    for (const auto& v : f) mean += v;
    mean /= static_cast<double>(n);
    return std::norm(mean);
  }
  std::vector<Complex> diff(n);
  double total = 0.0;
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t x = 0; x < n; ++x) diff[x] = f[shift.shifted(x, h)] * std::conj(f[x]);
    total += gowers_power(diff, s - 1, shift);
  }
  return total / static_cast<double>(n);
}

}  // namespace

double gowers_norm(const ComplexTable& f, unsigned s) {
  if (s < 1) fail(ErrorKind::InvalidArgument, "Gowers norm degree must be at least 1");
  const double order = static_cast<double>(f.group().order());
  if (std::pow(order, static_cast<double>(s) + 1.0) > 1e8)
    fail(ErrorKind::TooLarge, "|Z|^(s+1) exceeds 1e8 for the Gowers norm evaluation");
  ShiftTable shift(f.group());
  const double power = gowers_power(f.values(), s, shift);
  if (power <= 0.0) return 0.0;
  return std::pow(power, 1.0 / std::ldexp(1.0, static_cast<int>(s)));
}

Complex correlate(const ComplexTable& f, const ComplexTable& g) {
  if (!(f.group() == g.group())) fail(ErrorKind::GroupMismatch, "correlate: tables live on different groups");
  Complex acc = 0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]);
  return acc / static_cast<double>(f.size());
}

CALGroup::CALGroup(std::size_t torus_dim, FiniteAbelianGroup finite)
    : torus_dim_(torus_dim), finite_(std::move(finite)) {}

CALPoint CALGroup::point(std::vector<Rational> torus, std::vector<std::int64_t> finite) const {
  if (torus.size() != torus_dim_) fail(ErrorKind::DimMismatch, "torus coordinate count mismatch");
  for (auto& t : torus) t = frac(t);
  return CALPoint{std::move(torus), finite_.element(std::move(finite))};
}

CALPoint CALGroup::from_cover(const std::vector<Rational>& cover) const {
  if (cover.size() != coordinate_count()) fail(ErrorKind::DimMismatch, "cover vector length mismatch");
  std::vector<Rational> torus(cover.begin(), cover.begin() + static_cast<std::ptrdiff_t>(torus_dim_));
  std::vector<std::int64_t> fin;
  for (std::size_t j = torus_dim_; j < cover.size(); ++j) {
    if (!is_integer(cover[j])) fail(ErrorKind::InvalidArgument, "finite cover coordinate must be an integer");
    Integer d(static_cast<long>(finite_.moduli()[j - torus_dim_]));
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), cover[j].get_num_mpz_t(), d.get_mpz_t());
    fin.push_back(r.get_si());
  }
  return point(std::move(torus), std::move(fin));
}

std::vector<Rational> CALGroup::to_cover(const CALPoint& p) const {
  std::vector<Rational> out = p.torus;
  for (auto c : p.finite.coords) out.emplace_back(static_cast<long>(c));
  return out;
}

CALPoint CALGroup::zero() const {
  return CALPoint{std::vector<Rational>(torus_dim_, Rational(0)), finite_.zero()};
}

CALPoint CALGroup::add(const CALPoint& a, const CALPoint& b) const {
  std::vector<Rational> t(torus_dim_);
  for (std::size_t i = 0; i < torus_dim_; ++i) t[i] = frac(a.torus.at(i) + b.torus.at(i));
  return CALPoint{std::move(t), finite_.add(a.finite, b.finite)};
}

CALPoint CALGroup::negate(const CALPoint& a) const {
  std::vector<Rational> t(torus_dim_);
  for (std::size_t i = 0; i < torus_dim_; ++i) t[i] = frac(-a.torus.at(i));
  return CALPoint{std::move(t), finite_.negate(a.finite)};
}

CALPoint CALGroup::scale(const CALPoint& a, const Integer& n) const {
  std::vector<Rational> cover = to_cover(a);
  for (auto& c : cover) c *= Rational(n);
  return from_cover(cover);
}

Integer CALGroup::order(const CALPoint& a) const {
  Integer q = 1;
  for (const auto& t : a.torus) q = lcm(q, frac(t).get_den());
  for (std::size_t i = 0; i < a.finite.coords.size(); ++i) {
    const std::int64_t d = finite_.moduli()[i];
    const std::int64_t c = mod_floor(a.finite.coords[i], d);
    q = lcm(q, Integer(static_cast<long>(d / std::gcd(c, d))));
  }
  return q;
}

CALHom::CALHom(CALGroup source, CALGroup target, RatMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  const std::size_t sa = source_.torus_dim();
  const std::size_t ta = target_.torus_dim();
  if (matrix_.rows() != target_.coordinate_count() || matrix_.cols() != source_.coordinate_count())
    fail(ErrorKind::DimMismatch, "CAL hom matrix shape does not match the groups");
  for (std::size_t i = 0; i < matrix_.rows(); ++i)
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
      const Rational& e = matrix_(i, j);
      const bool row_torus = i < ta;
      const bool col_torus = j < sa;
      if (col_torus && !row_torus && e != 0)
        fail(ErrorKind::InvalidArgument, "a torus cannot map nontrivially to a finite group");
      if (col_torus && row_torus && !is_integer(e))
        fail(ErrorKind::InvalidArgument, "torus-to-torus block must be integral");
      if (!col_torus) {
        const long d = static_cast<long>(source_.finite().moduli()[j - sa]);
        if (row_torus) {
          if (!is_integer(e * d)) fail(ErrorKind::InvalidArgument, "finite-to-torus column not killed by its modulus");
        } else {
          if (!is_integer(e)) fail(ErrorKind::InvalidArgument, "finite-to-finite block must be integral");
          const long dt = static_cast<long>(target_.finite().moduli()[i - ta]);
          if ((e.get_num() * d) % dt != 0)
            fail(ErrorKind::InvalidArgument, "finite-to-finite block is not well defined");
        }
      }
    }
}

CALPoint CALHom::apply(const CALPoint& p) const {
  return target_.from_cover(matrix_ * source_.to_cover(p));
}

bool CALHom::is_surjective() const {
  const std::size_t sa = source_.torus_dim();
  const std::size_t ta = target_.torus_dim();
  RatMatrix tt(ta, sa);
  for (std::size_t i = 0; i < ta; ++i)
    for (std::size_t j = 0; j < sa; ++j) tt(i, j) = matrix_(i, j);
  if (rational_rank(tt) != ta) return false;
  const std::size_t sf = source_.finite().num_factors();
  const std::size_t tf = target_.finite().num_factors();
  IntMatrix m(tf, sf + tf);
  for (std::size_t i = 0; i < tf; ++i) {
    for (std::size_t j = 0; j < sf; ++j) m(i, j) = matrix_(ta + i, sa + j).get_num();
    m(i, sf + i) = Integer(static_cast<long>(target_.finite().moduli()[i]));
  }
  SmithForm s = snf(m);
  if (s.rank() != tf) return false;
  for (const auto& f : s.invariant_factors())
    if (f != 1) return false;
  return true;
}

Integer CALHom::kernel_component_exponent() const {
  if (!is_surjective()) fail(ErrorKind::NonSurjective, "component exponent needs a surjective hom");
  // ker/ker^0 ~ L/R with L = Z^b x {x_f : E_ff x_f = 0 mod d'} and R spanned
  // by (E_tt e_j, 0) and (d_j E_tf e_j, d_j e_j); see lift documentation.
  const std::size_t sa = source_.torus_dim();
  const std::size_t ta = target_.torus_dim();
  const std::size_t sf = source_.finite().num_factors();
  const std::size_t tf = target_.finite().num_factors();
  const std::size_t dim = ta + sf;

  IntMatrix cong(tf, sf + tf);
  for (std::size_t i = 0; i < tf; ++i) {
    for (std::size_t j = 0; j < sf; ++j) cong(i, j) = matrix_(ta + i, sa + j).get_num();
    cong(i, sf + i) = Integer(static_cast<long>(target_.finite().moduli()[i]));
  }
  auto sol = solve_integer(cong, std::vector<Integer>(tf));
  std::vector<std::vector<Integer>> lgens;
  for (std::size_t i = 0; i < ta; ++i) {
    std::vector<Integer> e(dim);
    e[i] = 1;
    lgens.push_back(std::move(e));
  }
  for (const auto& k : sol->kernel) {
    std::vector<Integer> g(dim);
    for (std::size_t j = 0; j < sf; ++j) g[ta + j] = k[j];
    lgens.push_back(std::move(g));
  }
  IntMatrix lgen_mat(dim, lgens.size());
  for (std::size_t c = 0; c < lgens.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r) lgen_mat(r, c) = lgens[c][r];
  IntMatrix lbasis = lattice_basis(lgen_mat);
  if (lbasis.cols() != dim) fail(ErrorKind::InvalidArgument, "kernel lattice is degenerate");

  std::vector<std::vector<Integer>> rgens;
  for (std::size_t j = 0; j < sa; ++j) {
    std::vector<Integer> g(dim);
    for (std::size_t i = 0; i < ta; ++i) g[i] = matrix_(i, j).get_num();
    rgens.push_back(std::move(g));
  }
  for (std::size_t j = 0; j < sf; ++j) {
    const long d = static_cast<long>(source_.finite().moduli()[j]);
    std::vector<Integer> g(dim);
    for (std::size_t i = 0; i < ta; ++i) g[i] = Rational(matrix_(i, sa + j) * d).get_num();
    g[ta + j] = d;
    rgens.push_back(std::move(g));
  }
  IntMatrix coeffs(dim, rgens.size());
  for (std::size_t c = 0; c < rgens.size(); ++c) {
    auto alpha = solve_integer(lbasis, rgens[c]);
    if (!alpha) fail(ErrorKind::InvalidArgument, "relation lattice escapes the kernel lattice");
    for (std::size_t r = 0; r < dim; ++r) coeffs(r, c) = alpha->particular[r];
  }
  SmithForm s = snf(coeffs);
  if (s.rank() != dim) fail(ErrorKind::InvalidArgument, "kernel component group is infinite");
  Integer e = 1;
  for (const auto& f : s.invariant_factors()) e = lcm(e, f);
  return e;
}

}  // namespace nilcomp
