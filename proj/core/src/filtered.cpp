#include "nilcomp/filtered.hpp"

#include <algorithm>

#include "nilcomp/error.hpp"
#include "nilcomp/linalg.hpp"

namespace nilcomp {

namespace {

void require_dim(const FilteredLattice& fl, const UnipotentMatrix& g) {
  if (g.dim() != fl.dim())
    fail(ErrorKind::DimMismatch,
         "matrix has dimension " + std::to_string(g.dim()) + ", lattice has " + std::to_string(fl.dim()));
}

// Row-echelon span over the rationals; rows keep insertion order.
class Span {
 public:
  explicit Span(std::size_t n) : n_(n) {}

  std::vector<Rational> reduce(std::vector<Rational> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational c = v[pivots_[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) v[j] -= c * rows_[r][j];
    }
    return v;
  }

  bool contains(const std::vector<Rational>& v) const {
    const auto w = reduce(v);
    return std::all_of(w.begin(), w.end(), [](const Rational& x) { return x == 0; });
  }

  bool add(const std::vector<Rational>& v) {
    auto w = reduce(v);
    auto it = std::find_if(w.begin(), w.end(), [](const Rational& x) { return x != 0; });
    if (it == w.end()) return false;
    const std::size_t p = static_cast<std::size_t>(it - w.begin());
    const Rational c = w[p];
    for (auto& x : w) x /= c;
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
  }

  std::size_t size() const { return rows_.size(); }

 private:
  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

std::string to_string(const Position& p) {
  return "(" + std::to_string(p.row + 1) + "," + std::to_string(p.col + 1) + ")";
}

FilteredLattice::FilteredLattice(std::size_t dim, int degree, std::vector<int> levels,
                                 std::vector<Integer> denominators)
    : dim_(dim), degree_(degree), levels_(std::move(levels)), denominators_(std::move(denominators)) {
  if (dim == 0) fail(ErrorKind::InvalidArgument, "lattice dimension must be positive");
  if (dim > max_dimension()) fail(ErrorKind::TooLarge, "lattice dimension exceeds the cap");
  if (degree < 0) fail(ErrorKind::InvalidArgument, "degree must be nonnegative");
  if (levels_.size() != dim * dim) fail(ErrorKind::DimMismatch, "level matrix must have dim*dim entries");
  if (denominators_.empty()) denominators_.assign(dim * dim, Integer(1));
  if (denominators_.size() != dim * dim) fail(ErrorKind::DimMismatch, "denominator matrix must have dim*dim entries");
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      int& l = levels_[i * dim + j];
      Integer& s = denominators_[i * dim + j];
      if (i >= j) {
        l = 0;
        s = 1;
        continue;
      }
      if (l < 0 || l > degree)
        fail(ErrorKind::InvalidArgument, "level at " + to_string(Position{i, j}) + " is outside [0, degree]");
      if (s <= 0) fail(ErrorKind::InvalidArgument, "denominator at " + to_string(Position{i, j}) + " must be positive");
      if (l == 0) s = 1;
    }
  }
  for (std::size_t d = 1; d < dim; ++d)
    for (std::size_t i = 0; i + d < dim; ++i)
      if (level(i, i + d) > 0) positions_.push_back({i, i + d});
}

FilteredLattice FilteredLattice::lower_central(std::size_t dim, std::vector<Integer> denominators) {
  if (dim < 2) fail(ErrorKind::InvalidArgument, "lower central series needs dimension at least 2");
  std::vector<int> levels(dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) levels[i * dim + j] = static_cast<int>(j - i);
  return FilteredLattice(dim, static_cast<int>(dim - 1), std::move(levels), std::move(denominators));
}

std::vector<Position> FilteredLattice::band(int l) const {
  std::vector<Position> out;
  for (const auto& p : positions_)
    if (level(p) == l) out.push_back(p);
  return out;
}

UnipotentMatrix FilteredLattice::project(const UnipotentMatrix& g) const {
  require_dim(*this, g);
  RatMatrix m = RatMatrix::identity(dim_);
  for (const auto& p : positions_) m(p.row, p.col) = g(p.row, p.col);
  return UnipotentMatrix::from_matrix(std::move(m));
}

bool FilteredLattice::in_lattice(const UnipotentMatrix& g) const {
  require_dim(*this, g);
  return std::all_of(positions_.begin(), positions_.end(), [&](const Position& p) {
    return is_integer(Rational(denominator(p) * g(p.row, p.col)));
  });
}

bool FilteredLattice::in_level(const UnipotentMatrix& g, int m) const {
  require_dim(*this, g);
  return std::all_of(positions_.begin(), positions_.end(),
                     [&](const Position& p) { return level(p) >= m || g(p.row, p.col) == 0; });
}

std::vector<Rational> FilteredLattice::coordinates(const UnipotentMatrix& g) const {
  require_dim(*this, g);
  std::vector<Rational> out;
  out.reserve(positions_.size());
  for (const auto& p : positions_) out.push_back(g(p.row, p.col));
  return out;
}

UnipotentMatrix FilteredLattice::from_coordinates(const std::vector<Rational>& coords) const {
  if (coords.size() != positions_.size())
    fail(ErrorKind::DimMismatch, "expected " + std::to_string(positions_.size()) + " coordinates");
  RatMatrix m = RatMatrix::identity(dim_);
  for (std::size_t i = 0; i < coords.size(); ++i) m(positions_[i].row, positions_[i].col) = coords[i];
  return UnipotentMatrix::from_matrix(std::move(m));
}

FilteredLattice FilteredLattice::quotient_top() const {
  if (degree_ == 0) fail(ErrorKind::InvalidArgument, "degree-0 lattice has no top band");
  return truncate(degree_ - 1);
}

FilteredLattice FilteredLattice::truncate(int j) const {
  if (j < 0 || j > degree_) fail(ErrorKind::InvalidArgument, "truncation level outside [0, degree]");
  std::vector<int> levels = levels_;
  for (auto& l : levels)
    if (l > j) l = 0;
  return FilteredLattice(dim_, j, std::move(levels), denominators_);
}

void FilteredLattice::require_valid() const {
  const auto check = check_filtration(*this);
  if (!check.ok) fail(ErrorKind::FiltrationViolation, check.reason + " at " + to_string(*check.witness));
}

FiltrationCheck check_filtration(const FilteredLattice& fl) {
  const std::size_t r = fl.dim();
  const int k = fl.degree();
  for (std::size_t d = 2; d < r; ++d) {
    for (std::size_t a = 0; a + d < r; ++a) {
      const std::size_t c = a + d;
      for (std::size_t b = a + 1; b < c; ++b) {
        const bool ab = fl.active(a, b), bc = fl.active(b, c), ac = fl.active(a, c);
        if (!ac) continue;
        const Position w{a, c};
        if (!ab || !bc)
          return {false, w, "inactive positions do not form a normal subgroup"};
        const int need = fl.level(a, b) + fl.level(b, c);
        if (need > k) return {false, w, "commutator lands beyond the top level"};
        if (fl.level(a, c) < need) return {false, w, "commutator lands below the required level"};
        const Integer prod = fl.denominator(a, b) * fl.denominator(b, c);
        if (fl.denominator(a, c) % prod != 0) return {false, w, "lattice is not closed under products"};
      }
    }
  }
  return {};
}

int filtration_level(const FilteredLattice& fl, const UnipotentMatrix& g) {
  require_dim(fl, g);
  int best = fl.degree() + 1;
  for (const auto& p : fl.positions())
    if (g(p.row, p.col) != 0) best = std::min(best, fl.level(p));
  return best;
}

std::optional<Integer> rationality_order(const FilteredLattice& fl, const UnipotentMatrix& g,
                                         const std::optional<Integer>& cap) {
  const UnipotentMatrix h = fl.project(g);
  // g^q = sum_i binom(q, i) N^i; q = lcm_i(i! den(s N^i)) always works and
  // the admissible q form a subgroup of Z.
  RatMatrix n = h.matrix();
  for (std::size_t i = 0; i < n.rows(); ++i) n(i, i) = 0;
  RatMatrix power = n;
  Integer bound = 1;
  for (unsigned i = 1; i < fl.dim(); ++i) {
    for (const auto& p : fl.positions()) {
      const Rational c = fl.denominator(p) * power(p.row, p.col);
      bound = lcm(bound, factorial(i) * Integer(c.get_den()));
    }
    power = power * n;
  }
  Integer q = bound;
  for (const auto& prime : prime_factors(bound)) {
    while (q % prime == 0 && fl.in_lattice(h.pow(q / prime))) q /= prime;
  }
  if (cap && q > *cap) return std::nullopt;
  return q;
}

WordPowerResult word_power_check(const FilteredLattice& fl, const std::vector<UnipotentMatrix>& generators,
                                 const Integer& q, const std::vector<WordLetter>& word) {
  fl.require_valid();
  if (q <= 0) fail(ErrorKind::InvalidArgument, "q must be positive");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    require_dim(fl, generators[i]);
    if (!fl.in_lattice(generators[i].pow(q)))
      fail(ErrorKind::PreconditionFailed, "generator " + std::to_string(i) + " raised to q is not in the lattice");
  }
  UnipotentMatrix b = UnipotentMatrix::identity(fl.dim());
  for (const auto& letter : word) {
    if (letter.generator >= generators.size())
      fail(ErrorKind::InvalidArgument, "word refers to generator " + std::to_string(letter.generator));
    b *= generators[letter.generator].pow(letter.exponent);
  }
  const unsigned long k = static_cast<unsigned long>(fl.degree());
  const Integer n = ipow(q, k * (k + 1) / 2);
  return {fl.in_lattice(b.pow(n)), n, fl.project(b)};
}

std::optional<std::vector<PowerFactor>> product_set_factor(const FilteredLattice& fl, const UnipotentMatrix& t,
                                                           const std::vector<Integer>& m) {
  fl.require_valid();
  require_dim(fl, t);
  const int k = fl.degree();
  if (m.size() != static_cast<std::size_t>(k))
    fail(ErrorKind::InvalidArgument, "expected " + std::to_string(k) + " exponents");
  for (const auto& mi : m)
    if (mi <= 0) fail(ErrorKind::BadExponents, "exponents must be positive");
  const Integer kf = factorial(static_cast<unsigned>(k));
  for (int i = 0; i + 1 < k; ++i)
    if (m[i] % (m[i + 1] * kf) != 0)
      fail(ErrorKind::BadExponents, "m_" + std::to_string(i + 1) + " is not a multiple of m_" + std::to_string(i + 2) +
                                        " * " + to_string(kf));

  std::vector<PowerFactor> factors;
  UnipotentMatrix residual = fl.project(t);
  for (int level = 1; level <= k; ++level) {
    RatMatrix g = RatMatrix::identity(fl.dim());
    bool trivial = true;
    for (const auto& p : fl.band(level)) {
      const Rational c = residual(p.row, p.col) / Rational(m[level - 1]);
      if (!is_integer(Rational(fl.denominator(p) * c))) return std::nullopt;
      g(p.row, p.col) = c;
      trivial = trivial && c == 0;
    }
    if (trivial) continue;
    const UnipotentMatrix gi = UnipotentMatrix::from_matrix(std::move(g));
    residual = fl.project(gi.pow(-m[level - 1]) * residual);
    factors.push_back({gi, level});
  }
  if (!residual.is_identity()) return std::nullopt;
  return factors;
}

std::vector<Rational> LieAlgebraBasis::coords(const StrictUpperMatrix& x) const {
  std::vector<Rational> out;
  out.reserve(positions_.size());
  for (const auto& p : positions_) out.push_back(x(p.row, p.col));
  return out;
}

StrictUpperMatrix LieAlgebraBasis::from_coords(const std::vector<Rational>& c) const {
  RatMatrix m(dim_, dim_);
  for (std::size_t i = 0; i < positions_.size(); ++i) m(positions_[i].row, positions_[i].col) = c[i];
  return StrictUpperMatrix::from_matrix(std::move(m));
}

bool LieAlgebraBasis::contains(const StrictUpperMatrix& x) const {
  if (x.dim() != dim_) fail(ErrorKind::DimMismatch, "Lie algebra element has the wrong dimension");
  Span span(positions_.size());
  for (const auto& b : basis_) span.add(coords(b));
  return span.contains(coords(x));
}

LieAlgebraBasis zariski_span(const FilteredLattice& fl, const std::vector<UnipotentMatrix>& generators) {
  LieAlgebraBasis out;
  out.dim_ = fl.dim();
  out.positions_ = fl.positions();
  const std::size_t n = out.positions_.size();

  std::vector<UnipotentMatrix> gens;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!fl.in_lattice(generators[i]))
      fail(ErrorKind::PreconditionFailed, "generator " + std::to_string(i) + " is not in the lattice");
    gens.push_back(fl.project(generators[i]));
  }
  // Brackets of projected elements are re-projected by reading coordinates.
  auto clean = [&](const StrictUpperMatrix& x) { return out.from_coords(out.coords(x)); };

  Span span(n);
  for (const auto& g : gens) {
    const auto x = mat_log(g);
    if (span.add(out.coords(x))) out.basis_.push_back(clean(x));
  }
  for (std::size_t i = 0; i < out.basis_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const auto x = clean(bracket(out.basis_[j], out.basis_[i]));
      if (span.add(out.coords(x))) out.basis_.push_back(x);
    }
  }

  std::vector<StrictUpperMatrix> current = out.basis_;
  while (!current.empty()) {
    out.series_.push_back(current);
    Span next(n);
    std::vector<StrictUpperMatrix> lower;
    for (const auto& x : out.basis_)
      for (const auto& y : current) {
        const auto z = clean(bracket(x, y));
        if (next.add(out.coords(z))) lower.push_back(z);
      }
    current = std::move(lower);
  }

  std::vector<UnipotentMatrix> previous = gens;
  for (std::size_t stage = 0; stage < out.series_.size(); ++stage) {
    Span quotient(n);
    if (stage + 1 < out.series_.size())
      for (const auto& z : out.series_[stage + 1]) quotient.add(out.coords(z));
    std::vector<UnipotentMatrix> candidates;
    if (stage == 0) {
      candidates = gens;
    } else {
      for (const auto& c : previous)
        for (const auto& g : gens) candidates.push_back(fl.project(commutator(c, g)));
    }
    std::vector<UnipotentMatrix> chosen;
    for (const auto& c : candidates)
      if (quotient.add(out.coords(mat_log(c)))) chosen.push_back(c);
    out.stage_elements_.push_back(chosen);
    previous = std::move(chosen);
  }
  return out;
}

bool zariski_member(const LieAlgebraBasis& basis, const UnipotentMatrix& g) {
  if (g.dim() != basis.dim()) fail(ErrorKind::DimMismatch, "element has the wrong dimension");
  RatMatrix m = RatMatrix::identity(basis.dim());
  for (const auto& p : basis.positions()) m(p.row, p.col) = g(p.row, p.col);
  return basis.contains(mat_log(UnipotentMatrix::from_matrix(std::move(m))));
}

std::optional<std::vector<ZariskiFactor>> zariski_factor(const LieAlgebraBasis& basis, const UnipotentMatrix& g) {
  if (g.dim() != basis.dim_) fail(ErrorKind::DimMismatch, "element has the wrong dimension");
  auto project = [&](const UnipotentMatrix& x) {
    RatMatrix m = RatMatrix::identity(basis.dim_);
    for (const auto& p : basis.positions_) m(p.row, p.col) = x(p.row, p.col);
    return UnipotentMatrix::from_matrix(std::move(m));
  };
  const UnipotentMatrix target = project(g);
  if (!basis.contains(mat_log(target))) return std::nullopt;

  std::vector<ZariskiFactor> factors;
  UnipotentMatrix h = target;
  const std::size_t n = basis.positions_.size();
  for (std::size_t stage = 0; stage < basis.series_.size(); ++stage) {
    const auto& elems = basis.stage_elements_[stage];
    std::vector<std::vector<Rational>> columns;
    for (const auto& e : elems) columns.push_back(basis.coords(mat_log(e)));
    if (stage + 1 < basis.series_.size())
      for (const auto& z : basis.series_[stage + 1]) columns.push_back(basis.coords(z));
    RatMatrix a(n, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) a(i, j) = columns[j][i];
    const auto sol = solve_rational(a, basis.coords(mat_log(h)));
    if (!sol) return std::nullopt;
    UnipotentMatrix piece = UnipotentMatrix::identity(basis.dim_);
    for (std::size_t j = 0; j < elems.size(); ++j) {
      if ((*sol)[j] == 0) continue;
      piece *= rat_pow(elems[j], (*sol)[j]);
      factors.push_back({elems[j], (*sol)[j]});
    }
    h = project(piece.inverse() * h);
  }
  if (!h.is_identity()) return std::nullopt;

  UnipotentMatrix check = UnipotentMatrix::identity(basis.dim_);
  for (const auto& f : factors) check *= rat_pow(f.gamma, f.exponent);
  if (!(project(check) == target)) return std::nullopt;
  return factors;
}

}  // namespace nilcomp
