#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilcomp/rational.hpp"
#include "nilcomp/unipotent.hpp"

namespace nilcomp {

struct Position {
  std::size_t row = 0;
  std::size_t col = 0;

  auto operator<=>(const Position&) const = default;
};

std::string to_string(const Position& p);  // 1-based "(i,j)"

/// A band filtration G_m = {g : g(i,j) = 0 whenever level(i,j) < m} on the
/// upper unitriangular group, together with the lattice
/// Gamma = {g : s(i,j) g(i,j) in Z}. Positions with level 0 are inactive:
/// they are quotiented out (always read as zero), which is how G/G_k and
/// other filtered quotients are represented.
class FilteredLattice {
 public:
  /// `levels` and `denominators` are row-major dim x dim; entries on or
  /// below the diagonal are ignored. Denominators default to 1.
  FilteredLattice(std::size_t dim, int degree, std::vector<int> levels, std::vector<Integer> denominators = {});

  /// level(i,j) = j - i, degree dim - 1.
  static FilteredLattice lower_central(std::size_t dim, std::vector<Integer> denominators = {});

  std::size_t dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  int level(std::size_t i, std::size_t j) const { return levels_.at(i * dim_ + j); }
  int level(const Position& p) const { return level(p.row, p.col); }
  bool active(std::size_t i, std::size_t j) const { return i < j && level(i, j) > 0; }
  const Integer& denominator(std::size_t i, std::size_t j) const { return denominators_.at(i * dim_ + j); }
  const Integer& denominator(const Position& p) const { return denominator(p.row, p.col); }

  /// Active positions ordered by superdiagonal distance, then row.
  const std::vector<Position>& positions() const noexcept { return positions_; }
  std::vector<Position> band(int level) const;

  /// Zeroes inactive positions (the quotient map).
  UnipotentMatrix project(const UnipotentMatrix& g) const;
  bool in_lattice(const UnipotentMatrix& g) const;
  /// g in G_m (m > degree means g is the identity modulo inactive positions).
  bool in_level(const UnipotentMatrix& g, int m) const;
  bool is_trivial(const UnipotentMatrix& g) const { return in_level(g, degree_ + 1); }
  bool equivalent(const UnipotentMatrix& a, const UnipotentMatrix& b) const { return project(a) == project(b); }

  /// Coordinates on active positions, in positions() order.
  std::vector<Rational> coordinates(const UnipotentMatrix& g) const;
  UnipotentMatrix from_coordinates(const std::vector<Rational>& coords) const;

  /// Drops the top band: the lattice of (G/G_k, Gamma G_k / G_k), degree k-1.
  FilteredLattice quotient_top() const;
  /// Keeps levels <= j: the lattice of G/G_{j+1}, degree j.
  FilteredLattice truncate(int j) const;

  /// Throws FiltrationViolation unless check_filtration passes.
  void require_valid() const;

  bool operator==(const FilteredLattice& other) const {
    return dim_ == other.dim_ && degree_ == other.degree_ && levels_ == other.levels_ &&
           denominators_ == other.denominators_;
  }

 private:
  std::size_t dim_;
  int degree_;
  std::vector<int> levels_;
  std::vector<Integer> denominators_;
  std::vector<Position> positions_;
};

struct FiltrationCheck {
  bool ok = true;
  std::optional<Position> witness;
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

/// Commutators of band-basis elementary matrices land in the required bands,
/// the inactive set is a normal subgroup, and Gamma is closed.
FiltrationCheck check_filtration(const FilteredLattice& fl);

/// Largest m in [0, k+1] with g in G_m; k+1 iff g is trivial.
int filtration_level(const FilteredLattice& fl, const UnipotentMatrix& g);

/// Minimal q >= 1 with g^q in Gamma, or absent if it exceeds `cap`.
std::optional<Integer> rationality_order(const FilteredLattice& fl, const UnipotentMatrix& g,
                                         const std::optional<Integer>& cap = std::nullopt);

struct WordLetter {
  std::size_t generator;
  Integer exponent;
};

struct WordPowerResult {
  bool in_lattice;
  Integer exponent;  // q^{k(k+1)/2}
  UnipotentMatrix word;
};

/// Evaluates the word b and tests b^N in Gamma for N = q^{k(k+1)/2}.
/// Throws PreconditionFailed unless every generator has g^q in Gamma.
WordPowerResult word_power_check(const FilteredLattice& fl, const std::vector<UnipotentMatrix>& generators,
                                 const Integer& q, const std::vector<WordLetter>& word);

struct PowerFactor {
  UnipotentMatrix element;
  int level;
};

/// Writes t in Gamma as g_1^{m_1} ... g_k^{m_k} with g_i in Gamma and G_i by
/// peeling one band at a time. Absent when some band residual is not an
/// m_i-th multiple in lattice coordinates. Identity factors are omitted.
/// Throws BadExponents unless m_i / m_{i+1} is a multiple of k!.
std::optional<std::vector<PowerFactor>> product_set_factor(const FilteredLattice& fl, const UnipotentMatrix& t,
                                                           const std::vector<Integer>& m);

struct ZariskiFactor {
  UnipotentMatrix gamma;
  Rational exponent;
};

/// Rational Lie algebra generated by the logs of a set of lattice elements,
/// with lattice elements adapted to its lower central series.
class LieAlgebraBasis {
 public:
  std::size_t dim() const noexcept { return dim_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<StrictUpperMatrix>& elements() const noexcept { return basis_; }
  /// Active positions of the ambient lattice; coordinates are read here.
  const std::vector<Position>& positions() const noexcept { return positions_; }
  bool contains(const StrictUpperMatrix& x) const;

 private:
  friend LieAlgebraBasis zariski_span(const FilteredLattice&, const std::vector<UnipotentMatrix>&);
  friend std::optional<std::vector<ZariskiFactor>> zariski_factor(const LieAlgebraBasis&, const UnipotentMatrix&);

  std::vector<Rational> coords(const StrictUpperMatrix& x) const;
  StrictUpperMatrix from_coords(const std::vector<Rational>& c) const;

  std::size_t dim_ = 0;
  std::vector<Position> positions_;
  std::vector<StrictUpperMatrix> basis_;
  // lower central series L = L^1 > L^2 > ... as spanning sets
  std::vector<std::vector<StrictUpperMatrix>> series_;
  // lattice elements whose logs span L^i modulo L^{i+1}
  std::vector<std::vector<UnipotentMatrix>> stage_elements_;
};

/// Throws PreconditionFailed if a generator is outside Gamma.
LieAlgebraBasis zariski_span(const FilteredLattice& fl, const std::vector<UnipotentMatrix>& generators);
bool zariski_member(const LieAlgebraBasis& basis, const UnipotentMatrix& g);
/// g = gamma_1^{t_1} ... gamma_r^{t_r} with lattice gammas and rational t_j,
/// verified exactly; absent when g is outside the closure.
std::optional<std::vector<ZariskiFactor>> zariski_factor(const LieAlgebraBasis& basis, const UnipotentMatrix& g);

}  // namespace nilcomp
