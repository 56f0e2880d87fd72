#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "nilcomp/abelian.hpp"
#include "nilcomp/filtered.hpp"
#include "nilcomp/rational.hpp"
#include "nilcomp/unipotent.hpp"

namespace nilcomp {

using MultiIndex = std::vector<unsigned>;
using Point = std::vector<Integer>;

unsigned total_degree(const MultiIndex& t);
/// All t in N^n with |t| <= k, ordered by |t| and then lexicographically.
std::vector<MultiIndex> multi_indices(std::size_t n, unsigned k);
/// binom(x_1, t_1) ... binom(x_n, t_n)
Integer binomial(const Point& x, const MultiIndex& t);
/// Grid [0, k]^n in lexicographic order. Throws TooLarge above 10^6 points.
std::vector<Point> grid(std::size_t n, unsigned k);

/// f(x) = prod_t a_t^{binom(x, t)}, product taken in multi_indices order.
class PolyMap {
 public:
  /// Missing coefficients are the identity. Coefficients are stored modulo
  /// the inactive positions of the lattice. Throws NotPolynomial unless
  /// a_t lies in G_{|t|} for t != 0.
  PolyMap(FilteredLattice ambient, std::size_t arity, const std::map<MultiIndex, UnipotentMatrix>& coeffs = {});

  const FilteredLattice& ambient() const noexcept { return ambient_; }
  std::size_t arity() const noexcept { return arity_; }
  unsigned degree() const noexcept { return static_cast<unsigned>(ambient_.degree()); }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  const std::vector<UnipotentMatrix>& coefficients() const noexcept { return coeffs_; }
  const UnipotentMatrix& coefficient(const MultiIndex& t) const;

  UnipotentMatrix eval(const Point& x) const;
  /// Same coefficients read in another lattice of the same dimension.
  PolyMap with_ambient(FilteredLattice ambient) const;

  bool operator==(const PolyMap& other) const {
    return arity_ == other.arity_ && ambient_ == other.ambient_ && coeffs_ == other.coeffs_;
  }

 private:
  FilteredLattice ambient_;
  std::size_t arity_;
  std::vector<MultiIndex> indices_;
  std::vector<UnipotentMatrix> coeffs_;
};

using MatrixFunction = std::function<UnipotentMatrix(const Point&)>;

/// Taylor coefficients from the values on [0, k]^n. Throws NotPolynomial
/// when a coefficient leaves G_{|t| + shift} or the grid points with |t| > k
/// are not reproduced.
PolyMap interpolate(const FilteredLattice& ambient, std::size_t arity, const MatrixFunction& values, int shift = 0);

/// x -> f(x)^-1 f(x + h), whose coefficients are checked to lie in G_{|t|+1}.
PolyMap derivative(const PolyMap& pm, const Point& h);

/// c_2 .. c_k with g^n h^n = (gh)^n prod_i c_i^{binom(n, i)}, verified for
/// n = 0 .. 2k. Throws FiltrationViolation if some c_i is outside G_i.
std::vector<UnipotentMatrix> hall_petresco(const UnipotentMatrix& g, const UnipotentMatrix& h,
                                           const FilteredLattice& fl);

/// x -> f(x) Gamma is invariant under x -> x + M e_i for every i.
bool is_periodic_mod_lattice(const PolyMap& pm, const Integer& period);
/// Per-coordinate periods, one per argument.
bool is_periodic_mod_lattice(const PolyMap& pm, const std::vector<Integer>& periods);

struct RationalizeResult {
  Integer q;
  Integer q_bound;  // the constant produced by the degree induction; q divides it
  std::vector<Integer> orders;  // per nonconstant coefficient, in index order
  std::vector<UnipotentMatrix> witnesses;  // a_t^q, all in Gamma
};

/// Degree-induction bound on the rationality of an M-periodic map into a
/// degree-k filtered group.
Integer rationality_bound(unsigned k, const Integer& period);
/// The same induction for a degree-k abelian (torus) target.
Integer abelian_rationality_bound(unsigned k, const Integer& period);

/// Throws PreconditionFailed unless pm is M-periodic.
RationalizeResult rationalize(const PolyMap& pm, const Integer& period);

/// q^{1 + k^2 (k+1)^2 / 4} k!
Integer period_bound(unsigned k, const Integer& q);
/// Throws PreconditionFailed unless every nonconstant a_t^q lies in Gamma.
Integer period_from_rational(const PolyMap& pm, const Integer& q);
/// Least M with pm M-periodic in every coordinate.
Integer minimal_period(const PolyMap& pm);
std::vector<Integer> minimal_periods(const PolyMap& pm);

/// Polynomial map Z^n -> T^a x finite, m(x) = sum_t binom(x, t) a_t.
class AbelianPolyMap {
 public:
  AbelianPolyMap(CALGroup target, std::size_t arity, unsigned degree, const std::map<MultiIndex, CALPoint>& coeffs = {});

  const CALGroup& target() const noexcept { return target_; }
  std::size_t arity() const noexcept { return arity_; }
  unsigned degree() const noexcept { return degree_; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  const std::vector<CALPoint>& coefficients() const noexcept { return coeffs_; }
  const CALPoint& coefficient(const MultiIndex& t) const;

  CALPoint eval(const Point& x) const;
  bool is_zero() const;

  bool operator==(const AbelianPolyMap& other) const {
    return arity_ == other.arity_ && degree_ == other.degree_ && target_ == other.target_ && coeffs_ == other.coeffs_;
  }

 private:
  CALGroup target_;
  std::size_t arity_;
  unsigned degree_;
  std::vector<MultiIndex> indices_;
  std::vector<CALPoint> coeffs_;
};

using PointFunction = std::function<CALPoint(const Point&)>;

AbelianPolyMap interpolate_abelian(const CALGroup& target, std::size_t arity, unsigned degree,
                                   const PointFunction& values);
/// x -> m(x + h) - m(x), of degree k - 1.
AbelianPolyMap derivative(const AbelianPolyMap& m, const Point& h);
bool is_periodic(const AbelianPolyMap& m, const Integer& period);

struct AbelianRationalizeResult {
  Integer q;
  Integer q_bound;
  std::vector<Integer> orders;
};
AbelianRationalizeResult rationalize(const AbelianPolyMap& m, const Integer& period);
Integer minimal_period(const AbelianPolyMap& m);

}  // namespace nilcomp
