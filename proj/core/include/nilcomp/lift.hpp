#pragma once

#include <optional>
#include <vector>

#include "nilcomp/abelian.hpp"
#include "nilcomp/filtered.hpp"
#include "nilcomp/linalg.hpp"
#include "nilcomp/polymap.hpp"
#include "nilcomp/unipotent.hpp"

namespace nilcomp {

/// r in the top band with (g r)^q in Gamma. Throws PreconditionFailed unless
/// (g mod G_k)^q lies in Gamma G_k.
UnipotentMatrix central_rational_correction(const FilteredLattice& fl, const UnipotentMatrix& g, const Integer& q);

struct AbelianLiftResult {
  AbelianPolyMap lifted;
  Integer q;             // lcm of the target coefficient orders
  Integer q_prime;       // exponent of ker / ker^0
  Integer period_bound;  // (order lcm of the lift)^{1+k^2(k+1)^2/4} k!
  Integer minimal_period;
};

/// m' with eta o m' = m; every nonconstant b_t has order dividing
/// ord(a_t) q' and is the lexicographically least such preimage.
/// Throws NonSurjective, PreconditionFailed.
AbelianLiftResult lift_abelian_poly(const AbelianPolyMap& m, const CALHom& eta, const Integer& period);

struct Correction {
  int level;
  MultiIndex index;
  UnipotentMatrix value;
};

struct LiftReport {
  Integer input_period;
  Integer output_period;  // explicit bound, verified
  Integer minimal_period;
  Integer q;
  Integer q_prime = 1;
  std::vector<Correction> corrections;  // nonidentity only
};

struct LiftResult {
  PolyMap lifted;
  LiftReport report;
};

/// f is read modulo the top band of `fl`. Returns f~ into `fl` with
/// pi o f~ = f and verified period q^{1+k^2(k+1)^2/4} k!.
LiftResult lift_last_level(const FilteredLattice& fl, const PolyMap& f, const Integer& period);

/// Coordinate-linear filtered surjection G_Y -> G_X: X coordinates are
/// psi * (Y coordinates), both in positions() order.
class FibrationDatum {
 public:
  /// Validates the homomorphism property on elementary pairs, the level
  /// structure, per-band surjectivity and Psi(Gamma_Y) in Gamma_X.
  FibrationDatum(FilteredLattice y, FilteredLattice x, RatMatrix psi);

  static FibrationDatum identity(const FilteredLattice& y);
  /// Same matrix group; X keeps a subset of Y's active positions.
  static FibrationDatum projection(const FilteredLattice& y, const FilteredLattice& x);

  const FilteredLattice& source() const noexcept { return y_; }
  const FilteredLattice& target() const noexcept { return x_; }
  const RatMatrix& matrix() const noexcept { return psi_; }
  bool is_identity() const;

  UnipotentMatrix apply(const UnipotentMatrix& g) const;

 private:
  FilteredLattice y_;
  FilteredLattice x_;
  RatMatrix psi_;
};

/// f' into Y with Psi o f' = f coefficientwise, built level by level.
/// Throws PreconditionFailed, DiscrepancyNotAbelian.
LiftResult lift_through_fibration(const FibrationDatum& fib, const PolyMap& f, const Integer& period);

/// A lift of f (read modulo the top band) that is periods[i]-periodic in
/// coordinate i, or absent when none exists. Throws PreconditionFailed
/// unless f itself has those periods modulo the top band.
std::optional<PolyMap> minimal_period_lift_search(const FilteredLattice& fl, const PolyMap& f,
                                                  const std::vector<Integer>& periods);

struct HeisenbergInstance {
  FilteredLattice lattice;  // 3x3 lower central series, integer lattice
  PolyMap map;              // (x, y) -> g1^x g2^y modulo the center
};

/// g1 = I + (1/n) E12, g2 = I + (1/m) E23.
HeisenbergInstance heisenberg_instance(const Integer& n, const Integer& m);

}  // namespace nilcomp
