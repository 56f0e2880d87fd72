#pragma once

#include <cstdint>
#include <vector>

#include "nilcomp/abelian.hpp"
#include "nilcomp/filtered.hpp"
#include "nilcomp/polymap.hpp"
#include "nilcomp/unipotent.hpp"

namespace nilcomp {

struct MalcevReduction {
  std::vector<Rational> coords;  // positions() order, each in [0, 1/s)
  UnipotentMatrix representative;
  UnipotentMatrix gamma;  // g = representative * gamma, gamma in Gamma
};

/// Right-multiplies by lattice elementary matrices, superdiagonal distance
/// ascending, until every active entry lies in [0, 1/s).
MalcevReduction malcev_reduce(const FilteredLattice& fl, const UnipotentMatrix& g);

/// F(x) = e(sum m(i,j) s(i,j) x(i,j)) on reduced coordinates.
class FrequencySpec {
 public:
  enum class Mode { Exact, Sampled };

  /// `frequencies` is row-major dim x dim; entries off the active positions
  /// must be zero.
  FrequencySpec(FilteredLattice lattice, std::vector<Integer> frequencies);

  const FilteredLattice& lattice() const noexcept { return lattice_; }
  const std::vector<Integer>& frequencies() const noexcept { return freq_; }  // positions() order
  Mode mode() const noexcept { return mode_; }
  Integer total_frequency() const;  // sum of |m|

  Complex operator()(const std::vector<Rational>& coords) const;
  Complex at(const UnipotentMatrix& g) const;

  /// Exact mode passes outright; sampled mode compares F(g) with F(g gamma)
  /// on `samples` random pairs. Throws NotInvariant.
  void check_invariance(std::uint64_t seed = 0x5eed, std::size_t samples = 1000, double tol = 1e-9) const;

 private:
  FilteredLattice lattice_;
  std::vector<Integer> freq_;
  Mode mode_;
};

struct ProjectedNilsequence {
  AbelianHom tau;
  PolyMap g;
  FrequencySpec frequency;
  ComplexTable table;
  bool rank_preserving;
};

/// phi(x) = average of F(g(y) Gamma) over the fiber of tau above x.
/// Throws ArityMismatch, PeriodMismatch, NonSurjective, NotInvariant.
ProjectedNilsequence project(const AbelianHom& tau, const PolyMap& g, const FrequencySpec& frequency);

struct ObstructionReport {
  double delta = 0;
  double gowers = 0;           // ||f||_{U^{k+1}}
  double gowers_pullback = 0;  // ||f o tau||_{U^{k+1}}
  bool pullback_identity = false;
  unsigned k = 0;
  std::size_t dim = 0;
  unsigned degree = 0;
  Integer max_denominator = 1;
  Integer total_frequency = 0;
  bool rank_preserving = false;
};

/// Throws GroupMismatch.
ObstructionReport obstruction_report(const ComplexTable& f, const ProjectedNilsequence& phi, unsigned k);

}  // namespace nilcomp
