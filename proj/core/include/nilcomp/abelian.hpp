#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "nilcomp/linalg.hpp"
#include "nilcomp/rational.hpp"

namespace nilcomp {

using Complex = std::complex<double>;

/// e(t) = exp(2 pi i t), with t reduced mod 1 exactly before conversion.
Complex phase(const Rational& t);

struct GroupElement {
  std::vector<std::int64_t> coords;

  bool operator==(const GroupElement&) const = default;
};

/// Z/d_1 x ... x Z/d_r in the presentation it was given. Rank and exponent
/// are read off the invariant-factor form computed at construction.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::int64_t> moduli);

  const std::vector<std::int64_t>& moduli() const noexcept { return moduli_; }
  std::size_t num_factors() const noexcept { return moduli_.size(); }
  std::size_t order() const noexcept { return order_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  std::size_t rank() const noexcept { return invariant_factors_.size(); }
  /// Invariant factors greater than one, d_1 | d_2 | ...
  const std::vector<std::int64_t>& invariant_factors() const noexcept { return invariant_factors_; }

  GroupElement element(std::vector<std::int64_t> coords) const;
  GroupElement element_at(std::size_t index) const;
  std::size_t index_of(const GroupElement& x) const;
  GroupElement zero() const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement subtract(const GroupElement& a, const GroupElement& b) const { return add(a, negate(b)); }

  bool operator==(const FiniteAbelianGroup& other) const { return moduli_ == other.moduli_; }

 private:
  std::vector<std::int64_t> moduli_;
  std::vector<std::int64_t> invariant_factors_;
  std::size_t order_ = 1;
  std::int64_t exponent_ = 1;
};

/// Homomorphism Z' -> Z given by an integer matrix (target factors x source
/// factors) acting on coordinates.
class AbelianHom {
 public:
  AbelianHom(FiniteAbelianGroup source, FiniteAbelianGroup target,
             std::vector<std::vector<std::int64_t>> matrix);

  /// Coordinate reduction Z/(c_i d_i) -> Z/d_i (identity matrix).
  static AbelianHom reduction(FiniteAbelianGroup source, FiniteAbelianGroup target);

  const FiniteAbelianGroup& source() const noexcept { return source_; }
  const FiniteAbelianGroup& target() const noexcept { return target_; }
  const std::vector<std::vector<std::int64_t>>& matrix() const noexcept { return matrix_; }

  GroupElement apply(const GroupElement& y) const;
  bool is_surjective() const;

 private:
  FiniteAbelianGroup source_;
  FiniteAbelianGroup target_;
  std::vector<std::vector<std::int64_t>> matrix_;
};

/// { y in Z' : tau(y) = x } in index order. Throws NonSurjective.
std::vector<GroupElement> fiber(const AbelianHom& tau, const GroupElement& x);

/// A complex-valued function on every element of a finite abelian group,
/// stored in element-index order.
class ComplexTable {
 public:
  ComplexTable(FiniteAbelianGroup group, std::vector<Complex> values);
  static ComplexTable from_function(FiniteAbelianGroup group,
                                    const std::function<Complex(const GroupElement&)>& fn);

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  const Complex& operator[](std::size_t index) const { return values_[index]; }
  const Complex& at(const GroupElement& x) const { return values_[group_.index_of(x)]; }
  std::size_t size() const noexcept { return values_.size(); }

  double sup_norm() const;
  bool is_one_bounded(double tol = 1e-9) const { return sup_norm() <= 1.0 + tol; }

  /// f o tau as a table on tau's source.
  ComplexTable pullback(const AbelianHom& tau) const;

 private:
  FiniteAbelianGroup group_;
  std::vector<Complex> values_;
};

/// ||f||_{U^s}, evaluated through E_h ||Delta_h f||_{U^{s-1}}^{2^{s-1}}.
/// Throws TooLarge when |Z|^{s+1} exceeds 1e8.
double gowers_norm(const ComplexTable& f, unsigned s);

/// E_x f(x) conj(g(x)). Throws GroupMismatch.
Complex correlate(const ComplexTable& f, const ComplexTable& g);

struct CALPoint {
  std::vector<Rational> torus;  // each in [0, 1)
  GroupElement finite;

  bool operator==(const CALPoint&) const = default;
};

/// Compact abelian Lie group T^a x Z/d_1 x ... restricted to rational points.
class CALGroup {
 public:
  CALGroup() = default;
  CALGroup(std::size_t torus_dim, FiniteAbelianGroup finite);

  std::size_t torus_dim() const noexcept { return torus_dim_; }
  const FiniteAbelianGroup& finite() const noexcept { return finite_; }
  std::size_t coordinate_count() const noexcept { return torus_dim_ + finite_.num_factors(); }

  CALPoint point(std::vector<Rational> torus, std::vector<std::int64_t> finite) const;
  /// Reduces a cover vector (torus coords then finite coords, all rational,
  /// finite ones integral) into the group.
  CALPoint from_cover(const std::vector<Rational>& cover) const;
  std::vector<Rational> to_cover(const CALPoint& p) const;

  CALPoint zero() const;
  CALPoint add(const CALPoint& a, const CALPoint& b) const;
  CALPoint negate(const CALPoint& a) const;
  CALPoint subtract(const CALPoint& a, const CALPoint& b) const { return add(a, negate(b)); }
  CALPoint scale(const CALPoint& a, const Integer& n) const;
  Integer order(const CALPoint& a) const;

  bool operator==(const CALGroup& other) const {
    return torus_dim_ == other.torus_dim_ && finite_ == other.finite_;
  }

 private:
  std::size_t torus_dim_ = 0;
  FiniteAbelianGroup finite_;
};

/// Homomorphism of CAL groups presented on universal covers: a rational
/// matrix (target coords x source coords) whose torus->torus block is
/// integral, finite->finite block integral and well defined, finite->torus
/// block killed by the source moduli, and torus->finite block zero.
class CALHom {
 public:
  CALHom(CALGroup source, CALGroup target, RatMatrix matrix);

  const CALGroup& source() const noexcept { return source_; }
  const CALGroup& target() const noexcept { return target_; }
  const RatMatrix& matrix() const noexcept { return matrix_; }

  CALPoint apply(const CALPoint& p) const;
  bool is_surjective() const;
  /// Exponent of the component group ker / ker^0. Requires surjectivity.
  Integer kernel_component_exponent() const;

 private:
  CALGroup source_;
  CALGroup target_;
  RatMatrix matrix_;
};

}  // namespace nilcomp
