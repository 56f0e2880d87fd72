#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nilcomp/linalg.hpp"
#include "nilcomp/rational.hpp"

namespace nilcomp {

/// Largest matrix dimension accepted by UnipotentMatrix (default 12).
std::size_t max_dimension() noexcept;
void set_max_dimension(std::size_t dim);

class StrictUpperMatrix;

/// Exact rational upper unitriangular matrix. Indices are 0-based.
class UnipotentMatrix {
 public:
  UnipotentMatrix() : UnipotentMatrix(identity(1)) {}

  static UnipotentMatrix identity(std::size_t dim);
  /// I + c E_{ij}, i < j.
  static UnipotentMatrix elementary(std::size_t dim, std::size_t i, std::size_t j, const Rational& c = 1);
  /// Row-major r*r entries; throws InvalidArgument unless unitriangular.
  static UnipotentMatrix from_entries(std::size_t dim, std::vector<Rational> entries);
  static UnipotentMatrix from_matrix(RatMatrix m);

  std::size_t dim() const noexcept { return m_.rows(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const RatMatrix& matrix() const noexcept { return m_; }

  UnipotentMatrix operator*(const UnipotentMatrix& other) const;
  UnipotentMatrix& operator*=(const UnipotentMatrix& other) { return *this = *this * other; }
  UnipotentMatrix inverse() const;
  /// g^n for any integer n via the finite binomial series.
  UnipotentMatrix pow(const Integer& n) const;

  bool is_identity() const;
  /// Largest absolute value among entry denominators.
  Integer max_denominator() const;

  bool operator==(const UnipotentMatrix& other) const { return m_ == other.m_; }

  /// Same matrix with entry (i, j) replaced.
  UnipotentMatrix with_entry(std::size_t i, std::size_t j, const Rational& value) const;

 private:
  explicit UnipotentMatrix(RatMatrix m) : m_(std::move(m)) {}
  friend class StrictUpperMatrix;
  friend UnipotentMatrix mat_exp(const StrictUpperMatrix& x);

  RatMatrix m_;
};

/// Nilpotent strictly upper-triangular rational matrix (Lie algebra element).
class StrictUpperMatrix {
 public:
  explicit StrictUpperMatrix(std::size_t dim) : m_(dim, dim) {}
  static StrictUpperMatrix from_matrix(RatMatrix m);
  static StrictUpperMatrix elementary(std::size_t dim, std::size_t i, std::size_t j, const Rational& c = 1);

  std::size_t dim() const noexcept { return m_.rows(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const RatMatrix& matrix() const noexcept { return m_; }

  StrictUpperMatrix operator+(const StrictUpperMatrix& other) const;
  StrictUpperMatrix operator-(const StrictUpperMatrix& other) const;
  StrictUpperMatrix operator*(const Rational& c) const;
  bool is_zero() const;
  bool operator==(const StrictUpperMatrix& other) const { return m_ == other.m_; }

  /// Entries strictly above the diagonal in row-major order.
  std::vector<Rational> coordinates() const;

 private:
  explicit StrictUpperMatrix(RatMatrix m, bool) : m_(std::move(m)) {}
  RatMatrix m_;
};

/// XY - YX
StrictUpperMatrix bracket(const StrictUpperMatrix& x, const StrictUpperMatrix& y);

/// g^-1 h^-1 g h. Throws DimMismatch.
UnipotentMatrix commutator(const UnipotentMatrix& g, const UnipotentMatrix& h);

/// log(I + N) = sum (-1)^{i+1} N^i / i, exact.
StrictUpperMatrix mat_log(const UnipotentMatrix& g);
UnipotentMatrix mat_exp(const StrictUpperMatrix& x);

/// exp(t log g).
UnipotentMatrix rat_pow(const UnipotentMatrix& g, const Rational& t);

std::string to_string(const UnipotentMatrix& g);

}  // namespace nilcomp
