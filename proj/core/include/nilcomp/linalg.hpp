#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nilcomp/rational.hpp"

namespace nilcomp {

/// Dense row-major matrix over a ring (Integer or Rational).
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> data);

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix operator*(const DenseMatrix& other) const;
  std::vector<T> operator*(const std::vector<T>& v) const;
  bool operator==(const DenseMatrix& other) const = default;

  DenseMatrix transpose() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = DenseMatrix<Integer>;
using RatMatrix = DenseMatrix<Rational>;

/// Smith normal form: U * M * V == D with U, V unimodular and D diagonal,
/// nonnegative, each diagonal entry dividing the next.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::size_t rank() const;
  std::vector<Integer> invariant_factors() const;  // nonzero diagonal of D
};

SmithForm snf(const IntMatrix& m);

/// Integer solutions of A x = b: a particular solution plus a basis of the
/// integer kernel. Absent when A x = b has no integer solution.
struct IntegerSolution {
  std::vector<Integer> particular;
  std::vector<std::vector<Integer>> kernel;
};
std::optional<IntegerSolution> solve_integer(const IntMatrix& a, const std::vector<Integer>& b);

/// One rational solution of A x = b (free variables set to zero), or absent.
std::optional<std::vector<Rational>> solve_rational(const RatMatrix& a, const std::vector<Rational>& b);

/// Basis (as rows) of the rational left null space {y : y A = 0}, scaled to
/// primitive integer rows.
IntMatrix integer_left_nullspace(const RatMatrix& a);

std::size_t rational_rank(const RatMatrix& a);

/// Inverse of a unimodular integer matrix.
IntMatrix unimodular_inverse(const IntMatrix& u);

/// Basis (as columns) of the lattice spanned by the columns of `generators`.
IntMatrix lattice_basis(const IntMatrix& generators);

IntMatrix to_integer(const RatMatrix& a);  // entries must be integral
RatMatrix to_rational(const IntMatrix& a);

}  // namespace nilcomp
