#include "nilcomp/linalg.hpp"

#include <utility>

#include "nilcomp/error.hpp"

namespace nilcomp {

template <class T>
DenseMatrix<T>::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) fail(ErrorKind::DimMismatch, "matrix data size does not match shape");
}

template <class T>
DenseMatrix<T> DenseMatrix<T>::operator*(const DenseMatrix& other) const {
  if (cols_ != other.rows_) fail(ErrorKind::DimMismatch, "matrix product shape mismatch");
  DenseMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t l = 0; l < cols_; ++l) {
      const T& a = (*this)(i, l);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(l, j);
    }
  return out;
}

template <class T>
std::vector<T> DenseMatrix<T>::operator*(const std::vector<T>& v) const {
  if (cols_ != v.size()) fail(ErrorKind::DimMismatch, "matrix-vector shape mismatch");
  std::vector<T> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

template <class T>
DenseMatrix<T> DenseMatrix<T>::transpose() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

template class DenseMatrix<Integer>;
template class DenseMatrix<Rational>;

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] += f * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm snf(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // pivot: smallest nonzero |entry| in the trailing block
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (d(i, j) != 0 && (pi == rows || abs(d(i, j)) < abs(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) break;
      swap_rows(d, t, pi);
      swap_rows(u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer f = -floor_div(d(i, t), d(t, t));
        add_row(d, i, t, f);
        add_row(u, i, t, f);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer f = -floor_div(d(t, j), d(t, t));
        add_col(d, j, t, f);
        add_col(v, j, t, f);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: pull any offending entry into row t and retry
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      add_row(d, t, bad, 1);
      add_row(u, t, bad, 1);
    }
    if (t < rows && t < cols && d(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }
  return SmithForm{std::move(u), std::move(d), std::move(v)};
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) ++r;
  return r;
}

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) out.push_back(D(i, i));
  return out;
}

std::optional<IntegerSolution> solve_integer(const IntMatrix& a, const std::vector<Integer>& b) {
  if (a.rows() != b.size()) fail(ErrorKind::DimMismatch, "solve_integer: rhs length mismatch");
  SmithForm s = snf(a);
  std::vector<Integer> ub = s.U * b;
  const std::size_t r = s.rank();
  std::vector<Integer> y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < r) {
      if (ub[i] % s.D(i, i) != 0) return std::nullopt;
      y[i] = ub[i] / s.D(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  IntegerSolution sol;
  sol.particular = s.V * y;
  for (std::size_t j = r; j < a.cols(); ++j) {
    std::vector<Integer> col(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) col[i] = s.V(i, j);
    sol.kernel.push_back(std::move(col));
  }
  return sol;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Rational inv = 1 / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<std::vector<Rational>> solve_rational(const RatMatrix& a, const std::vector<Rational>& b) {
  if (a.rows() != b.size()) fail(ErrorKind::DimMismatch, "solve_rational: rhs length mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<Rational> x(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
  return x;
}

std::size_t rational_rank(const RatMatrix& a) {
  RatMatrix m = a;
  return rref(m).size();
}

IntMatrix integer_left_nullspace(const RatMatrix& a) {
  // left null space of A = null space of A^T
  RatMatrix t = a.transpose();
  auto pivots = rref(t);
  std::vector<bool> is_pivot(t.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < t.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(t.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -t(i, free);
    basis.push_back(std::move(v));
  }
  IntMatrix out(basis.size(), a.rows());
  for (std::size_t r = 0; r < basis.size(); ++r) {
    Integer den = 1;
    for (auto& x : basis[r]) den = lcm(den, x.get_den());
    Integer g = 0;
    for (std::size_t j = 0; j < basis[r].size(); ++j) {
      Rational scaled = basis[r][j] * Rational(den);
      out(r, j) = scaled.get_num();
      g = gcd(g, out(r, j));
    }
    if (g > 1)
      for (std::size_t j = 0; j < basis[r].size(); ++j) out(r, j) /= g;
  }
  return out;
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  const std::size_t n = u.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = Rational(u(i, j));
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || (n > 0 && pivots.back() >= n))
    fail(ErrorKind::InvalidArgument, "matrix is not invertible");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return to_integer(inv);
}

IntMatrix lattice_basis(const IntMatrix& generators) {
  SmithForm s = snf(generators);
  IntMatrix uinv = unimodular_inverse(s.U);
  const std::size_t r = s.rank();
  IntMatrix basis(generators.rows(), r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < generators.rows(); ++i) basis(i, j) = uinv(i, j) * s.D(j, j);
  return basis;
}

IntMatrix to_integer(const RatMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!is_integer(a(i, j))) fail(ErrorKind::InvalidArgument, "matrix entry is not an integer");
      out(i, j) = a(i, j).get_num();
    }
  return out;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
  return out;
}

}  // namespace nilcomp
