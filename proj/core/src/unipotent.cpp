#include "nilcomp/unipotent.hpp"

#include <atomic>
#include <sstream>

#include "nilcomp/error.hpp"

namespace nilcomp {

namespace {

std::atomic<std::size_t> g_max_dimension{12};

void check_dim(std::size_t dim) {
  if (dim == 0) fail(ErrorKind::InvalidArgument, "matrix dimension must be positive");
  if (dim > g_max_dimension.load())
    fail(ErrorKind::TooLarge, "matrix dimension " + std::to_string(dim) + " exceeds the cap of " +
                                  std::to_string(g_max_dimension.load()));
}

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) fail(ErrorKind::DimMismatch, "dimensions " + std::to_string(a) + " and " + std::to_string(b) + " differ");
}

// Strict upper part of a unitriangular matrix.
RatMatrix nilpotent_part(const RatMatrix& g) {
  RatMatrix n = g;
  for (std::size_t i = 0; i < n.rows(); ++i) n(i, i) = 0;
  return n;
}

}  // namespace

std::size_t max_dimension() noexcept { return g_max_dimension.load(); }

void set_max_dimension(std::size_t dim) {
  if (dim == 0) fail(ErrorKind::InvalidArgument, "dimension cap must be positive");
  g_max_dimension.store(dim);
}

UnipotentMatrix UnipotentMatrix::identity(std::size_t dim) {
  check_dim(dim);
  return UnipotentMatrix(RatMatrix::identity(dim));
}

UnipotentMatrix UnipotentMatrix::elementary(std::size_t dim, std::size_t i, std::size_t j, const Rational& c) {
  check_dim(dim);
  if (!(i < j && j < dim)) fail(ErrorKind::InvalidArgument, "elementary matrix needs 0 <= i < j < dim");
  RatMatrix m = RatMatrix::identity(dim);
  m(i, j) = c;
  return UnipotentMatrix(std::move(m));
}

UnipotentMatrix UnipotentMatrix::from_entries(std::size_t dim, std::vector<Rational> entries) {
  check_dim(dim);
  return from_matrix(RatMatrix(dim, dim, std::move(entries)));
}

UnipotentMatrix UnipotentMatrix::from_matrix(RatMatrix m) {
  if (m.rows() != m.cols()) fail(ErrorKind::DimMismatch, "matrix is not square");
  check_dim(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const Rational expected = (i == j) ? 1 : 0;
      if (m(i, j) != expected) fail(ErrorKind::InvalidArgument, "matrix is not upper unitriangular");
    }
  return UnipotentMatrix(std::move(m));
}

UnipotentMatrix UnipotentMatrix::operator*(const UnipotentMatrix& other) const {
  require_same_dim(dim(), other.dim());
  const std::size_t r = dim();
  RatMatrix out = RatMatrix::identity(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      Rational acc = m_(i, j) + other.m_(i, j);
      for (std::size_t l = i + 1; l < j; ++l)
        if (m_(i, l) != 0 && other.m_(l, j) != 0) acc += m_(i, l) * other.m_(l, j);
      out(i, j) = acc;
    }
  return UnipotentMatrix(std::move(out));
}

UnipotentMatrix UnipotentMatrix::inverse() const {
  // back substitution on the unitriangular system g x = I
  const std::size_t r = dim();
  RatMatrix inv = RatMatrix::identity(r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = j; i-- > 0;) {
      Rational acc = 0;
      for (std::size_t l = i + 1; l <= j; ++l)
        if (m_(i, l) != 0) acc += m_(i, l) * inv(l, j);
      inv(i, j) = -acc;
    }
  return UnipotentMatrix(std::move(inv));
}

UnipotentMatrix UnipotentMatrix::pow(const Integer& n) const {
  // (I + N)^n = sum_{i < r} binom(n, i) N^i
  const std::size_t r = dim();
  const RatMatrix nil = nilpotent_part(m_);
  RatMatrix out = RatMatrix::identity(r);
  RatMatrix term = nil;
  for (unsigned i = 1; i < r; ++i) {
    const Rational c = binomial(Rational(n), i);
    if (c != 0)
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b)
          if (term(a, b) != 0) out(a, b) += c * term(a, b);
    term = term * nil;
  }
  return UnipotentMatrix(std::move(out));
}

bool UnipotentMatrix::is_identity() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (m_(i, j) != 0) return false;
  return true;
}

Integer UnipotentMatrix::max_denominator() const {
  Integer d = 1;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (m_(i, j).get_den() > d) d = m_(i, j).get_den();
  return d;
}

UnipotentMatrix UnipotentMatrix::with_entry(std::size_t i, std::size_t j, const Rational& value) const {
  if (!(i < j && j < dim())) fail(ErrorKind::InvalidArgument, "with_entry needs 0 <= i < j < dim");
  RatMatrix m = m_;
  m(i, j) = value;
  return UnipotentMatrix(std::move(m));
}

StrictUpperMatrix StrictUpperMatrix::from_matrix(RatMatrix m) {
  if (m.rows() != m.cols()) fail(ErrorKind::DimMismatch, "matrix is not square");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (m(i, j) != 0) fail(ErrorKind::InvalidArgument, "matrix is not strictly upper triangular");
  return StrictUpperMatrix(std::move(m), true);
}

StrictUpperMatrix StrictUpperMatrix::elementary(std::size_t dim, std::size_t i, std::size_t j, const Rational& c) {
  if (!(i < j && j < dim)) fail(ErrorKind::InvalidArgument, "elementary matrix needs 0 <= i < j < dim");
  RatMatrix m(dim, dim);
  m(i, j) = c;
  return StrictUpperMatrix(std::move(m), true);
}

StrictUpperMatrix StrictUpperMatrix::operator+(const StrictUpperMatrix& other) const {
  require_same_dim(dim(), other.dim());
  RatMatrix m = m_;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j) m(i, j) += other.m_(i, j);
  return StrictUpperMatrix(std::move(m), true);
}

StrictUpperMatrix StrictUpperMatrix::operator-(const StrictUpperMatrix& other) const {
  return *this + other * Rational(-1);
}

StrictUpperMatrix StrictUpperMatrix::operator*(const Rational& c) const {
  RatMatrix m = m_;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j) m(i, j) *= c;
  return StrictUpperMatrix(std::move(m), true);
}

bool StrictUpperMatrix::is_zero() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (m_(i, j) != 0) return false;
  return true;
}

std::vector<Rational> StrictUpperMatrix::coordinates() const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j) out.push_back(m_(i, j));
  return out;
}

StrictUpperMatrix bracket(const StrictUpperMatrix& x, const StrictUpperMatrix& y) {
  require_same_dim(x.dim(), y.dim());
  RatMatrix xy = x.matrix() * y.matrix();
  RatMatrix yx = y.matrix() * x.matrix();
  for (std::size_t i = 0; i < xy.rows(); ++i)
    for (std::size_t j = 0; j < xy.cols(); ++j) xy(i, j) -= yx(i, j);
  return StrictUpperMatrix::from_matrix(std::move(xy));
}

UnipotentMatrix commutator(const UnipotentMatrix& g, const UnipotentMatrix& h) {
  require_same_dim(g.dim(), h.dim());
  return g.inverse() * h.inverse() * g * h;
}

StrictUpperMatrix mat_log(const UnipotentMatrix& g) {
  const std::size_t r = g.dim();
  const RatMatrix nil = nilpotent_part(g.matrix());
  RatMatrix out(r, r);
  RatMatrix term = nil;
  for (unsigned i = 1; i < r; ++i) {
    const Rational c = Rational(Integer(i % 2 == 1 ? 1 : -1)) / Rational(Integer(i));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a + 1; b < r; ++b) out(a, b) += c * term(a, b);
    term = term * nil;
  }
  return StrictUpperMatrix::from_matrix(std::move(out));
}

UnipotentMatrix mat_exp(const StrictUpperMatrix& x) {
  const std::size_t r = x.dim();
  check_dim(r);
  RatMatrix out = RatMatrix::identity(r);
  RatMatrix term = x.matrix();
  Integer fact = 1;
  for (unsigned i = 1; i < r; ++i) {
    fact *= i;
    const Rational c(Integer(1), fact);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a + 1; b < r; ++b) out(a, b) += c * term(a, b);
    term = term * x.matrix();
  }
  return UnipotentMatrix(std::move(out));
}

UnipotentMatrix rat_pow(const UnipotentMatrix& g, const Rational& t) {
  return mat_exp(mat_log(g) * t);
}

std::string to_string(const UnipotentMatrix& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) {
      if (i || j) os << ' ';
      os << to_string(g(i, j));
    }
  return os.str();
}

}  // namespace nilcomp
