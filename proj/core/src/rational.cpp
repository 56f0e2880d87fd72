#include "nilcomp/rational.hpp"

#include <cctype>

#include "nilcomp/error.hpp"

namespace nilcomp {

Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational frac(const Rational& x) { return x - Rational(floor_of(x)); }

Rational reduce_mod(const Rational& x, const Rational& m) {
  if (sgn(m) <= 0) fail(ErrorKind::InvalidArgument, "reduce_mod needs a positive modulus");
  Rational q = x / m;
  return x - Rational(floor_of(q)) * m;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Rational binomial(const Rational& t, unsigned k) {
  Rational num = 1;
  for (unsigned i = 0; i < k; ++i) num *= (t - i);
  Rational r = num / Rational(factorial(k));
  r.canonicalize();
  return r;
}

Integer binomial(const Integer& n, unsigned k) {
  if (n >= 0) {
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
  }
  Rational r = binomial(Rational(n), k);
  return r.get_num();
}

std::vector<Integer> prime_factors(Integer n) {
  std::vector<Integer> out;
  if (n < 0) n = -n;
  for (Integer p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const Integer& x) { return x.get_str(); }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer integer_from(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Integer parse_integer(std::string_view text) {
  auto s = trim(text);
  if (!valid_integer_literal(s)) fail(ErrorKind::Parse, "not an integer: '" + std::string(text) + "'");
  return integer_from(s);
}

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  auto num = trim(s.substr(0, slash));
  auto den = trim(s.substr(slash + 1));
  if (!valid_integer_literal(num) || !valid_integer_literal(den))
    fail(ErrorKind::Parse, "not a rational: '" + std::string(text) + "'");
  Integer d = integer_from(den);
  if (d == 0) fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational r(integer_from(num), d);
  r.canonicalize();
  return r;
}

std::int64_t to_int64(const Integer& x) {
  if (!x.fits_slong_p()) fail(ErrorKind::TooLarge, "integer " + x.get_str() + " exceeds 64 bits");
  return x.get_si();
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::NonSurjective: return "NonSurjective";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotPolynomial: return "NotPolynomial";
    case ErrorKind::FiltrationViolation: return "FiltrationViolation";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::BadExponents: return "BadExponents";
    case ErrorKind::PeriodMismatch: return "PeriodMismatch";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::DiscrepancyNotAbelian: return "DiscrepancyNotAbelian";
  }
  return "Unknown";
}

}  // namespace nilcomp
