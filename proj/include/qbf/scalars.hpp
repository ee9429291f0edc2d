#pragma once

// Exact arithmetic in the rational function field Q(q).
//
// LaurentPoly holds an integer-coefficient Laurent polynomial in q.  QScalar
// is a reduced fraction of two of them.  Rational content of a QScalar is
// carried by the integer content of its denominator, so every QScalar has a
// unique stored form:
//
//   * gcd(num, den) = 1 in Z[q, 1/q] (both polynomial part and integer content)
//   * den has lowest exponent 0 and a positive leading coefficient
//   * zero is stored as 0/1
//
// The text form follows the (num)/(den) grammar with a primitive denominator
// and rational numerator coefficients; see str() and parse().

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qbf {

using Integer = mpz_class;
using Rational = mpq_class;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class PoleAtOne : public std::domain_error {
 public:
  PoleAtOne() : std::domain_error("value has a pole at q = 1") {}
};

class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c) { if (c != 0) { low_ = 0; coeffs_.emplace_back(c); } }  // NOLINT
  LaurentPoly(const Integer& c) { if (c != 0) { low_ = 0; coeffs_.push_back(c); } }  // NOLINT

  static LaurentPoly monomial(const Integer& c, int exponent);
  static LaurentPoly q_pow(int exponent) { return monomial(Integer(1), exponent); }
  // Dense constructor: coeffs[k] is the coefficient of q^(low + k).
  static LaurentPoly from_dense(int low, std::vector<Integer> coeffs);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1 && (coeffs_.empty() || low_ == 0); }
  bool is_one() const noexcept { return coeffs_.size() == 1 && low_ == 0 && coeffs_[0] == 1; }
  bool is_monomial() const noexcept { return coeffs_.size() == 1; }
  std::size_t term_count() const;

  int low() const noexcept { return low_; }
  int high() const noexcept { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  // Span of exponents; -1 for zero.
  int span() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Integer coeff(int exponent) const;
  const std::vector<Integer>& dense() const noexcept { return coeffs_; }
  const Integer& leading() const { return coeffs_.back(); }
  const Integer& trailing() const { return coeffs_.front(); }

  Integer content() const;  // nonnegative gcd of coefficients
  LaurentPoly shifted(int by) const;
  LaurentPoly& shift(int by) noexcept { if (!coeffs_.empty()) low_ += by; return *this; }
  LaurentPoly& negate() noexcept;
  LaurentPoly operator-() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& mul_scalar(const Integer& c);
  // Exact division of every coefficient by c.
  LaurentPoly& divexact_scalar(const Integer& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  Rational eval(const Rational& q) const;
  // Value mod p (p < 2^63) at the point q = x; x must be invertible mod p.
  std::uint64_t eval_mod(std::uint64_t x, std::uint64_t p) const;

  std::string str() const;

 private:
  void trim();
  int low_ = 0;
  std::vector<Integer> coeffs_;
};

// Polynomial gcd in Q[q] of two Laurent polynomials, returned primitive with
// lowest exponent 0 and positive leading coefficient.  gcd(0, 0) = 1.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);
// Exact quotient a / b in Z[q, 1/q]; throws if b does not divide a.
LaurentPoly poly_divexact(const LaurentPoly& a, const LaurentPoly& b);
// Quotient and remainder over Q of the ordinary polynomials q^-low(a) a and
// q^-low(b) b, scaled so both stay integral: lc(b)^k a = quo * b + rem.
std::pair<LaurentPoly, LaurentPoly> poly_pseudo_divmod(const LaurentPoly& a, const LaurentPoly& b);

class QScalar {
 public:
  QScalar() : den_(1) {}
  QScalar(long c) : num_(c), den_(1) {}  // NOLINT
  QScalar(const Integer& c) : num_(c), den_(1) {}  // NOLINT
  QScalar(const Rational& c);  // NOLINT
  QScalar(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT
  QScalar(LaurentPoly num, LaurentPoly den);

  static QScalar q_pow(int exponent) { return QScalar(LaurentPoly::q_pow(exponent)); }

  const LaurentPoly& num() const noexcept { return num_; }
  const LaurentPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_laurent() const noexcept { return den_.is_one(); }
  // Is this c * q^k for a nonzero rational c?
  // +-q^k: multiplication by it is a shift
  bool is_signed_power() const noexcept {
    return den_.is_one() && num_.is_monomial() && (num_.leading() == 1 || num_.leading() == -1);
  }
  bool is_rational_monomial() const noexcept { return num_.is_monomial() && den_.is_constant(); }

  QScalar inverse() const;
  QScalar pow(int e) const;
  QScalar operator-() const;
  QScalar& negate() noexcept {
    num_.negate();
    return *this;
  }

  QScalar& operator+=(const QScalar& o);
  QScalar& operator-=(const QScalar& o);
  QScalar& operator*=(const QScalar& o);
  QScalar& operator/=(const QScalar& o);
  // this += a * b
  QScalar& add_product(const QScalar& a, const QScalar& b);

  friend QScalar operator+(QScalar a, const QScalar& b) { return a += b; }
  friend QScalar operator-(QScalar a, const QScalar& b) { return a -= b; }
  friend QScalar operator*(QScalar a, const QScalar& b) { return a *= b; }
  friend QScalar operator/(QScalar a, const QScalar& b) { return a /= b; }
  friend bool operator==(const QScalar& a, const QScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const QScalar& a, const QScalar& b) { return !(a == b); }

  Rational eval(const Rational& q) const;
  std::uint64_t eval_mod(std::uint64_t x, std::uint64_t p) const;

  // Canonical text; parse(str()) == *this and str() is injective.
  std::string str() const;
  static QScalar parse(std::string_view text);
  // Rough size measure used for pivot selection.
  std::size_t weight() const noexcept {
    return static_cast<std::size_t>(num_.span() + 1) + static_cast<std::size_t>(den_.span() + 1);
  }

  friend std::ostream& operator<<(std::ostream& os, const QScalar& x) { return os << x.str(); }

 private:
  void canonicalize();
  LaurentPoly num_;
  LaurentPoly den_;
};

// q-integer [n]_t with t = q^d.
QScalar qint(int n, int d = 1);
// [m]_t!
QScalar qfact(int m, int d = 1);
// Gaussian binomial [m, n]_t; rejects m < n or negative arguments.
QScalar qbinom(int m, int n, int d = 1);
// Value at q = 1 after cancelling common (q - 1) factors.  Throws PoleAtOne.
Rational specialize_at_one(const QScalar& x);
std::string rational_str(const Rational& r);

}  // namespace qbf
