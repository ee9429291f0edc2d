#include "qbf/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace qbf {

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::monomial(const Integer& c, int exponent) {
  LaurentPoly p;
  if (c != 0) {
    p.low_ = exponent;
    p.coeffs_.push_back(c);
  }
  return p;
}

LaurentPoly LaurentPoly::from_dense(int low, std::vector<Integer> coeffs) {
  LaurentPoly p;
  p.low_ = low;
  p.coeffs_ = std::move(coeffs);
  p.trim();
  return p;
}

void LaurentPoly::trim() {
  std::size_t hi = coeffs_.size();
  while (hi > 0 && coeffs_[hi - 1] == 0) --hi;
  std::size_t lo = 0;
  while (lo < hi && coeffs_[lo] == 0) ++lo;
  if (lo == hi) {
    coeffs_.clear();
    low_ = 0;
    return;
  }
  if (hi != coeffs_.size()) coeffs_.resize(hi);
  if (lo > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lo));
    low_ += static_cast<int>(lo);
  }
}

std::size_t LaurentPoly::term_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c != 0; }));
}

Integer LaurentPoly::coeff(int exponent) const {
  if (coeffs_.empty() || exponent < low_ || exponent > high()) return 0;
  return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

Integer LaurentPoly::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) {
    if (c == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

LaurentPoly LaurentPoly::shifted(int by) const {
  LaurentPoly p = *this;
  if (!p.coeffs_.empty()) p.low_ += by;
  return p;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  return p.negate();
}

LaurentPoly& LaurentPoly::negate() noexcept {
  for (auto& c : coeffs_) mpz_neg(c.get_mpz_t(), c.get_mpz_t());
  return *this;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.coeffs_.empty()) return *this;
  if (coeffs_.empty()) return *this = o;
  const int lo = std::min(low_, o.low_);
  const int hi = std::max(high(), o.high());
  if (lo < low_) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - lo), Integer(0));
    low_ = lo;
  }
  if (static_cast<int>(coeffs_.size()) < hi - lo + 1) coeffs_.resize(static_cast<std::size_t>(hi - lo + 1));
  const std::size_t off = static_cast<std::size_t>(o.low_ - low_);
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[off + k] += o.coeffs_[k];
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.coeffs_.empty()) return *this;
  if (coeffs_.empty()) return *this = -o;
  const int lo = std::min(low_, o.low_);
  const int hi = std::max(high(), o.high());
  if (lo < low_) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - lo), Integer(0));
    low_ = lo;
  }
  if (static_cast<int>(coeffs_.size()) < hi - lo + 1) coeffs_.resize(static_cast<std::size_t>(hi - lo + 1));
  const std::size_t off = static_cast<std::size_t>(o.low_ - low_);
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[off + k] -= o.coeffs_[k];
  trim();
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
  LaurentPoly r;
  r.low_ = a.low_ + b.low_;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j] == 0) continue;
      mpz_addmul(r.coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  r.trim();
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly& LaurentPoly::mul_scalar(const Integer& c) {
  if (c == 0) {
    coeffs_.clear();
    low_ = 0;
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

LaurentPoly& LaurentPoly::divexact_scalar(const Integer& c) {
  for (auto& x : coeffs_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return *this;
}

Rational LaurentPoly::eval(const Rational& q) const {
  if (coeffs_.empty()) return 0;
  if (q == 0) throw std::domain_error("cannot evaluate a Laurent polynomial at q = 0");
  Rational acc = 0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * q + coeffs_[k];
  Rational qp = 1;
  const Rational base = low_ >= 0 ? q : Rational(1) / q;
  for (int e = 0; e < std::abs(low_); ++e) qp *= base;
  acc *= qp;
  acc.canonicalize();
  return acc;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::uint64_t LaurentPoly::eval_mod(std::uint64_t x, std::uint64_t p) const {
  if (coeffs_.empty()) return 0;
  std::uint64_t acc = 0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), coeffs_[k].get_mpz_t(), static_cast<unsigned long>(p));
    acc = (mulmod(acc, x, p) + r.get_ui()) % p;
  }
  const std::uint64_t base = low_ >= 0 ? x : powmod(x, p - 2, p);
  return mulmod(acc, powmod(base, static_cast<std::uint64_t>(std::abs(low_)), p), p);
}

namespace {

std::string exponent_term(const std::string& magnitude, int e, bool unit) {
  if (e == 0) return magnitude;
  std::string t = unit ? std::string() : magnitude + "*";
  return t + "q^" + std::to_string(e);
}

// Render sum_k c_k q^k with rational coefficients given as integer / divisor.
std::string render_poly(const LaurentPoly& p, const Integer& divisor) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int e = p.high(); e >= p.low(); --e) {
    const Integer c = p.coeff(e);
    if (c == 0) continue;
    Rational r(c, divisor);
    r.canonicalize();
    const bool neg = r < 0;
    if (neg) r = -r;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    out += exponent_term(rational_str(r), e, r == 1);
    first = false;
  }
  return out;
}

}  // namespace

std::string LaurentPoly::str() const { return render_poly(*this, Integer(1)); }

// ---------------------------------------------------------------- gcd / division

namespace {

// Ordinary polynomial view: coefficients of q^0..q^deg.
using Dense = std::vector<Integer>;

Dense to_dense(const LaurentPoly& p) { return p.dense(); }

void dense_trim(Dense& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

Integer dense_content(const Dense& d) {
  Integer g = 0;
  for (const auto& c : d) {
    if (c == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void dense_make_primitive(Dense& d) {
  Integer g = dense_content(d);
  if (g == 0 || g == 1) return;
  for (auto& c : d) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// In-place pseudo-remainder of a by b; returns remainder.
Dense dense_prem(Dense a, const Dense& b) {
  const std::size_t db = b.size() - 1;
  const Integer& lb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const Integer la = a.back();
    for (auto& c : a) c *= lb;
    for (std::size_t k = 0; k <= db; ++k) a[k + shift] -= la * b[k];
    dense_trim(a);
    dense_make_primitive(a);
  }
  return a;
}

}  // namespace

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return LaurentPoly(1);
  Dense x = to_dense(a), y = to_dense(b);
  if (x.empty()) std::swap(x, y);
  if (y.empty()) {
    dense_make_primitive(x);
    if (x.back() < 0)
      for (auto& c : x) c = -c;
    return LaurentPoly::from_dense(0, std::move(x));
  }
  if (x.size() == 1 || y.size() == 1) return LaurentPoly(1);
  dense_make_primitive(x);
  dense_make_primitive(y);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    if (y.size() == 1) return LaurentPoly(1);
    Dense r = dense_prem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  dense_make_primitive(x);
  if (x.back() < 0)
    for (auto& c : x) c = -c;
  return LaurentPoly::from_dense(0, std::move(x));
}

LaurentPoly poly_divexact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return {};
  Dense r = a.dense();
  const Dense& d = b.dense();
  if (r.size() < d.size()) throw std::domain_error("poly_divexact: not divisible");
  const std::size_t db = d.size() - 1;
  Dense quo(r.size() - db, Integer(0));
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i] == 0) continue;
    Integer qc, rem;
    mpz_tdiv_qr(qc.get_mpz_t(), rem.get_mpz_t(), r[i].get_mpz_t(), d.back().get_mpz_t());
    if (rem != 0) throw std::domain_error("poly_divexact: not divisible");
    const std::size_t shift = i - db;
    for (std::size_t k = 0; k <= db; ++k) r[k + shift] -= qc * d[k];
    quo[shift] = qc;
  }
  for (const auto& c : r)
    if (c != 0) throw std::domain_error("poly_divexact: not divisible");
  return LaurentPoly::from_dense(a.low() - b.low(), std::move(quo));
}

std::pair<LaurentPoly, LaurentPoly> poly_pseudo_divmod(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  Dense r = a.dense();
  const Dense& d = b.dense();
  const std::size_t db = d.size() - 1;
  Dense quo(r.size() > db ? r.size() - db : 1, Integer(0));
  while (!r.empty() && r.size() - 1 >= db) {
    const std::size_t shift = r.size() - 1 - db;
    const Integer lr = r.back();
    for (auto& c : r) c *= d.back();
    for (auto& c : quo) c *= d.back();
    quo[shift] += lr;
    for (std::size_t k = 0; k <= db; ++k) r[k + shift] -= lr * d[k];
    dense_trim(r);
  }
  return {LaurentPoly::from_dense(0, std::move(quo)), LaurentPoly::from_dense(0, std::move(r))};
}

// ---------------------------------------------------------------- QScalar

QScalar::QScalar(const Rational& c) : num_(c.get_num()), den_(c.get_den()) {}

QScalar::QScalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("QScalar with zero denominator");
  canonicalize();
}

void QScalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  if (!den_.is_monomial() && !num_.is_monomial()) {
    LaurentPoly g = poly_gcd(num_, den_);
    if (!g.is_one()) {
      num_ = poly_divexact(num_, g);
      den_ = poly_divexact(den_, g);
    }
  }
  if (den_.low() != 0) {
    num_ = num_.shifted(-den_.low());
    den_ = den_.shifted(-den_.low());
  }
  Integer gc = num_.content();
  if (gc != 1) {
    Integer cd = den_.content();
    mpz_gcd(gc.get_mpz_t(), gc.get_mpz_t(), cd.get_mpz_t());
    if (gc != 1) {
      num_.divexact_scalar(gc);
      den_.divexact_scalar(gc);
    }
  }
  if (den_.leading() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

QScalar QScalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero QScalar");
  QScalar r;
  r.num_ = den_;
  r.den_ = num_;
  // num and den are already coprime; only shift, content sign need fixing
  if (r.den_.low() != 0) {
    r.num_ = r.num_.shifted(-r.den_.low());
    r.den_ = r.den_.shifted(-r.den_.low());
  }
  if (r.den_.leading() < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

QScalar QScalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  QScalar result(1), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

QScalar QScalar::operator-() const {
  QScalar r = *this;
  return r.negate();
}

QScalar& QScalar::operator+=(const QScalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    canonicalize();
    return *this;
  }
  if (den_.is_constant() && o.den_.is_constant()) {
    const Integer a = den_.leading(), b = o.den_.leading();
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer fa = b / g, fb = a / g;
    num_.mul_scalar(fa);
    LaurentPoly t = o.num_;
    t.mul_scalar(fb);
    num_ += t;
    den_.mul_scalar(fa);
    canonicalize();
    return *this;
  }
  // a/b + c/d with g = gcd(b, d): (a d' + c b') / (b' d' g)
  LaurentPoly g = poly_gcd(den_, o.den_);
  LaurentPoly b1 = g.is_one() ? den_ : poly_divexact(den_, g);
  LaurentPoly d1 = g.is_one() ? o.den_ : poly_divexact(o.den_, g);
  num_ = num_ * d1 + o.num_ * b1;
  den_ = b1 * o.den_;
  canonicalize();
  return *this;
}

QScalar& QScalar::operator-=(const QScalar& o) { return *this += -o; }

QScalar& QScalar::operator*=(const QScalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = QScalar();
  if (o.is_signed_power()) {
    // den has lowest exponent 0, so shifting num keeps the canonical form
    num_.shift(o.num_.low());
    if (o.num_.leading() < 0) num_.negate();
    return *this;
  }
  if (is_signed_power()) {
    const int by = num_.low();
    const bool neg = num_.leading() < 0;
    *this = o;
    num_.shift(by);
    if (neg) num_.negate();
    return *this;
  }
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  // cross cancellation keeps the product reduced up to content
  LaurentPoly a = num_, b = den_, c = o.num_, d = o.den_;
  if (!a.is_monomial() && !d.is_constant()) {
    LaurentPoly g = poly_gcd(a, d);
    if (!g.is_one()) {
      a = poly_divexact(a, g);
      d = poly_divexact(d, g);
    }
  }
  if (!c.is_monomial() && !b.is_constant()) {
    LaurentPoly g = poly_gcd(c, b);
    if (!g.is_one()) {
      c = poly_divexact(c, g);
      b = poly_divexact(b, g);
    }
  }
  num_ = a * c;
  den_ = b * d;
  if (den_.low() != 0) {
    num_ = num_.shifted(-den_.low());
    den_ = den_.shifted(-den_.low());
  }
  Integer gc = num_.content();
  if (gc != 1) {
    Integer cd = den_.content();
    mpz_gcd(gc.get_mpz_t(), gc.get_mpz_t(), cd.get_mpz_t());
    if (gc != 1) {
      num_.divexact_scalar(gc);
      den_.divexact_scalar(gc);
    }
  }
  if (den_.leading() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  return *this;
}

QScalar& QScalar::operator/=(const QScalar& o) { return *this *= o.inverse(); }

QScalar& QScalar::add_product(const QScalar& a, const QScalar& b) {
  if (a.is_zero() || b.is_zero()) return *this;
  if (den_.is_one() && a.den_.is_one() && b.den_.is_one()) {
    num_ += a.num_ * b.num_;
    return *this;
  }
  return *this += a * b;
}

Rational QScalar::eval(const Rational& q) const {
  Rational d = den_.eval(q);
  if (d == 0) throw std::domain_error("QScalar has a pole at the evaluation point");
  Rational r = num_.eval(q) / d;
  r.canonicalize();
  return r;
}

std::uint64_t QScalar::eval_mod(std::uint64_t x, std::uint64_t p) const {
  const std::uint64_t d = den_.eval_mod(x, p);
  if (d == 0) throw std::domain_error("QScalar has a pole at the modular evaluation point");
  return mulmod(num_.eval_mod(x, p), powmod(d, p - 2, p), p);
}

std::string QScalar::str() const {
  if (den_.is_constant()) return render_poly(num_, den_.leading());
  const Integer c = den_.content();
  LaurentPoly d = den_;
  d.divexact_scalar(c);
  return "(" + render_poly(num_, c) + ")/(" + render_poly(d, Integer(1)) + ")";
}

// ---------------------------------------------------------------- parsing

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view s) : s_(s) {}

  QScalar parse_all() {
    skip_ws();
    QScalar result;
    if (peek() == '(') {
      ++pos_;
      QScalar num = parse_poly();
      expect(')');
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        expect('(');
        QScalar den = parse_poly();
        expect(')');
        if (den.is_zero()) throw ParseError("zero denominator", pos_);
        result = num / den;
      } else {
        result = num;
      }
    } else {
      result = parse_poly();
    }
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    return result;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  Integer parse_uint() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", pos_);
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  int parse_int() {
    const std::size_t start = pos_;
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = peek() == '-';
      ++pos_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected integer exponent", start);
    Integer v = parse_uint();
    if (!v.fits_sint_p()) throw ParseError("exponent out of range", start);
    return neg ? -static_cast<int>(v.get_si()) : static_cast<int>(v.get_si());
  }

  // term := coeff ['*'] 'q' ['^' int] | coeff | 'q' ['^' int]
  std::pair<Rational, int> parse_term() {
    skip_ws();
    Rational c = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Integer n = parse_uint();
      Integer d = 1;
      if (peek() == '/' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        ++pos_;
        d = parse_uint();
        if (d == 0) throw ParseError("zero denominator in coefficient", pos_);
      }
      c = Rational(n, d);
      c.canonicalize();
      have_coeff = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (peek() != 'q') throw ParseError("expected 'q' after '*'", pos_);
      }
    }
    int e = 0;
    if (peek() == 'q') {
      ++pos_;
      if (peek() == '^') {
        ++pos_;
        e = parse_int();
      } else {
        e = 1;
      }
    } else if (!have_coeff) {
      throw ParseError("expected term", pos_);
    }
    return {c, e};
  }

  QScalar parse_poly() {
    skip_ws();
    std::vector<std::pair<Rational, int>> terms;
    int sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    for (;;) {
      auto t = parse_term();
      t.first *= sign;
      terms.push_back(t);
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        continue;
      }
      break;
    }
    Integer l = 1;
    for (const auto& t : terms) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.first.get_den_mpz_t());
    LaurentPoly p;
    for (const auto& t : terms) {
      Integer c = t.first.get_num() * (l / t.first.get_den());
      p += LaurentPoly::monomial(c, t.second);
    }
    return QScalar(p, LaurentPoly(l));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

QScalar QScalar::parse(std::string_view text) { return ScalarParser(text).parse_all(); }

// ---------------------------------------------------------------- q-combinatorics

QScalar qint(int n, int d) {
  if (d <= 0) throw std::invalid_argument("qint: d must be positive");
  if (n == 0) return QScalar();
  const int m = std::abs(n);
  LaurentPoly p;
  for (int k = 0; k < m; ++k) p += LaurentPoly::q_pow(d * (m - 1 - 2 * k));
  return n < 0 ? QScalar(-p) : QScalar(p);
}

QScalar qfact(int m, int d) {
  if (m < 0) throw std::invalid_argument("qfact: negative argument");
  QScalar r(1);
  for (int k = 1; k <= m; ++k) r *= qint(k, d);
  return r;
}

QScalar qbinom(int m, int n, int d) {
  if (n < 0 || m < n) throw std::invalid_argument("qbinom: requires m >= n >= 0");
  return qfact(m, d) / (qfact(n, d) * qfact(m - n, d));
}

namespace {

// Strip (q - 1) factors from an ordinary integer polynomial; returns the count.
int strip_root_one(Dense& d) {
  int mult = 0;
  for (;;) {
    Integer sum = 0;
    for (const auto& c : d) sum += c;
    if (sum != 0 || d.empty()) return mult;
    // synthetic division by (q - 1)
    Dense quo(d.size() - 1, Integer(0));
    Integer carry = 0;
    for (std::size_t i = d.size(); i-- > 1;) {
      carry += d[i];
      quo[i - 1] = carry;
    }
    d = std::move(quo);
    ++mult;
  }
}

}  // namespace

Rational specialize_at_one(const QScalar& x) {
  if (x.is_zero()) return 0;
  Dense n = x.num().dense(), d = x.den().dense();
  const int mn = strip_root_one(n);
  const int md = strip_root_one(d);
  if (mn > md) return 0;
  if (mn < md) throw PoleAtOne();
  Integer sn = 0, sd = 0;
  for (const auto& c : n) sn += c;
  for (const auto& c : d) sd += c;
  Rational r(sn, sd);
  r.canonicalize();
  return r;
}

std::string rational_str(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace qbf
