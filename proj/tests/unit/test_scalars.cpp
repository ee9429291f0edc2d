#include <random>

#include "doctest.h"
#include "qbf/scalars.hpp"

using namespace qbf;

namespace {

QScalar q(int e) { return QScalar::q_pow(e); }

QScalar random_scalar(std::mt19937_64& rng) {
  auto rand_poly = [&](int terms) {
    LaurentPoly p;
    for (int t = 0; t < terms; ++t) {
      long c = static_cast<long>(rng() % 9) - 4;
      int e = static_cast<int>(rng() % 7) - 3;
      p += LaurentPoly::monomial(Integer(c), e);
    }
    return p;
  };
  LaurentPoly den;
  while (den.is_zero()) den = rand_poly(1 + static_cast<int>(rng() % 3));
  return QScalar(rand_poly(1 + static_cast<int>(rng() % 4)), den);
}

}  // namespace

TEST_CASE("q-integers") {
  CHECK(qint(3, 1) == q(2) + 1 + q(-2));
  CHECK(qint(1, 2) == QScalar(1));
  CHECK(qint(0, 1).is_zero());
  CHECK(qint(-4, 1) == -qint(4, 1));
  CHECK(qint(2, 2) == q(2) + q(-2));
}

TEST_CASE("q-binomials") {
  CHECK(qbinom(2, 1, 1) == q(1) + q(-1));
  CHECK(qbinom(2, 2, 1) == QScalar(1));
  // [4]!/([2]![2]!) expanded by hand: (q^3+q+q^-1+q^-3)(q^2+1+q^-2)/(q+q^-1)
  CHECK(qbinom(4, 2, 1) == q(4) + q(2) + 2 + q(-2) + q(-4));
  CHECK(qbinom(4, 2, 1).is_laurent());
  CHECK_THROWS(qbinom(1, 2, 1));
}

TEST_CASE("q-factorial") {
  CHECK(qfact(0) == QScalar(1));
  CHECK(qfact(3) == qint(2) * qint(3));
}

TEST_CASE("specialization at one") {
  CHECK(specialize_at_one(qint(5, 1)) == 5);
  QScalar qm1 = q(1) - 1;
  CHECK(specialize_at_one(QScalar(qm1.num(), qm1.num())) == 1);
  CHECK_THROWS_AS(specialize_at_one(QScalar(1) / qm1), PoleAtOne);
  for (int n = -20; n <= 20; ++n)
    for (int d = 1; d <= 2; ++d) CHECK(specialize_at_one(qint(n, d)) == n);
  // (q^2-1)/(q-1)^2 has a pole; (q-1)^2/(q^2-1) vanishes
  QScalar a = (q(2) - 1) / (qm1 * qm1);
  CHECK_THROWS_AS(specialize_at_one(a), PoleAtOne);
  CHECK(specialize_at_one(a.inverse()) == 0);
}

TEST_CASE("serialization") {
  CHECK(qint(2, 1).str() == "q^1 + q^-1");
  CHECK(QScalar::parse("q^1 + q^-1") == qint(2, 1));
  CHECK(QScalar(0).str() == "0");
  CHECK(QScalar(Rational(3, 2)).str() == "3/2");
  CHECK((QScalar(3) * q(2)).str() == "3*q^2");
  CHECK((-q(-1)).str() == "-q^-1");
  QScalar x = (q(1) + Rational(1, 3)) / (q(2) + q(-1));
  CHECK(x.str() == "(q^2 + 1/3*q^1)/(q^3 + 1)");
  CHECK(QScalar::parse(x.str()) == x);
  try {
    QScalar::parse("q^^2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
  }
  CHECK_THROWS_AS(QScalar::parse("(q^1"), ParseError);
  CHECK_THROWS_AS(QScalar::parse("q^1 +"), ParseError);
  CHECK_THROWS_AS(QScalar::parse("(1)/(0)"), ParseError);
  CHECK(QScalar::parse("2/4*q^3") == QScalar(Rational(1, 2)) * q(3));
}

TEST_CASE("canonical forms") {
  // 2/(2q+2) == 1/(q+1)
  QScalar a(LaurentPoly(2), LaurentPoly::q_pow(1).mul_scalar(2) + LaurentPoly(2));
  QScalar b(LaurentPoly(1), LaurentPoly::q_pow(1) + LaurentPoly(1));
  CHECK(a == b);
  CHECK(a.str() == b.str());
  // q^-1 / (q - q^-1) = 1 / (q^2 - 1)
  QScalar c = q(-1) / (q(1) - q(-1));
  CHECK(c.num() == LaurentPoly(1));
  CHECK(c.den().low() == 0);
  // denominators with negative leading coefficient are flipped
  QScalar d(LaurentPoly(1), -LaurentPoly::q_pow(1));
  CHECK(d.den().leading() > 0);
}

TEST_CASE("field axioms on random scalars") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    QScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == QScalar(0));
    if (!a.is_zero()) CHECK(a * a.inverse() == QScalar(1));
    CHECK(QScalar::parse(a.str()) == a);
    // equality agrees with cross multiplication
    CHECK(((a == b) == ((a.num() * b.den()) == (b.num() * a.den()))));
    CHECK(((a == b) == (a.str() == b.str())));
    Rational at2 = a.eval(2);
    CHECK((a * b).eval(2) == at2 * b.eval(2));
  }
}

TEST_CASE("q-integer Pluecker-type identity") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    int m = static_cast<int>(rng() % 13);
    int n = static_cast<int>(rng() % (m + 1));
    CHECK(qint(m) * qint(n + 1) - qint(m + 1) * qint(n) == qint(m - n));
  }
}

TEST_CASE("polynomial gcd and exact division") {
  LaurentPoly x = LaurentPoly::q_pow(1);
  LaurentPoly f = (x + LaurentPoly(1)) * (x - LaurentPoly(2));
  LaurentPoly g = (x + LaurentPoly(1)) * (x + LaurentPoly(3));
  CHECK(poly_gcd(f, g) == x + LaurentPoly(1));
  CHECK(poly_gcd(LaurentPoly(), LaurentPoly()) == LaurentPoly(1));
  CHECK(poly_divexact(f, x + LaurentPoly(1)) == x - LaurentPoly(2));
  CHECK_THROWS(poly_divexact(f, x + LaurentPoly(5)));
  auto [quo, rem] = poly_pseudo_divmod(f, x + LaurentPoly(5));
  CHECK(rem == LaurentPoly(28));  // f(-5)
  CHECK(quo * (x + LaurentPoly(5)) + rem == f);
}

TEST_CASE("modular evaluation") {
  const std::uint64_t p = (1ULL << 61) - 1;
  QScalar a = (q(3) + 2) / (q(1) - q(-2));
  std::uint64_t v = a.eval_mod(5, p);
  // a(5) = (125 + 2) / (5 - 1/25) = 127 * 25 / 124
  Rational r = a.eval(5);
  Integer num = r.get_num() % Integer(std::to_string(p));
  Integer den = r.get_den();
  Integer inv;
  Integer P(std::to_string(p));
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
  Integer expect = (num * inv) % P;
  CHECK(expect.get_ui() == v);
}
