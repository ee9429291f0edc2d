#include <random>

#include "doctest.h"
#include "qbf/freealg.hpp"

using namespace qbf;

namespace {

QScalar q(int e) { return QScalar::q_pow(e); }

FreeElem random_elem(std::mt19937_64& rng, const Word& letters) {
  FreeElem y;
  for (int t = 0; t < 4; ++t) {
    Word w = letters;
    std::shuffle(w.begin(), w.end(), rng);
    y.add_term(w, QScalar(static_cast<long>(rng() % 7) - 3) * q(static_cast<int>(rng() % 5) - 2));
  }
  return y;
}

}  // namespace

TEST_CASE("free algebra products") {
  FreeElem f1 = FreeElem::letter(0), f2 = FreeElem::letter(1);
  FreeElem p = f1 * f2;
  CHECK(p.size() == 1);
  CHECK(p.coeff(Word{0, 1}) == QScalar(1));
  CHECK(p * FreeElem::one() == p);
  FreeElem s = (f1 + f2) * f1;
  CHECK(s.coeff(Word{0, 0}) == QScalar(1));
  CHECK(s.coeff(Word{1, 0}) == QScalar(1));
  CHECK(s.size() == 2);
}

TEST_CASE("r' on powers of a letter") {
  for (auto fam : {Family::A, Family::B}) {
    RootSystem rs(fam, 3);
    const int i = 0;
    const int d = rs.d(i);
    FreeElem pw = FreeElem::one();
    for (int n = 1; n <= 5; ++n) {
      FreeElem prev = pw;
      pw = pw * FreeElem::letter(i);
      // q_i^{n-1} [n]_{q_i} F_i^{n-1}
      CHECK(rprime_free(rs, i, pw) == prev * (q(d * (n - 1)) * qint(n, d)));
      CHECK(r_free(rs, i, pw) == prev * (q(d * (n - 1)) * qint(n, d)));
    }
  }
  RootSystem a2(Family::A, 2);
  CHECK(rprime_free(a2, 0, FreeElem::letter(1)).is_zero());
}

TEST_CASE("r' of a q-commutator in A_2") {
  RootSystem a2(Family::A, 2);
  FreeElem y = ad_f_free(a2, 0, FreeElem::letter(1));  // F1 F2 - q F2 F1
  CHECK(y.coeff(Word{0, 1}) == QScalar(1));
  CHECK(y.coeff(Word{1, 0}) == -q(1));
  // hand expansion: q^{-1} F2 - q F2
  CHECK(rprime_free(a2, 0, y) == FreeElem::letter(1) * (q(-1) - q(1)));
}

TEST_CASE("pairing values") {
  RootSystem b2(Family::B, 2);
  for (int i = 0; i < 2; ++i) {
    const int d = b2.d(i);
    CHECK(pairing_eval(b2, FreeElem::letter(i), Word{static_cast<std::uint8_t>(i)}) ==
          -(q(d) - q(-d)).inverse());
  }
  CHECK(pairing_eval(b2, FreeElem::letter(0), Word{1}).is_zero());
  RootSystem a2(Family::A, 2);
  // two peels: r'_1(F1F2) = q^-1 F2, then r'_2(F2) = 1
  QScalar v = pairing_eval(a2, FreeElem::letter(0) * FreeElem::letter(1), Word{1, 0});
  CHECK(v == q(-1) / ((q(1) - q(-1)) * (q(1) - q(-1))));
}

TEST_CASE("left and right peeling agree") {
  std::mt19937_64 rng(3);
  for (auto [fam, rank] : {std::pair{Family::A, 3}, std::pair{Family::B, 3}, std::pair{Family::C, 3}}) {
    RootSystem rs(fam, rank);
    Word letters{0, 1, 1, 2, 0};
    for (int t = 0; t < 10; ++t) {
      FreeElem y = random_elem(rng, letters);
      Word e = letters;
      std::shuffle(e.begin(), e.end(), rng);
      CHECK(pairing_eval(rs, y, e) == pairing_eval_left(rs, y, e));
    }
  }
}

TEST_CASE("modular word pairing matches exact pairing") {
  const std::uint64_t p = (1ULL << 61) - 1;
  std::mt19937_64 rng(5);
  RootSystem rs(Family::C, 3);
  Word letters{0, 1, 1, 2, 2, 1};
  for (int t = 0; t < 20; ++t) {
    Word f = letters, e = letters;
    std::shuffle(f.begin(), f.end(), rng);
    std::shuffle(e.begin(), e.end(), rng);
    QScalar exact = pairing_reduced(rs, FreeElem::word(f), e);
    CHECK(exact.eval_mod(12345, p) == word_pairing_mod(rs, f, e, 12345, p));
  }
}

TEST_CASE("root vectors: norms, orthogonality, r'_{i0}") {
  for (auto pd : {ParabolicDatum::make(Family::A, 3), ParabolicDatum::make(Family::B, 3),
                  ParabolicDatum::make(Family::C, 3), ParabolicDatum::make(Family::D, 4)}) {
    CAPTURE(pd.tag());
    YBuilder yb(pd);
    const RootSystem& rs = pd.rs();
    for (int a = 0; a < pd.size(); ++a) {
      const Weight& beta = pd.roots()[a];
      CHECK(form_free(pd, yb.y(a), yb.y(a)) == qint(rs.pair(beta, beta) / 2).inverse());
      FreeElem rp = rprime_free(rs, pd.i0(), yb.y(a));
      if (a == 0)
        CHECK(rp == FreeElem::one());
      else
        CHECK(rp.is_zero());
      CHECK(yb.y(a).size() <= (1u << (rs.height(beta) - 1)));
      for (int b = a + 1; b < pd.size(); ++b)
        if (pd.roots()[b] == beta) CHECK(form_free(pd, yb.y(a), yb.y(b)).is_zero());
    }
  }
  auto a3 = ParabolicDatum::make(Family::A, 3);
  YBuilder yb(a3);
  CHECK(yb.y(0) == FreeElem::letter(a3.i0()));
}
