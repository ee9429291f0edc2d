#include "doctest.h"
#include "qbf/freealg.hpp"
#include "qbf/linalg.hpp"
#include "qbf/relations.hpp"

using namespace qbf;

namespace {

QScalar q(int e) { return QScalar::q_pow(e); }

DeriveOptions opts(std::uint64_t seed = 1, VerifyLevel lv = VerifyLevel::RankComplete) {
  DeriveOptions o;
  o.seed = seed;
  o.level = lv;
  return o;
}

// The free-algebra route: zero test of a FreeElem on a separating word set.
bool free_zero(const RootSystem& rs, const FreeElem& x, const Weight& mu) {
  for (const Word& e : separating_words(rs, mu, 99))
    if (!pairing_reduced(rs, x, e).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("linear algebra over Q(q)") {
  // [[q, 1], [1, q^-1]] is singular; kernel spanned by (1, -q)
  QMatrix a{{q(1), QScalar(1)}, {QScalar(1), q(-1)}};
  CHECK(rank(a, 2) == 1);
  auto ker = kernel(a, 2);
  REQUIRE(ker.size() == 1);
  CHECK(a[0][0] * ker[0][0] + a[0][1] * ker[0][1] == QScalar(0));
  QMatrix b{{q(1), QScalar(2)}, {QScalar(1) / (q(1) + 1), q(-1)}};
  QVector rhs{QScalar(3), q(2)};
  bool unique = false;
  auto x = solve(b, rhs, 2, &unique);
  REQUIRE(x);
  CHECK(unique);
  for (int r = 0; r < 2; ++r) CHECK(b[r][0] * (*x)[0] + b[r][1] * (*x)[1] == rhs[r]);
  CHECK_FALSE(solve(a, QVector{QScalar(1), QScalar(0)}, 2));
  CHECK(modp::rank({{1, 2}, {2, 4}}) == 1);
  CHECK(modp::mul(modp::inv(12345), 12345) == 1);
}

TEST_CASE("separating words reach the Kostant number") {
  RootSystem a3(Family::A, 3);
  for (const Weight& mu : {Weight{1, 1, 1}, Weight{1, 2, 1}, Weight{0, 2, 1}}) {
    auto w = separating_words(a3, mu, 5);
    CHECK(w.size() == kostant_partitions(a3, mu));
  }
  CHECK(separating_words(a3, Weight{2, 0, 0}, 5).size() == 1);
}

TEST_CASE("(A_3,2) relation table") {
  auto pd = ParabolicDatum::make(Family::A, 3);
  RelationTable t = derive_table(pd, opts());
  CHECK(t.k() == 4);
  CHECK(t.rules.size() == 6);
  const int i0 = pd.i0();
  CHECK(t.rprime[i0][0] == QScalar(1));
  for (int g = 1; g < 4; ++g) CHECK_FALSE(t.rprime[i0][g].has_value());
  int single = 0;
  for (const auto& [key, terms] : t.rules) {
    auto [b, a] = key;
    REQUIRE(!terms.empty());
    CHECK(terms.front().u == a);
    CHECK(terms.front().v == b);
    if (terms.size() == 1) {
      ++single;
      // q-commutation: the coefficient is a signed power of q
      CHECK(terms.front().c.is_laurent());
      CHECK(terms.front().c.num().span() == 0);
    }
    for (std::size_t s = 1; s < terms.size(); ++s) {
      CHECK(terms[s].u > a);
      CHECK(terms[s].v < b);
    }
  }
  // a 2x2 quantum matrix: five q-commuting pairs and one with a correction
  CHECK(single == 5);
}

TEST_CASE("derived tables agree with the free algebra") {
  for (auto pd : {ParabolicDatum::make(Family::A, 3), ParabolicDatum::make(Family::B, 3),
                  ParabolicDatum::make(Family::C, 3), ParabolicDatum::make(Family::D, 4)}) {
    CAPTURE(pd.tag());
    RelationTable t = derive_table(pd, opts());
    YBuilder yb(t.pd);
    const RootSystem& rs = t.pd.rs();
    for (int j = 0; j < rs.rank(); ++j)
      for (int g = 0; g < t.k(); ++g) {
        const Weight nu = t.pd.roots()[g] - rs.simple(j);
        if (!is_nonneg(nu)) continue;
        FreeElem expect;
        const int tg = t.down(j, g);
        if (t.rprime[j][g]) {
          REQUIRE(tg != -1);
          expect = tg == RelationTable::kUnit ? FreeElem::one() : yb.y(tg);
          expect *= *t.rprime[j][g];
        }
        if (tg == RelationTable::kUnit) {
          CHECK(rprime_free(rs, j, yb.y(g)) == expect);
          continue;
        }
        CHECK(free_zero(rs, rprime_free(rs, j, yb.y(g)) - expect, nu));
      }
    for (int i : t.pd.levi())
      for (int g = 0; g < t.k(); ++g) {
        FreeElem expect;
        if (t.adf[i][g]) expect = yb.y(t.up(i, g)) * *t.adf[i][g];
        CHECK(free_zero(rs, ad_f_free(rs, i, yb.y(g)) - expect, t.pd.roots()[g] + rs.simple(i)));
      }
    // the recipe generators: ad(F_i) Y_from = Y_g / c
    for (int g = 1; g < t.k(); ++g) {
      const YRecipe& rc = t.recipes[g];
      REQUIRE(t.adf[rc.vertex][rc.from]);
      CHECK(*t.adf[rc.vertex][rc.from] == rc.c.inverse());
    }
    for (const auto& [key, terms] : t.rules) {
      auto [b, a] = key;
      FreeElem x = yb.y(b) * yb.y(a);
      for (const auto& tm : terms) x -= (yb.y(tm.u) * yb.y(tm.v)) * tm.c;
      CHECK(free_zero(rs, x, t.pd.roots()[a] + t.pd.roots()[b]));
    }
  }
}

TEST_CASE("derivation is seed independent and deterministic") {
  auto pd = ParabolicDatum::make(Family::C, 3);
  RelationTable t1 = derive_table(pd, opts(1));
  RelationTable t2 = derive_table(pd, opts(77));
  RelationTable t3 = derive_table(pd, opts(1, VerifyLevel::Probabilistic));
  CHECK(t1.rules == t2.rules);
  CHECK(t1.rprime == t2.rprime);
  CHECK(t1.adf == t2.adf);
  CHECK(t1.rules == t3.rules);
  CHECK(t1.serialize() == derive_table(pd, opts(1)).serialize());
}

TEST_CASE("cache text round trip and integrity") {
  auto pd = ParabolicDatum::make(Family::B, 3);
  RelationTable t = derive_table(pd, opts(3));
  const std::string text = t.serialize();
  RelationTable back = RelationTable::parse(text);
  CHECK(back.serialize() == text);
  std::string tampered = text;
  auto pos = tampered.find("seed 3");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 6, "seed 4");
  CHECK_THROWS(RelationTable::parse(tampered));
  CHECK_THROWS(RelationTable::parse("qbf-relations 1\ncode x\n"));
  CHECK(default_level(ParabolicDatum::make(Family::D, 6, 5)) == VerifyLevel::Probabilistic);
  CHECK(default_level(pd) == VerifyLevel::RankComplete);
}

TEST_CASE("budget expiry") {
  DeriveOptions o = opts();
  o.deadline = std::chrono::steady_clock::now();
  CHECK_THROWS_AS(derive_table(ParabolicDatum::make(Family::A, 5), o), DerivationError);
}
