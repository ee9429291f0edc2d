#pragma once

// Free algebra on the letters F_i and its Drinfeld pairing with E-words.
//
// FreeElem is the oracle representation of elements of U_q(n^-): a sparse
// combination of F-words.  Equality in U_q(n^-) is never decided here by
// rewriting; it is decided through the pairing, whose radical is exactly
// the Serre ideal.

#include <cstdint>
#include <map>
#include <vector>

#include "qbf/roots.hpp"
#include "qbf/scalars.hpp"

namespace qbf {

using Word = std::vector<std::uint8_t>;

class FreeElem {
 public:
  FreeElem() = default;
  static FreeElem one();
  static FreeElem letter(int i);
  static FreeElem word(const Word& w, const QScalar& c = QScalar(1));

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::map<Word, QScalar>& terms() const noexcept { return terms_; }
  QScalar coeff(const Word& w) const;
  // Weight of the first word (all words share it for homogeneous input).
  Weight weight(int rank) const;

  void add_term(const Word& w, const QScalar& c);
  FreeElem& operator+=(const FreeElem& o);
  FreeElem& operator-=(const FreeElem& o);
  FreeElem& operator*=(const QScalar& c);
  friend FreeElem operator+(FreeElem a, const FreeElem& b) { return a += b; }
  friend FreeElem operator-(FreeElem a, const FreeElem& b) { return a -= b; }
  friend FreeElem operator*(FreeElem a, const QScalar& c) { return a *= c; }
  friend FreeElem operator*(const FreeElem& a, const FreeElem& b);
  friend bool operator==(const FreeElem& a, const FreeElem& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Word, QScalar> terms_;
};

Weight word_weight(const Word& w, int rank);

// r'_i and r_i of Lemma-1.1 type: Leibniz rules with the q-twist taken from
// the suffix (r') or the prefix (r).
FreeElem rprime_free(const RootSystem& rs, int i, const FreeElem& y);
FreeElem r_free(const RootSystem& rs, int i, const FreeElem& y);

// ad(F_i) y = F_i y - q^{-(a_i, mu)} y F_i for y of weight -mu.
FreeElem ad_f_free(const RootSystem& rs, int i, const FreeElem& y);

// (F_i, E_i) = -1 / (q_i - q_i^{-1})
QScalar fe_pairing(const RootSystem& rs, int i);

// (y, E_{e1} ... E_{ek}) by peeling the last letter with r'.
QScalar pairing_eval(const RootSystem& rs, const FreeElem& y, const Word& eword);
// Same value, peeling the first letter with r.
QScalar pairing_eval_left(const RootSystem& rs, const FreeElem& y, const Word& eword);
// Pairing with the (F, E) factors removed: an element of Z[q, 1/q] for a
// single F-word.  pairing_eval = prod (F_e, E_e) * pairing_reduced.
QScalar pairing_reduced(const RootSystem& rs, const FreeElem& y, const Word& eword);

// Reduced pairing of a single F-word with an E-word evaluated mod p at q = x,
// via a dynamic program over the set of surviving positions.
std::uint64_t word_pairing_mod(const RootSystem& rs, const Word& fword, const Word& eword, std::uint64_t x,
                               std::uint64_t p);

// Good Lyndon words of the positive roots (letters ordered by vertex index):
// l(a_i) = i and l(g) = max l(g1) l(g2) over g = g1 + g2 with l(g1) < l(g2).
// Indexed like rs.positive_roots().
std::vector<Word> good_lyndon_words(const RootSystem& rs);
// One word per Kostant partition of mu: the good Lyndon words of the parts
// concatenated in decreasing lexicographic order.
std::vector<Word> good_words(const RootSystem& rs, const Weight& mu);

// Root vectors Y_beta by the ad(F_i)-recursion: Y_{a_i0} = F_i0 and
// Y_beta = c ad(F_i) Y_{beta - a_i} with i the smallest admissible vertex of
// I.  c = 1/(q + 1/q) when a long root is reached from a short one.
struct YRecipe {
  int vertex = -1;  // i, or -1 for beta = a_i0
  int from = -1;    // convex-order index of beta - a_i
  QScalar c = QScalar(1);
};

std::vector<YRecipe> y_recipes(const ParabolicDatum& pd);

class YBuilder {
 public:
  explicit YBuilder(const ParabolicDatum& pd);
  const FreeElem& y(int index);  // memoized
  const std::vector<YRecipe>& recipes() const noexcept { return recipes_; }

 private:
  const ParabolicDatum& pd_;
  std::vector<YRecipe> recipes_;
  std::map<int, FreeElem> memo_;
};

// <f, g> = (q^-1 - q)^{deg f} (f, tg) on homogeneous free elements; tg
// reverses words and swaps F for E.
QScalar form_free(const ParabolicDatum& pd, const FreeElem& f, const FreeElem& g);

}  // namespace qbf
