#pragma once

// Ordered PBW monomials in the generators Y_beta of U_q(n_I^-), normal forms
// through the derived straightening rules, the derivations r'_i, ad(E_i),
// ad(F_i), the operators tY_beta(d) and the bilinear form < , >.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "qbf/freealg.hpp"
#include "qbf/relations.hpp"
#include "qbf/scalars.hpp"

namespace qbf {

inline constexpr int kMaxGens = 31;
// Exponent of each generator in convex order; slot 31 is scratch for memo keys.
using Mono = std::array<std::uint8_t, kMaxGens + 1>;

struct MonoHash {
  std::size_t operator()(const Mono& m) const noexcept;
};

class PBWElem {
 public:
  using Map = std::unordered_map<Mono, QScalar, MonoHash>;

  PBWElem() = default;
  static PBWElem monomial(const Mono& m, const QScalar& c = QScalar(1));

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Map& terms() const noexcept { return terms_; }
  QScalar coeff(const Mono& m) const;
  // Terms sorted by monomial, for deterministic output.
  std::vector<std::pair<Mono, QScalar>> sorted() const;

  void add_term(const Mono& m, const QScalar& c);
  void add_scaled(const PBWElem& o, const QScalar& c);
  PBWElem& operator+=(const PBWElem& o);
  PBWElem& operator-=(const PBWElem& o);
  PBWElem& operator*=(const QScalar& c);
  friend PBWElem operator+(PBWElem a, const PBWElem& b) { return a += b; }
  friend PBWElem operator-(PBWElem a, const PBWElem& b) { return a -= b; }
  friend PBWElem operator*(PBWElem a, const QScalar& c) { return a *= c; }
  friend bool operator==(const PBWElem& a, const PBWElem& b) { return a.terms_ == b.terms_; }

 private:
  Map terms_;
};

class MissingRule : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class MemoLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::uint64_t checked = 0;
  void fail(std::string s) {
    ok = false;
    failures.push_back(std::move(s));
  }
};

class PBWAlgebra {
 public:
  explicit PBWAlgebra(const RelationTable& t);

  const RelationTable& table() const noexcept { return t_; }
  const ParabolicDatum& pd() const noexcept { return t_.pd; }
  int k() const noexcept { return t_.k(); }

  static Mono unit_mono() { return Mono{}; }
  Mono gen_mono(int g) const;
  PBWElem one() const { return PBWElem::monomial(unit_mono()); }
  PBWElem gen(int g) const { return PBWElem::monomial(gen_mono(g)); }

  int degree(const Mono& m) const;
  Weight weight(const Mono& m) const;  // positive: m lies in U_{-weight}
  std::vector<int> sequence(const Mono& m) const;  // generator indices, ascending
  std::string mono_str(const Mono& m) const;       // "Y1^2 Y3", "1"
  std::string str(const PBWElem& x) const;

  // Y-word with coefficient brought to normal form, leftmost first.
  PBWElem normal_form(const std::vector<int>& word, const QScalar& c = QScalar(1));
  PBWElem mul(const PBWElem& a, const PBWElem& b);
  PBWElem mul_gen(const PBWElem& a, int g);  // a * Y_g
  PBWElem pow(const PBWElem& a, int n);

  PBWElem rprime(int j, const PBWElem& x);
  PBWElem ad_e(int i, const PBWElem& x);
  PBWElem ad_f(int i, const PBWElem& x);

  PBWElem t_op(int g, const PBWElem& x);
  // tg(d) x: for each monomial of g the operator of its first factor acts first.
  PBWElem t_op_elem(const PBWElem& g, const PBWElem& x);
  QScalar bilinear(const PBWElem& f, const PBWElem& g);

  std::vector<Mono> weight_space_basis(const Weight& mu, int m) const;
  // Joint kernel of ad(E_i), i in I, on span(weight_space_basis(mu, m)).
  std::vector<PBWElem> hwv_solve(const Weight& mu, int m);
  // Monomial minimal in the lexicographic order of generator sequences.
  static Mono min_mono(const PBWElem& x, const PBWAlgebra& alg);

  // Image in the free algebra, through the ad-recursion generators.
  FreeElem to_free(const PBWElem& x, YBuilder& yb) const;

  CheckReport hilbert_check(int maxdeg, std::uint64_t seed);
  CheckReport confluence_check();

  // Memoized products and operator images; they only grow.
  std::size_t memo_entries() const;
  void clear_memos();
  // 0: unlimited; otherwise a new memo entry past the limit throws MemoLimitExceeded
  void set_memo_limit(std::size_t n) { memo_limit_ = n; }

 private:
  const PBWElem& mono_times_gen(const Mono& m, int g);
  const PBWElem& rprime_mono(int j, const Mono& m);
  const PBWElem& adf_mono(int i, const Mono& m);
  const PBWElem& t_op_mono(int g, const Mono& m);  // unscaled
  PBWElem s_op(int g, const PBWElem& x);
  PBWElem mono_times_seq(const Mono& m, const std::vector<int>& seq, std::size_t from);

  const RelationTable& t_;
  std::vector<std::vector<int>> gram_;  // [vertex][g] = (a_j, beta_g)
  std::vector<QScalar> scale_;
  std::size_t memo_limit_ = 0, memo_count_ = 0;
  void note_memo();          // tY_g(d) = scale_[g] * s_op(g)
  std::unordered_map<Mono, PBWElem, MonoHash> mul_memo_;
  std::vector<std::unordered_map<Mono, PBWElem, MonoHash>> rp_memo_, adf_memo_, t_memo_;
};

}  // namespace qbf
