#pragma once

// Straightening relations and generator action tables for U_q(n_I^-),
// derived from the Drinfeld pairing and never typed in by hand.
//
// Elements are handled as combinations of words in "atoms": the generators
// Y_0 .. Y_{k-1} (convex order) and the letters F_v, stored as atom k + v.
// The reduced pairing of such a word with an E-word only needs
// r'_j(Y_g), so every derived entry feeds the pairing used to derive the
// next one.  Derivation order: r' by height, then ad(F_i), then pair rules.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qbf/freealg.hpp"
#include "qbf/roots.hpp"
#include "qbf/scalars.hpp"

namespace qbf {

inline constexpr const char* kCodeVersion = "qbf-0.3";

enum class VerifyLevel { Probabilistic, RankComplete };
std::string level_name(VerifyLevel v);  // "probabilistic" / "rank_complete"
VerifyLevel parse_level(std::string_view s);
// rank_complete unless some degree-2 weight space is too large to certify
VerifyLevel default_level(const ParabolicDatum& pd);

class DerivationError : public std::runtime_error {
 public:
  enum class Kind { InconsistentSystem, RankDeficient, NonProportional, Budget };
  DerivationError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct DeriveOptions {
  VerifyLevel level = VerifyLevel::RankComplete;
  std::uint64_t seed = 1;
  int trials = 32;  // extra words per check in probabilistic mode
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct RuleTerm {
  int u = 0, v = 0;  // c Y_u Y_v with u <= v
  QScalar c;
  friend bool operator==(const RuleTerm&, const RuleTerm&) = default;
};

using AtomWord = std::vector<std::uint8_t>;
using AtomCombo = std::vector<std::pair<AtomWord, QScalar>>;

struct RelationTable {
  static constexpr int kUnit = -2;  // r'_{i0}(Y_{a_i0}) = 1

  ParabolicDatum pd;
  std::vector<YRecipe> recipes;
  // rprime[j][g] = s with r'_j(Y_g) = s Y_{g - a_j}; nullopt means zero
  std::vector<std::vector<std::optional<QScalar>>> rprime;
  // adf[i][g] = s with ad(F_i) Y_g = s Y_{g + a_i}; rows exist for i in I
  std::vector<std::vector<std::optional<QScalar>>> adf;
  // (b, a) with b > a: Y_b Y_a = sum c Y_u Y_v
  std::map<std::pair<int, int>, std::vector<RuleTerm>> rules;

  VerifyLevel level = VerifyLevel::RankComplete;
  std::uint64_t seed = 1;
  int trials = 32;
  std::uint64_t words_checked = 0;

  explicit RelationTable(ParabolicDatum p) : pd(std::move(p)) {}

  int k() const noexcept { return pd.size(); }
  // Target of r'_j on Y_g: generator index, kUnit, or -1 (no such weight).
  int down(int j, int g) const;
  int up(int i, int g) const;  // index of beta_g + a_i, or -1
  bool in_levi(int i) const noexcept { return i != pd.i0(); }

  // Y_g written in atoms through the ad(F_i) recipe, one level deep.
  AtomCombo y_atoms(int g) const;

  std::string header_hash() const;
  std::string serialize() const;
  static RelationTable parse(std::string_view text);
};

RelationTable derive_table(const ParabolicDatum& pd, const DeriveOptions& opt);

// Reduced pairing <<x, e>> of an atom combination with an E-word, using the
// r' entries currently in the table.
QScalar atom_pairing(const RelationTable& t, const AtomCombo& x, const Word& e);
std::uint64_t atom_pairing_mod(const RelationTable& t, const AtomCombo& x, const Word& e, std::uint64_t at);

// E-word read off a random walk of nonzero r'-peels of a term of x; such
// words tend to pair nontrivially with x.
Word peel_word(const RelationTable& t, const AtomCombo& x, std::mt19937_64& rng);

// E-words of weight mu whose pairing matrix against U_q(n^-)_{-mu} has rank
// equal to the Kostant partition number, found by seeded sampling and a
// mod-p rank certificate.
std::vector<Word> separating_words(const RootSystem& rs, const Weight& mu, std::uint64_t seed,
                                   const std::optional<std::chrono::steady_clock::time_point>& deadline = {});

// Read / write a table in the cache directory; load refuses a file whose
// header hash does not match the requested configuration.
std::string cache_filename(const ParabolicDatum& pd, const DeriveOptions& opt);
std::optional<RelationTable> load_cached(const std::string& dir, const ParabolicDatum& pd, const DeriveOptions& opt);
void store_cached(const std::string& dir, const RelationTable& t);

}  // namespace qbf
