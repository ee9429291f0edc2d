#include "qbf/relations.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "qbf/linalg.hpp"

namespace qbf {

using Clock = std::chrono::steady_clock;

std::string level_name(VerifyLevel v) { return v == VerifyLevel::RankComplete ? "rank_complete" : "probabilistic"; }

VerifyLevel parse_level(std::string_view s) {
  if (s == "rank_complete" || s == "rank-complete") return VerifyLevel::RankComplete;
  if (s == "probabilistic") return VerifyLevel::Probabilistic;
  throw std::invalid_argument("unknown verification level: " + std::string(s));
}

VerifyLevel default_level(const ParabolicDatum& pd) {
  // Certification cost grows with the Kostant numbers of degree-2 weights.
  constexpr std::uint64_t kLimit = 2000;
  for (int a = 0; a < pd.size(); ++a)
    for (int b = a; b < pd.size(); ++b)
      if (kostant_partitions(pd.rs(), pd.roots()[a] + pd.roots()[b]) > kLimit) return VerifyLevel::Probabilistic;
  return VerifyLevel::RankComplete;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, const std::vector<std::int64_t>& parts) {
  std::uint64_t h = splitmix(seed);
  for (auto p : parts) h = splitmix(h ^ static_cast<std::uint64_t>(p));
  return h;
}

std::uint64_t weight_key(const Weight& w) {
  std::uint64_t h = 1469598103934665603ULL;
  for (int c : w) h = splitmix(h ^ static_cast<std::uint64_t>(c + 1000));
  return h;
}

void check_deadline(const std::optional<Clock::time_point>& d, const std::string& phase) {
  if (d && Clock::now() > *d) throw DerivationError(DerivationError::Kind::Budget, "time budget exceeded during " + phase);
}

Word letters_of(const Weight& mu) {
  Word w;
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (int c = 0; c < mu[i]; ++c) w.push_back(static_cast<std::uint8_t>(i));
  return w;
}

std::string weight_str(const Weight& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Shared per-table data for peeling atoms.
struct AtomInfo {
  int k = 0, n = 0;
  std::vector<std::vector<int>> gram;    // [j][atom] = (a_j, wt atom)
  std::vector<std::vector<int>> target;  // [j][atom]: next atom, -1 removal, -3 zero
  std::vector<Weight> wt;

  explicit AtomInfo(const RelationTable& t) : k(t.k()), n(t.pd.rs().rank()) {
    const RootSystem& rs = t.pd.rs();
    wt.resize(static_cast<std::size_t>(k + n));
    for (int g = 0; g < k; ++g) wt[g] = t.pd.roots()[g];
    for (int v = 0; v < n; ++v) wt[k + v] = rs.simple(v);
    gram.assign(n, std::vector<int>(k + n));
    target.assign(n, std::vector<int>(k + n, -3));
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < k + n; ++a) {
        gram[j][a] = rs.pair(rs.simple(j), wt[a]);
        if (a >= k) {
          if (a - k == j) target[j][a] = -1;
        } else {
          int d = t.down(j, a);
          if (d == RelationTable::kUnit) target[j][a] = -1;
          else if (d >= 0) target[j][a] = d;
        }
      }
  }

  Weight weight(const AtomWord& w) const {
    Weight s(static_cast<std::size_t>(n), 0);
    for (auto a : w)
      for (int i = 0; i < n; ++i) s[i] += wt[a][i];
    return s;
  }
};

struct ExactRing {
  using T = QScalar;
  const RelationTable& t;
  int k;
  T zero() const { return {}; }
  T one() const { return QScalar(1); }
  static bool is_zero(const T& x) { return x.is_zero(); }
  T qpow(int e) const { return QScalar::q_pow(e); }
  // r'_j coefficient on atom a; false when r'_j kills it
  bool coef(int j, int a, T& out) const {
    if (a >= k) {
      if (a - k != j) return false;
      out = QScalar(1);
      return true;
    }
    const auto& s = t.rprime[j][a];
    if (!s || s->is_zero()) return false;
    out = *s;
    return true;
  }
  T lift(const QScalar& c) const { return c; }
  static void add_to(T& acc, const T& c, const T& v, const T& qp) { acc += c * qp * v; }
};

struct ModRing {
  using T = std::uint64_t;
  const RelationTable& t;
  int k;
  std::uint64_t x;
  mutable std::unordered_map<int, std::uint64_t> cache;
  mutable std::unordered_map<int, std::uint64_t> pw;
  T zero() const { return 0; }
  T one() const { return 1; }
  static bool is_zero(T v) { return v == 0; }
  T qpow(int e) const {
    auto it = pw.find(e);
    if (it != pw.end()) return it->second;
    return pw[e] = modp::ipow(x, e);
  }
  bool coef(int j, int a, T& out) const {
    if (a >= k) {
      if (a - k != j) return false;
      out = 1;
      return true;
    }
    const auto& s = t.rprime[j][a];
    if (!s || s->is_zero()) return false;
    const int key = j * 4096 + a;
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, s->eval_mod(x, modp::kPrime)).first;
    out = it->second;
    return true;
  }
  T lift(const QScalar& c) const { return c.eval_mod(x, modp::kPrime); }
  static void add_to(T& acc, T c, T v, T qp) { acc = modp::add(acc, modp::mul(modp::mul(c, qp), v)); }
};

template <class Ring>
class AtomDP {
 public:
  using T = typename Ring::T;
  AtomDP(const AtomInfo& info, const Ring& ring, const Word& e) : info_(info), ring_(ring), e_(e) {}

  T value(const AtomWord& w) {
    if (info_.weight(w) != word_weight(e_, info_.n)) return ring_.zero();
    return rec(w, e_.size());
  }

 private:
  T rec(const AtomWord& w, std::size_t len) {
    if (w.empty()) return len == 0 ? ring_.one() : ring_.zero();
    if (len == 0) return ring_.zero();
    std::string key;
    key.reserve(w.size() + 1);
    key.push_back(static_cast<char>(len));
    key.append(w.begin(), w.end());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const int j = e_[len - 1];
    T acc = ring_.zero();
    int suffix = 0;
    for (std::size_t p = w.size(); p-- > 0;) {
      const int a = w[p];
      T c;
      if (info_.target[j][a] != -3 && ring_.coef(j, a, c)) {
        AtomWord nw = w;
        if (info_.target[j][a] == -1)
          nw.erase(nw.begin() + static_cast<std::ptrdiff_t>(p));
        else
          nw[p] = static_cast<std::uint8_t>(info_.target[j][a]);
        T v = rec(nw, len - 1);
        if (!Ring::is_zero(v)) Ring::add_to(acc, c, v, ring_.qpow(suffix));
      }
      suffix += info_.gram[j][a];
    }
    memo_.emplace(std::move(key), acc);
    return acc;
  }

  const AtomInfo& info_;
  const Ring& ring_;
  const Word& e_;
  std::unordered_map<std::string, T> memo_;
};

template <class Ring>
typename Ring::T pair_combo(const AtomInfo& info, const Ring& ring, const AtomCombo& x, const Word& e) {
  AtomDP<Ring> dp(info, ring, e);
  typename Ring::T acc = ring.zero();
  for (const auto& [w, c] : x) {
    auto v = dp.value(w);
    if (!Ring::is_zero(v)) Ring::add_to(acc, ring.lift(c), v, ring.one());
  }
  return acc;
}

AtomCombo scaled(AtomCombo x, const QScalar& c) {
  for (auto& [w, v] : x) v *= c;
  return x;
}

AtomCombo minus(AtomCombo a, const AtomCombo& b) {
  for (const auto& [w, v] : b) a.emplace_back(w, -v);
  return a;
}

// Random walk through nonzero r'-peels of a random term of x; the letters
// peeled, reversed, form an E-word that tends to pair nontrivially.
Word valid_path(const AtomInfo& info, const RelationTable& t, const AtomCombo& x, std::mt19937_64& rng,
                int first = -1) {
  if (x.empty()) return {};
  AtomWord w = x[rng() % x.size()].first;
  Word rec;
  while (!w.empty()) {
    std::vector<std::pair<int, std::size_t>> opts;
    for (int j = 0; j < info.n; ++j) {
      if (rec.empty() && first >= 0 && j != first) continue;
      for (std::size_t p = 0; p < w.size(); ++p) {
        const int a = w[p];
        if (info.target[j][a] == -3) continue;
        if (a < info.k && (!t.rprime[j][a] || t.rprime[j][a]->is_zero())) continue;
        opts.emplace_back(j, p);
      }
    }
    if (opts.empty()) {
      // dead end: finish with the remaining letters in random order
      Word rest = letters_of(info.weight(w));
      std::shuffle(rest.begin(), rest.end(), rng);
      rec.insert(rec.end(), rest.begin(), rest.end());
      break;
    }
    auto [j, p] = opts[rng() % opts.size()];
    rec.push_back(static_cast<std::uint8_t>(j));
    const int tg = info.target[j][w[p]];
    if (tg == -1)
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(p));
    else
      w[p] = static_cast<std::uint8_t>(tg);
  }
  return Word(rec.rbegin(), rec.rend());
}

Word uniform_word(const Weight& mu, std::mt19937_64& rng) {
  Word w = letters_of(mu);
  std::shuffle(w.begin(), w.end(), rng);
  return w;
}

class Deriver {
 public:
  Deriver(RelationTable& t, const DeriveOptions& opt) : t_(t), opt_(opt) {}

  void run() {
    derive_rprime();
    derive_adf();
    derive_rules();
  }

 private:
  RelationTable& t_;
  const DeriveOptions& opt_;
  std::map<Weight, std::vector<Word>> certified_;

  const RootSystem& rs() const { return t_.pd.rs(); }

  std::mt19937_64 rng_for(std::vector<std::int64_t> parts) { return std::mt19937_64(mix(opt_.seed, parts)); }

  std::uint64_t eval_point(std::vector<std::int64_t> parts) {
    parts.push_back(0x51ed);
    return 2 + mix(opt_.seed, parts) % (modp::kPrime - 4);
  }

  const std::vector<Word>& certified(const Weight& mu) {
    auto it = certified_.find(mu);
    if (it != certified_.end()) return it->second;
    auto words = separating_words(rs(), mu, mix(opt_.seed, {static_cast<std::int64_t>(weight_key(mu))}), opt_.deadline);
    return certified_.emplace(mu, std::move(words)).first->second;
  }

  // Words on which a vanishing pairing is checked.  `hint` feeds the
  // valid-path sampler in probabilistic mode.
  std::vector<Word> check_words(const Weight& mu, const std::vector<const AtomCombo*>& hints, std::mt19937_64& rng,
                                int first = -1) {
    if (opt_.level == VerifyLevel::RankComplete) return certified(mu);
    AtomInfo info(t_);
    std::set<Word> out;
    const int want = std::max(opt_.trials, 1);
    for (int attempt = 0; static_cast<int>(out.size()) < want && attempt < 8 * want; ++attempt) {
      Word w;
      if (attempt % 2 == 0 && !hints.empty()) {
        const AtomCombo* h = hints[rng() % hints.size()];
        w = valid_path(info, t_, *h, rng, first);
        if (first >= 0 && !w.empty()) w.pop_back();
      } else {
        w = uniform_word(mu, rng);
      }
      if (word_weight(w, rs().rank()) == mu) out.insert(w);
    }
    return {out.begin(), out.end()};
  }

  // Finds s with <<x, e j>> = s <<y, e>> on all check words (y may be empty,
  // meaning s = 0 is required).  Returns nullopt for zero.
  std::optional<QScalar> proportional(const AtomCombo& x, int last, const AtomCombo& y, const Weight& nu,
                                      std::mt19937_64& rng, const std::string& what) {
    AtomInfo info(t_);
    ExactRing ring{t_, t_.k()};
    auto words = check_words(nu, y.empty() ? std::vector<const AtomCombo*>{&x} : std::vector<const AtomCombo*>{&y, &x},
                             rng, y.empty() ? last : -1);
    std::optional<QScalar> s;
    for (const Word& e : words) {
      check_deadline(opt_.deadline, "action tables");
      Word ej = e;
      if (last >= 0) ej.push_back(static_cast<std::uint8_t>(last));
      QScalar lhs = pair_combo(info, ring, x, ej);
      QScalar rhs = y.empty() ? QScalar() : pair_combo(info, ring, y, e);
      ++t_.words_checked;
      if (!s) {
        if (rhs.is_zero()) {
          if (!lhs.is_zero()) throw DerivationError(DerivationError::Kind::NonProportional, what + ": image outside the expected line");
          continue;
        }
        s = lhs / rhs;
        continue;
      }
      if (lhs != *s * rhs) throw DerivationError(DerivationError::Kind::NonProportional, what + ": ratios disagree");
    }
    if (!y.empty() && !s) {
      // every word paired y to zero: only possible if the word set is not separating
      throw DerivationError(DerivationError::Kind::RankDeficient, what + ": no word detects the target generator");
    }
    if (s && s->is_zero()) return std::nullopt;
    return s;
  }

  void derive_rprime() {
    const int k = t_.k(), n = rs().rank(), i0 = t_.pd.i0();
    t_.rprime.assign(n, std::vector<std::optional<QScalar>>(k));
    std::vector<int> by_height(k);
    for (int g = 0; g < k; ++g) by_height[g] = g;
    std::stable_sort(by_height.begin(), by_height.end(), [&](int a, int b) {
      return rs().height(t_.pd.roots()[a]) < rs().height(t_.pd.roots()[b]);
    });
    for (int g : by_height) {
      const AtomCombo yg = t_.y_atoms(g);
      for (int j = 0; j < n; ++j) {
        const Weight nu = t_.pd.roots()[g] - rs().simple(j);
        if (!is_nonneg(nu)) continue;
        auto rng = rng_for({1, g, j});
        const std::string what = "r'_" + std::to_string(j + 1) + "(Y_" + std::to_string(g + 1) + ")";
        if (j == i0 && g == 0) {
          t_.rprime[j][g] = QScalar(1);  // r'_i(F_i) = 1
          continue;
        }
        const int tgt = t_.down(j, g);
        AtomCombo y;
        if (tgt >= 0) y = {{AtomWord{static_cast<std::uint8_t>(tgt)}, QScalar(1)}};
        auto s = proportional(yg, j, y, nu, rng, what);
        if (j == i0 && s)
          throw DerivationError(DerivationError::Kind::NonProportional, what + " should vanish");
        t_.rprime[j][g] = s;
      }
    }
  }

  void derive_adf() {
    const int k = t_.k(), n = rs().rank();
    t_.adf.assign(n, std::vector<std::optional<QScalar>>(k));
    for (int i : t_.pd.levi()) {
      for (int g = 0; g < k; ++g) {
        const Weight nu = t_.pd.roots()[g] + rs().simple(i);
        auto rng = rng_for({2, g, i});
        const QScalar tw = QScalar::q_pow(-rs().pair(rs().simple(i), t_.pd.roots()[g]));
        AtomCombo x;
        x.emplace_back(AtomWord{static_cast<std::uint8_t>(k + i), static_cast<std::uint8_t>(g)}, QScalar(1));
        x.emplace_back(AtomWord{static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(k + i)}, -tw);
        const int tgt = t_.up(i, g);
        AtomCombo y;
        if (tgt >= 0) y = {{AtomWord{static_cast<std::uint8_t>(tgt)}, QScalar(1)}};
        const std::string what = "ad(F_" + std::to_string(i + 1) + ")(Y_" + std::to_string(g + 1) + ")";
        t_.adf[i][g] = proportional(x, -1, y, nu, rng, what);
      }
    }
  }

  void derive_rules() {
    const int k = t_.k();
    AtomInfo info(t_);
    ExactRing exact{t_, k};
    for (int b = 0; b < k; ++b)
      for (int a = 0; a < b; ++a) {
        check_deadline(opt_.deadline, "pair rules");
        const Weight mu = t_.pd.roots()[a] + t_.pd.roots()[b];
        std::vector<std::pair<int, int>> cand;
        for (int u = a; u <= b; ++u)
          for (int v = u; v <= b; ++v)
            if (t_.pd.roots()[u] + t_.pd.roots()[v] == mu) cand.emplace_back(u, v);
        std::vector<AtomCombo> cx;
        for (auto [u, v] : cand)
          cx.push_back({{AtomWord{static_cast<std::uint8_t>(u), static_cast<std::uint8_t>(v)}, QScalar(1)}});
        const AtomCombo lhs{{AtomWord{static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(a)}, QScalar(1)}};
        auto rng = rng_for({3, b, a});
        ModRing mod{t_, k, eval_point({3, b, a}), {}, {}};

        // grow a word set until the candidate columns are independent mod p
        const std::size_t K = cand.size();
        modp::Basis basis(K);
        std::vector<Word> chosen;
        std::set<Word> seen;
        const std::size_t limit = 64 * K + 256;
        for (std::size_t attempt = 0; basis.rank() < K; ++attempt) {
          if (attempt > limit)
            throw DerivationError(DerivationError::Kind::RankDeficient,
                                  "pair (" + std::to_string(b + 1) + "," + std::to_string(a + 1) + "): rank " +
                                      std::to_string(basis.rank()) + " < " + std::to_string(K) + " after " +
                                      std::to_string(attempt) + " words");
          Word e;
          switch (attempt % 3) {
            case 0: e = valid_path(info, t_, lhs, rng); break;
            case 1: e = valid_path(info, t_, cx[rng() % K], rng); break;
            default: e = uniform_word(mu, rng); break;
          }
          if (!seen.insert(e).second) continue;
          std::vector<std::uint64_t> row(K);
          for (std::size_t c = 0; c < K; ++c) row[c] = pair_combo(info, mod, cx[c], e);
          if (basis.insert(row)) chosen.push_back(e);
        }
        QMatrix A(K, QVector(K));
        QVector rhs(K);
        for (std::size_t r = 0; r < K; ++r) {
          for (std::size_t c = 0; c < K; ++c) A[r][c] = pair_combo(info, exact, cx[c], chosen[r]);
          rhs[r] = pair_combo(info, exact, lhs, chosen[r]);
        }
        bool unique = false;
        auto sol = solve(A, rhs, K, &unique);
        if (!sol || !unique)
          throw DerivationError(DerivationError::Kind::InconsistentSystem,
                                "pair (" + std::to_string(b + 1) + "," + std::to_string(a + 1) + "): no unique solution");
        std::vector<RuleTerm> rule;
        AtomCombo residual = lhs;
        for (std::size_t c = 0; c < K; ++c) {
          if ((*sol)[c].is_zero()) continue;
          rule.push_back(RuleTerm{cand[c].first, cand[c].second, (*sol)[c]});
          residual = minus(residual, scaled(cx[c], (*sol)[c]));
        }
        if (rule.empty() || rule.front().u != a || rule.front().v != b)
          throw DerivationError(DerivationError::Kind::InconsistentSystem,
                                "pair (" + std::to_string(b + 1) + "," + std::to_string(a + 1) + "): leading swap term vanished");
        std::vector<const AtomCombo*> hints{&lhs};
        for (const auto& c : cx) hints.push_back(&c);
        for (const Word& e : check_words(mu, hints, rng)) {
          check_deadline(opt_.deadline, "pair rules");
          ++t_.words_checked;
          if (!pair_combo(info, exact, residual, e).is_zero())
            throw DerivationError(DerivationError::Kind::InconsistentSystem,
                                  "pair (" + std::to_string(b + 1) + "," + std::to_string(a + 1) + "): residual pairs nontrivially");
        }
        t_.rules.emplace(std::make_pair(b, a), std::move(rule));
      }
  }
};

}  // namespace

int RelationTable::down(int j, int g) const {
  if (j == pd.i0() && g == 0) return kUnit;
  return pd.index_of(pd.roots()[g] - pd.rs().simple(j));
}

int RelationTable::up(int i, int g) const { return pd.index_of(pd.roots()[g] + pd.rs().simple(i)); }

AtomCombo RelationTable::y_atoms(int g) const {
  const YRecipe& rc = recipes[g];
  if (rc.vertex < 0) return {{AtomWord{static_cast<std::uint8_t>(g)}, QScalar(1)}};
  const auto f = static_cast<std::uint8_t>(k() + rc.vertex);
  const auto y = static_cast<std::uint8_t>(rc.from);
  const QScalar tw = QScalar::q_pow(-pd.rs().pair(pd.rs().simple(rc.vertex), pd.roots()[rc.from]));
  return {{AtomWord{f, y}, rc.c}, {AtomWord{y, f}, -(rc.c * tw)}};
}

QScalar atom_pairing(const RelationTable& t, const AtomCombo& x, const Word& e) {
  AtomInfo info(t);
  return pair_combo(info, ExactRing{t, t.k()}, x, e);
}

std::uint64_t atom_pairing_mod(const RelationTable& t, const AtomCombo& x, const Word& e, std::uint64_t at) {
  AtomInfo info(t);
  ModRing ring{t, t.k(), at, {}, {}};
  return pair_combo(info, ring, x, e);
}

Word peel_word(const RelationTable& t, const AtomCombo& x, std::mt19937_64& rng) {
  AtomInfo info(t);
  return valid_path(info, t, x, rng);
}

std::vector<Word> separating_words(const RootSystem& rs, const Weight& mu, std::uint64_t seed,
                                   const std::optional<Clock::time_point>& deadline) {
  const std::uint64_t P = kostant_partitions(rs, mu);
  if (P == 0) return {};
  std::mt19937_64 rng(splitmix(seed));
  const std::uint64_t x = 2 + rng() % (modp::kPrime - 4);
  // Good words already give a nonsingular square block in every case tried;
  // random words only pad the rows and columns when they do not.
  std::vector<Word> rows = good_words(rs, mu);
  std::vector<Word> cands = rows;
  std::set<Word> in_rows(rows.begin(), rows.end());
  std::set<Word> in_cands(cands.begin(), cands.end());
  const std::size_t cap = 64 * P + 256;
  for (int round = 0;; ++round) {
    check_deadline(deadline, "word certification");
    modp::Basis basis(rows.size());
    std::vector<Word> words;
    for (const Word& e : cands) {
      std::vector<std::uint64_t> col(rows.size());
      for (std::size_t r = 0; r < rows.size(); ++r) col[r] = word_pairing_mod(rs, rows[r], e, x, modp::kPrime);
      if (basis.insert(std::move(col))) words.push_back(e);
      if (basis.rank() == P) return words;
    }
    if (rows.size() > cap)
      throw DerivationError(DerivationError::Kind::RankDeficient,
                            "separating words: rank " + std::to_string(basis.rank()) + " < " + std::to_string(P) +
                                " at weight (" + weight_str(mu) + ")");
    for (std::size_t t = 0; t < P + 8; ++t) {
      Word w = uniform_word(mu, rng);
      if (in_rows.insert(w).second) rows.push_back(w);
      w = uniform_word(mu, rng);
      if (in_cands.insert(w).second) cands.push_back(w);
    }
  }
}

RelationTable derive_table(const ParabolicDatum& pd, const DeriveOptions& opt) {
  RelationTable t(pd);
  t.recipes = y_recipes(t.pd);
  t.level = opt.level;
  t.seed = opt.seed;
  t.trials = opt.trials;
  Deriver(t, opt).run();
  return t;
}

namespace {

std::string hash_for(const ParabolicDatum& pd, VerifyLevel level, std::uint64_t seed, int trials) {
  std::ostringstream os;
  os << kCodeVersion << '|' << family_name(pd.rs().family()) << '|' << pd.rs().rank() << '|' << pd.i0() + 1 << '|'
     << seed << '|' << level_name(level) << '|' << trials;
  for (const auto& r : pd.roots()) os << '|' << weight_str(r);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
  return buf;
}

[[noreturn]] void bad_cache(const std::string& why) { throw std::runtime_error("relation cache: " + why); }

}  // namespace

std::string RelationTable::header_hash() const { return hash_for(pd, level, seed, trials); }

std::string RelationTable::serialize() const {
  std::ostringstream os;
  os << "qbf-relations 1\n";
  os << "code " << kCodeVersion << '\n';
  os << "family " << family_name(pd.rs().family()) << '\n';
  os << "rank " << pd.rs().rank() << '\n';
  os << "i0 " << pd.i0() + 1 << '\n';
  os << "seed " << seed << '\n';
  os << "level " << level_name(level) << '\n';
  os << "trials " << trials << '\n';
  os << "hash " << header_hash() << '\n';
  os << "words_checked " << words_checked << '\n';
  for (int g = 0; g < k(); ++g) os << "order " << g + 1 << ' ' << weight_str(pd.roots()[g]) << '\n';
  for (int g = 0; g < k(); ++g) {
    const YRecipe& rc = recipes[g];
    os << "recipe " << g + 1 << ' ' << rc.vertex + 1 << ' ' << rc.from + 1 << " = " << rc.c.str() << '\n';
  }
  for (std::size_t j = 0; j < rprime.size(); ++j)
    for (std::size_t g = 0; g < rprime[j].size(); ++g)
      if (rprime[j][g]) os << "rprime " << j + 1 << ' ' << g + 1 << " = " << rprime[j][g]->str() << '\n';
  for (std::size_t i = 0; i < adf.size(); ++i)
    for (std::size_t g = 0; g < adf[i].size(); ++g)
      if (adf[i][g]) os << "adf " << i + 1 << ' ' << g + 1 << " = " << adf[i][g]->str() << '\n';
  for (const auto& [key, terms] : rules) {
    os << "rule " << key.first + 1 << ' ' << key.second + 1 << " =";
    for (std::size_t t = 0; t < terms.size(); ++t)
      os << (t ? " ;" : "") << ' ' << terms[t].u + 1 << ' ' << terms[t].v + 1 << " : " << terms[t].c.str();
    os << '\n';
  }
  os << "end\n";
  return os.str();
}

RelationTable RelationTable::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::map<std::string, std::string> head;
  std::vector<std::string> body;
  if (!std::getline(in, line) || line != "qbf-relations 1") bad_cache("bad magic line");
  bool ended = false;
  while (std::getline(in, line)) {
    if (line == "end") {
      ended = true;
      break;
    }
    const auto sp = line.find(' ');
    if (sp == std::string::npos) bad_cache("malformed line: " + line);
    const std::string key = line.substr(0, sp);
    if (key == "order" || key == "recipe" || key == "rprime" || key == "adf" || key == "rule")
      body.push_back(line);
    else
      head[key] = line.substr(sp + 1);
  }
  if (!ended) bad_cache("truncated file");
  for (const char* k : {"code", "family", "rank", "i0", "seed", "level", "trials", "hash"})
    if (!head.count(k)) bad_cache(std::string("missing header field ") + k);
  if (head["code"] != kCodeVersion) bad_cache("written by " + head["code"]);
  auto pd = ParabolicDatum::make(parse_family(head["family"]), std::stoi(head["rank"]), std::stoi(head["i0"]) - 1);
  RelationTable t(pd);
  t.seed = std::stoull(head["seed"]);
  t.level = parse_level(head["level"]);
  t.trials = std::stoi(head["trials"]);
  if (head.count("words_checked")) t.words_checked = std::stoull(head["words_checked"]);
  if (head["hash"] != t.header_hash()) bad_cache("header hash mismatch");
  const int n = pd.rs().rank(), k = pd.size();
  t.recipes.assign(k, YRecipe{});
  t.rprime.assign(n, std::vector<std::optional<QScalar>>(k));
  t.adf.assign(n, std::vector<std::optional<QScalar>>(k));
  auto split_eq = [](const std::string& l) {
    const auto eq = l.find(" = ");
    if (eq == std::string::npos) bad_cache("missing '=': " + l);
    return std::make_pair(l.substr(0, eq), l.substr(eq + 3));
  };
  auto index = [](int v, int hi, const std::string& l) {
    if (v < 1 || v > hi) bad_cache("index out of range: " + l);
    return v - 1;
  };
  for (const auto& l : body) {
    std::istringstream ls(l);
    std::string key;
    ls >> key;
    if (key == "order") {
      int g;
      std::string w;
      ls >> g >> w;
      if (weight_str(pd.roots()[index(g, k, l)]) != w) bad_cache("convex order differs: " + l);
    } else if (key == "recipe") {
      auto [lhs, rhs] = split_eq(l);
      std::istringstream hs(lhs.substr(7));
      int g, v, f;
      hs >> g >> v >> f;
      YRecipe& rc = t.recipes[index(g, k, l)];
      rc.vertex = v - 1;
      rc.from = f - 1;
      rc.c = QScalar::parse(rhs);
    } else if (key == "rprime" || key == "adf") {
      auto [lhs, rhs] = split_eq(l);
      std::istringstream hs(lhs.substr(key.size() + 1));
      int j, g;
      hs >> j >> g;
      auto& tab = key == "rprime" ? t.rprime : t.adf;
      tab[index(j, n, l)][index(g, k, l)] = QScalar::parse(rhs);
    } else {
      auto [lhs, rhs] = split_eq(l);
      std::istringstream hs(lhs.substr(5));
      int b, a;
      hs >> b >> a;
      std::vector<RuleTerm> terms;
      std::size_t pos = 0;
      while (pos < rhs.size()) {
        auto semi = rhs.find(" ; ", pos);
        std::string part = rhs.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        pos = semi == std::string::npos ? rhs.size() : semi + 3;
        const auto colon = part.find(" : ");
        if (colon == std::string::npos) bad_cache("bad rule term: " + l);
        std::istringstream ts(part.substr(0, colon));
        int u, v;
        ts >> u >> v;
        terms.push_back(RuleTerm{index(u, k, l), index(v, k, l), QScalar::parse(part.substr(colon + 3))});
      }
      t.rules[{index(b, k, l), index(a, k, l)}] = std::move(terms);
    }
  }
  auto fresh = y_recipes(t.pd);
  for (int g = 0; g < k; ++g)
    if (fresh[g].vertex != t.recipes[g].vertex || fresh[g].from != t.recipes[g].from || fresh[g].c != t.recipes[g].c)
      bad_cache("generator recipe differs for Y_" + std::to_string(g + 1));
  return t;
}

std::string cache_filename(const ParabolicDatum& pd, const DeriveOptions& opt) {
  return pd.tag() + "_s" + std::to_string(opt.seed) + "_" + level_name(opt.level) + ".qbrt";
}

std::optional<RelationTable> load_cached(const std::string& dir, const ParabolicDatum& pd, const DeriveOptions& opt) {
  const auto path = std::filesystem::path(dir) / cache_filename(pd, opt);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  RelationTable t = RelationTable::parse(buf.str());
  if (t.header_hash() != hash_for(pd, opt.level, opt.seed, opt.trials)) return std::nullopt;
  return t;
}

void store_cached(const std::string& dir, const RelationTable& t) {
  std::filesystem::create_directories(dir);
  DeriveOptions o;
  o.level = t.level;
  o.seed = t.seed;
  o.trials = t.trials;
  const auto path = std::filesystem::path(dir) / cache_filename(t.pd, o);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << t.serialize();
    if (!out) throw std::runtime_error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qbf
