#include "qbf/freealg.hpp"

#include <algorithm>
#include <unordered_map>

namespace qbf {

FreeElem FreeElem::one() { return word(Word{}); }

FreeElem FreeElem::letter(int i) { return word(Word{static_cast<std::uint8_t>(i)}); }

FreeElem FreeElem::word(const Word& w, const QScalar& c) {
  FreeElem e;
  e.add_term(w, c);
  return e;
}

QScalar FreeElem::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? QScalar() : it->second;
}

Weight word_weight(const Word& w, int rank) {
  Weight wt(rank, 0);
  for (auto l : w) ++wt[l];
  return wt;
}

Weight FreeElem::weight(int rank) const {
  if (terms_.empty()) return Weight(rank, 0);
  return word_weight(terms_.begin()->first, rank);
}

void FreeElem::add_term(const Word& w, const QScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FreeElem& FreeElem::operator+=(const FreeElem& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

FreeElem& FreeElem::operator-=(const FreeElem& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

FreeElem& FreeElem::operator*=(const QScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

FreeElem operator*(const FreeElem& a, const FreeElem& b) {
  FreeElem r;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(w, ca * cb);
    }
  return r;
}

FreeElem rprime_free(const RootSystem& rs, int i, const FreeElem& y) {
  FreeElem out;
  for (const auto& [w, c] : y.terms()) {
    int suffix = 0;  // (a_i, weight of letters after p)
    for (std::size_t p = w.size(); p-- > 0;) {
      if (w[p] == i) {
        Word v = w;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(p));
        out.add_term(v, c * QScalar::q_pow(suffix));
      }
      suffix += rs.gram(i, w[p]);
    }
  }
  return out;
}

FreeElem r_free(const RootSystem& rs, int i, const FreeElem& y) {
  FreeElem out;
  for (const auto& [w, c] : y.terms()) {
    int prefix = 0;
    for (std::size_t p = 0; p < w.size(); ++p) {
      if (w[p] == i) {
        Word v = w;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(p));
        out.add_term(v, c * QScalar::q_pow(prefix));
      }
      prefix += rs.gram(i, w[p]);
    }
  }
  return out;
}

FreeElem ad_f_free(const RootSystem& rs, int i, const FreeElem& y) {
  if (y.is_zero()) return {};
  const Weight mu = y.weight(rs.rank());
  const FreeElem f = FreeElem::letter(i);
  return f * y - (y * f) * QScalar::q_pow(-rs.pair(rs.simple(i), mu));
}

QScalar fe_pairing(const RootSystem& rs, int i) {
  const int d = rs.d(i);
  return -(QScalar::q_pow(d) - QScalar::q_pow(-d)).inverse();
}

QScalar pairing_reduced(const RootSystem& rs, const FreeElem& y, const Word& eword) {
  const int n = rs.rank();
  if (y.is_zero()) return QScalar();
  if (y.weight(n) != word_weight(eword, n)) return QScalar();
  FreeElem cur = y;
  for (std::size_t k = eword.size(); k-- > 0;) {
    cur = rprime_free(rs, eword[k], cur);
    if (cur.is_zero()) return QScalar();
  }
  return cur.coeff(Word{});
}

QScalar pairing_eval(const RootSystem& rs, const FreeElem& y, const Word& eword) {
  QScalar v = pairing_reduced(rs, y, eword);
  if (v.is_zero()) return v;
  for (auto l : eword) v *= fe_pairing(rs, l);
  return v;
}

QScalar pairing_eval_left(const RootSystem& rs, const FreeElem& y, const Word& eword) {
  const int n = rs.rank();
  if (y.is_zero()) return QScalar();
  if (y.weight(n) != word_weight(eword, n)) return QScalar();
  FreeElem cur = y;
  QScalar factor(1);
  for (auto l : eword) {
    cur = r_free(rs, l, cur);
    if (cur.is_zero()) return QScalar();
    factor *= fe_pairing(rs, l);
  }
  return factor * cur.coeff(Word{});
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::uint64_t word_pairing_mod(const RootSystem& rs, const Word& fword, const Word& eword, std::uint64_t x,
                               std::uint64_t p) {
  const std::size_t L = fword.size();
  if (L != eword.size()) return 0;
  if (L > 63) throw std::length_error("word_pairing_mod: word too long");
  if (word_weight(fword, rs.rank()) != word_weight(eword, rs.rank())) return 0;
  const std::uint64_t xinv = powmod(x, p - 2, p);
  auto xpow = [&](int e) { return e >= 0 ? powmod(x, static_cast<std::uint64_t>(e), p) : powmod(xinv, static_cast<std::uint64_t>(-e), p); };
  // cache of x^e for the small exponent range that occurs
  std::unordered_map<int, std::uint64_t> pw;
  auto xp = [&](int e) {
    auto it = pw.find(e);
    if (it != pw.end()) return it->second;
    return pw[e] = xpow(e);
  };
  std::unordered_map<std::uint64_t, std::uint64_t> cur, next;
  const std::uint64_t full = L == 64 ? ~0ULL : ((1ULL << L) - 1);
  cur[full] = 1;
  for (std::size_t k = L; k-- > 0;) {
    const int j = eword[k];
    next.clear();
    for (const auto& [mask, val] : cur) {
      int suffix = 0;
      for (std::size_t pos = L; pos-- > 0;) {
        if (!(mask >> pos & 1)) continue;
        if (fword[pos] == j) {
          std::uint64_t& slot = next[mask & ~(1ULL << pos)];
          slot = (slot + mulmod(val, xp(suffix), p)) % p;
        }
        suffix += rs.gram(j, fword[pos]);
      }
    }
    std::swap(cur, next);
    if (cur.empty()) return 0;
  }
  auto it = cur.find(0);
  return it == cur.end() ? 0 : it->second;
}

std::vector<Word> good_lyndon_words(const RootSystem& rs) {
  const auto& roots = rs.positive_roots();  // sorted by height
  std::vector<Word> l(roots.size());
  for (std::size_t t = 0; t < roots.size(); ++t) {
    if (rs.height(roots[t]) == 1) {
      for (int i = 0; i < rs.rank(); ++i)
        if (roots[t] == rs.simple(i)) l[t] = Word{static_cast<std::uint8_t>(i)};
      continue;
    }
    bool have = false;
    for (std::size_t a = 0; a < t; ++a) {
      const int b = rs.root_index(roots[t] - roots[a]);
      if (b < 0 || !(l[a] < l[static_cast<std::size_t>(b)])) continue;
      Word c = l[a];
      c.insert(c.end(), l[static_cast<std::size_t>(b)].begin(), l[static_cast<std::size_t>(b)].end());
      if (!have || l[t] < c) l[t] = std::move(c);
      have = true;
    }
  }
  return l;
}

std::vector<Word> good_words(const RootSystem& rs, const Weight& mu) {
  const auto l = good_lyndon_words(rs);
  const auto& roots = rs.positive_roots();
  std::vector<Word> out;
  std::vector<std::size_t> parts;
  auto rec = [&](auto&& self, std::size_t idx, const Weight& rem) -> void {
    if (std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; })) {
      std::vector<Word> ws;
      for (auto p : parts) ws.push_back(l[p]);
      std::sort(ws.begin(), ws.end(), [](const Word& a, const Word& b) { return b < a; });
      Word w;
      for (const auto& x : ws) w.insert(w.end(), x.begin(), x.end());
      out.push_back(std::move(w));
      return;
    }
    if (idx == roots.size()) return;
    self(self, idx + 1, rem);
    Weight r = rem - roots[idx];
    if (is_nonneg(r)) {
      parts.push_back(idx);
      self(self, idx, r);
      parts.pop_back();
    }
  };
  if (is_nonneg(mu)) rec(rec, 0, mu);
  return out;
}

std::vector<YRecipe> y_recipes(const ParabolicDatum& pd) {
  const RootSystem& rs = pd.rs();
  std::vector<YRecipe> out(pd.size());
  for (int t = 0; t < pd.size(); ++t) {
    const Weight& beta = pd.roots()[t];
    if (beta == rs.simple(pd.i0())) continue;
    for (int i : pd.levi()) {
      int from = pd.index_of(beta - rs.simple(i));
      if (from < 0) continue;
      const Weight& prev = pd.roots()[from];
      out[t].vertex = i;
      out[t].from = from;
      if (rs.pair(beta, beta) == 4 && rs.pair(prev, prev) == 2) out[t].c = (QScalar::q_pow(1) + QScalar::q_pow(-1)).inverse();
      break;
    }
    if (out[t].vertex < 0) throw std::logic_error("no ad(F_i) recipe for a complement root");
  }
  return out;
}

YBuilder::YBuilder(const ParabolicDatum& pd) : pd_(pd), recipes_(y_recipes(pd)) {}

const FreeElem& YBuilder::y(int index) {
  auto it = memo_.find(index);
  if (it != memo_.end()) return it->second;
  const YRecipe& rc = recipes_[index];
  FreeElem v;
  if (rc.vertex < 0) {
    v = FreeElem::letter(pd_.i0());
  } else {
    FreeElem prev = y(rc.from);
    v = ad_f_free(pd_.rs(), rc.vertex, prev) * rc.c;
  }
  return memo_.emplace(index, std::move(v)).first->second;
}

QScalar form_free(const ParabolicDatum& pd, const FreeElem& f, const FreeElem& g) {
  const RootSystem& rs = pd.rs();
  if (f.is_zero() || g.is_zero()) return QScalar();
  const Weight wf = f.weight(rs.rank());
  if (wf != g.weight(rs.rank())) return QScalar();
  QScalar total;
  for (const auto& [w, c] : g.terms()) {
    Word e(w.rbegin(), w.rend());
    total += c * pairing_eval(rs, f, e);
  }
  return total * (QScalar::q_pow(-1) - QScalar::q_pow(1)).pow(wf[pd.i0()]);
}

}  // namespace qbf
