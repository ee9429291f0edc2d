#include "qbf/pbw.hpp"

#include <algorithm>
#include <cstring>
#include <random>
#include <set>
#include <sstream>

#include "qbf/linalg.hpp"

namespace qbf {

std::size_t MonoHash::operator()(const Mono& m) const noexcept {
  std::uint64_t w[4];
  std::memcpy(w, m.data(), sizeof w);
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t x : w) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
  }
  return static_cast<std::size_t>(h);
}

PBWElem PBWElem::monomial(const Mono& m, const QScalar& c) {
  PBWElem e;
  e.add_term(m, c);
  return e;
}

QScalar PBWElem::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? QScalar() : it->second;
}

std::vector<std::pair<Mono, QScalar>> PBWElem::sorted() const {
  std::vector<std::pair<Mono, QScalar>> v(terms_.begin(), terms_.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

void PBWElem::add_term(const Mono& m, const QScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void PBWElem::add_scaled(const PBWElem& o, const QScalar& c) {
  if (c.is_zero()) return;
  const bool unit = c.is_one();
  for (const auto& [m, x] : o.terms_) add_term(m, unit ? x : x * c);
}

PBWElem& PBWElem::operator+=(const PBWElem& o) {
  for (const auto& [m, x] : o.terms_) add_term(m, x);
  return *this;
}

PBWElem& PBWElem::operator-=(const PBWElem& o) {
  for (const auto& [m, x] : o.terms_) add_term(m, -x);
  return *this;
}

PBWElem& PBWElem::operator*=(const QScalar& c) {
  if (c.is_one()) return *this;
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

PBWAlgebra::PBWAlgebra(const RelationTable& t) : t_(t) {
  if (t.k() > kMaxGens) throw std::length_error("PBWAlgebra: too many generators");
  const RootSystem& rs = t.pd.rs();
  gram_.assign(rs.rank(), std::vector<int>(t.k()));
  for (int j = 0; j < rs.rank(); ++j)
    for (int g = 0; g < t.k(); ++g) gram_[j][g] = rs.pair(rs.simple(j), t.pd.roots()[g]);
  rp_memo_.resize(rs.rank());
  adf_memo_.resize(rs.rank());
  t_memo_.resize(t.k());
  // ad(E_i) = kappa_i r'_i, kappa_i = -(q_i - q_i^{-1})^{-1}
  scale_.resize(t.k());
  for (int g = 0; g < t.k(); ++g) {
    const YRecipe& rc = t.recipes[g];
    if (rc.vertex < 0) {
      scale_[g] = qint(t.pd.d_i0()).inverse();
    } else {
      const int d = rs.d(rc.vertex);
      const QScalar kappa = -(QScalar::q_pow(d) - QScalar::q_pow(-d)).inverse();
      scale_[g] = scale_[rc.from] * kappa * rc.c;
    }
  }
}

Mono PBWAlgebra::gen_mono(int g) const {
  Mono m{};
  m[g] = 1;
  return m;
}

int PBWAlgebra::degree(const Mono& m) const {
  int d = 0;
  for (int g = 0; g < k(); ++g) d += m[g];
  return d;
}

Weight PBWAlgebra::weight(const Mono& m) const {
  Weight w(static_cast<std::size_t>(pd().rs().rank()), 0);
  for (int g = 0; g < k(); ++g)
    if (m[g])
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += m[g] * pd().roots()[g][i];
  return w;
}

std::vector<int> PBWAlgebra::sequence(const Mono& m) const {
  std::vector<int> s;
  for (int g = 0; g < k(); ++g)
    for (int e = 0; e < m[g]; ++e) s.push_back(g);
  return s;
}

std::string PBWAlgebra::mono_str(const Mono& m) const {
  std::string s;
  for (int g = 0; g < k(); ++g) {
    if (!m[g]) continue;
    if (!s.empty()) s += ' ';
    s += "Y" + std::to_string(g + 1);
    if (m[g] > 1) s += "^" + std::to_string(m[g]);
  }
  return s.empty() ? "1" : s;
}

std::string PBWAlgebra::str(const PBWElem& x) const {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : x.sorted()) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*" + mono_str(m);
  }
  return s;
}

const PBWElem& PBWAlgebra::mono_times_gen(const Mono& m, int g) {
  Mono key = m;
  key[kMaxGens] = static_cast<std::uint8_t>(g + 1);
  auto it = mul_memo_.find(key);
  if (it != mul_memo_.end()) return it->second;
  int h = -1;
  for (int x = k() - 1; x > g; --x)
    if (m[x]) {
      h = x;
      break;
    }
  PBWElem out;
  if (h < 0) {
    Mono r = m;
    if (r[g] == 255) throw std::overflow_error("PBW exponent overflow");
    ++r[g];
    out.add_term(r, QScalar(1));
  } else {
    // m = m' Y_h with h > g: m' (Y_h Y_g) = sum c (m' Y_u) Y_v
    auto rule = t_.rules.find({h, g});
    if (rule == t_.rules.end())
      throw MissingRule("no straightening rule for (" + std::to_string(h + 1) + "," + std::to_string(g + 1) + ")");
    Mono mp = m;
    --mp[h];
    for (const RuleTerm& term : rule->second) {
      PBWElem left = mono_times_gen(mp, term.u);
      for (const auto& [n, c] : left.terms()) out.add_scaled(mono_times_gen(n, term.v), c * term.c);
    }
  }
  note_memo();
  return mul_memo_.emplace(key, std::move(out)).first->second;
}

PBWElem PBWAlgebra::mul_gen(const PBWElem& a, int g) {
  PBWElem out;
  for (const auto& [m, c] : a.terms()) out.add_scaled(mono_times_gen(m, g), c);
  return out;
}

PBWElem PBWAlgebra::mono_times_seq(const Mono& m, const std::vector<int>& seq, std::size_t from) {
  PBWElem cur = PBWElem::monomial(m);
  for (std::size_t p = from; p < seq.size(); ++p) cur = mul_gen(cur, seq[p]);
  return cur;
}

PBWElem PBWAlgebra::normal_form(const std::vector<int>& word, const QScalar& c) {
  PBWElem cur = PBWElem::monomial(unit_mono(), c);
  for (int g : word) cur = mul_gen(cur, g);
  return cur;
}

PBWElem PBWAlgebra::mul(const PBWElem& a, const PBWElem& b) {
  PBWElem out;
  for (const auto& [n, cb] : b.terms()) {
    PBWElem cur = a;
    for (int g : sequence(n)) cur = mul_gen(cur, g);
    out.add_scaled(cur, cb);
  }
  return out;
}

PBWElem PBWAlgebra::pow(const PBWElem& a, int n) {
  PBWElem r = one();
  for (int i = 0; i < n; ++i) r = mul(r, a);
  return r;
}

const PBWElem& PBWAlgebra::rprime_mono(int j, const Mono& m) {
  auto& memo = rp_memo_[j];
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  // r'_j(y1 y2) = y1 r'_j(y2) + q^{(a_j, wt y2)} r'_j(y1) y2
  const std::vector<int> seq = sequence(m);
  PBWElem out;
  int suffix = 0;
  Mono prefix = m;
  for (std::size_t p = seq.size(); p-- > 0;) {
    const int g = seq[p];
    --prefix[g];  // prefix now holds seq[0..p)
    const auto& s = t_.rprime[j][g];
    if (s && !s->is_zero()) {
      const int tgt = t_.down(j, g);
      PBWElem head = PBWElem::monomial(prefix, *s * QScalar::q_pow(suffix));
      if (tgt >= 0) head = mul_gen(head, tgt);
      for (std::size_t r = p + 1; r < seq.size(); ++r) head = mul_gen(head, seq[r]);
      out += head;
    }
    suffix += gram_[j][g];
  }
  note_memo();
  return memo.emplace(m, std::move(out)).first->second;
}

PBWElem PBWAlgebra::rprime(int j, const PBWElem& x) {
  PBWElem out;
  for (const auto& [m, c] : x.terms()) out.add_scaled(rprime_mono(j, m), c);
  return out;
}

PBWElem PBWAlgebra::ad_e(int i, const PBWElem& x) {
  const int d = pd().rs().d(i);
  const QScalar kappa = -(QScalar::q_pow(d) - QScalar::q_pow(-d)).inverse();
  return rprime(i, x) * kappa;
}

const PBWElem& PBWAlgebra::adf_mono(int i, const Mono& m) {
  auto& memo = adf_memo_[i];
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  // ad(F_i)(y1 y2) = ad(F_i)(y1) y2 + q^{-(a_i, wt y1)} y1 ad(F_i)(y2)
  const std::vector<int> seq = sequence(m);
  PBWElem out;
  int prefix_w = 0;
  Mono prefix{};
  for (std::size_t p = 0; p < seq.size(); ++p) {
    const int g = seq[p];
    const auto& s = t_.adf[i][g];
    if (s && !s->is_zero()) {
      PBWElem head = PBWElem::monomial(prefix, *s * QScalar::q_pow(-prefix_w));
      head = mul_gen(head, t_.up(i, g));
      for (std::size_t r = p + 1; r < seq.size(); ++r) head = mul_gen(head, seq[r]);
      out += head;
    }
    ++prefix[g];
    prefix_w += gram_[i][g];
  }
  note_memo();
  return memo.emplace(m, std::move(out)).first->second;
}

PBWElem PBWAlgebra::ad_f(int i, const PBWElem& x) {
  PBWElem out;
  for (const auto& [m, c] : x.terms()) out.add_scaled(adf_mono(i, m), c);
  return out;
}

// tY_g(d) = scale_[g] * s_g with s_{i0} = r'_{i0} and
// s_g = s_from r'_i - q^{-(a_i, beta_from)} r'_i s_from, so that the
// recursion itself only meets the table scalars.
const PBWElem& PBWAlgebra::t_op_mono(int g, const Mono& m) {
  auto& memo = t_memo_[g];
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  PBWElem out;
  const YRecipe& rc = t_.recipes[g];
  if (rc.vertex < 0) {
    out = rprime_mono(pd().i0(), m);
  } else {
    out = s_op(rc.from, rprime_mono(rc.vertex, m));
    PBWElem b = rprime(rc.vertex, s_op(rc.from, PBWElem::monomial(m)));
    b *= QScalar::q_pow(-gram_[rc.vertex][rc.from]);
    out -= b;
  }
  note_memo();
  return memo.emplace(m, std::move(out)).first->second;
}

PBWElem PBWAlgebra::s_op(int g, const PBWElem& x) {
  PBWElem out;
  for (const auto& [m, c] : x.terms()) out.add_scaled(t_op_mono(g, m), c);
  return out;
}

PBWElem PBWAlgebra::t_op(int g, const PBWElem& x) {
  PBWElem out = s_op(g, x);
  out *= scale_[g];
  return out;
}

PBWElem PBWAlgebra::t_op_elem(const PBWElem& g, const PBWElem& x) {
  PBWElem out;
  for (const auto& [n, c] : g.terms()) {
    PBWElem cur = x;
    for (int gen : sequence(n)) {
      cur = t_op(gen, cur);
      if (cur.is_zero()) break;
    }
    out.add_scaled(cur, c);
  }
  return out;
}

QScalar PBWAlgebra::bilinear(const PBWElem& f, const PBWElem& g) {
  if (f.is_zero() || g.is_zero()) return {};
  return t_op_elem(g, f).coeff(unit_mono());
}

std::vector<Mono> PBWAlgebra::weight_space_basis(const Weight& mu, int m) const {
  std::vector<Mono> out;
  Mono cur{};
  auto rec = [&](auto&& self, int g, const Weight& rem, int left) -> void {
    if (left == 0) {
      if (std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; })) out.push_back(cur);
      return;
    }
    if (g == k()) return;
    self(self, g + 1, rem, left);
    Weight r = rem;
    int e = 0;
    while (left - e > 0) {
      r = r - pd().roots()[g];
      if (!is_nonneg(r)) break;
      ++e;
      cur[g] = static_cast<std::uint8_t>(e);
      self(self, g + 1, r, left - e);
    }
    cur[g] = 0;
  };
  rec(rec, 0, mu, m);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PBWElem> PBWAlgebra::hwv_solve(const Weight& mu, int m) {
  const std::vector<Mono> basis = weight_space_basis(mu, m);
  if (basis.empty()) return {};
  std::map<std::pair<int, Mono>, std::size_t> row_of;
  QMatrix a;
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (int i : pd().levi()) {
      PBWElem img = ad_e(i, PBWElem::monomial(basis[c]));
      for (const auto& [n, x] : img.sorted()) {
        auto [it, fresh] = row_of.emplace(std::make_pair(i, n), a.size());
        if (fresh) a.emplace_back(basis.size());
        a[it->second][c] = x;
      }
    }
  std::vector<QVector> ker = kernel(a, basis.size());
  std::vector<PBWElem> out;
  for (const auto& v : ker) {
    PBWElem e;
    for (std::size_t c = 0; c < basis.size(); ++c) e.add_term(basis[c], v[c]);
    out.push_back(std::move(e));
  }
  return out;
}

Mono PBWAlgebra::min_mono(const PBWElem& x, const PBWAlgebra& alg) {
  bool have = false;
  Mono best{};
  std::vector<int> bs;
  for (const auto& [m, c] : x.terms()) {
    auto s = alg.sequence(m);
    if (!have || s < bs) {
      best = m;
      bs = std::move(s);
      have = true;
    }
  }
  return best;
}

FreeElem PBWAlgebra::to_free(const PBWElem& x, YBuilder& yb) const {
  FreeElem out;
  for (const auto& [m, c] : x.sorted()) {
    FreeElem term = FreeElem::one();
    for (int g : sequence(m)) term = term * yb.y(g);
    out += term * c;
  }
  return out;
}

CheckReport PBWAlgebra::hilbert_check(int maxdeg, std::uint64_t seed) {
  CheckReport rep;
  std::mt19937_64 rng(seed ^ 0x4b1d);
  const std::uint64_t at = 2 + rng() % (modp::kPrime - 4);
  auto gen_combo = [](const std::vector<int>& seq) {
    AtomWord w(seq.begin(), seq.end());
    return AtomCombo{{w, QScalar(1)}};
  };
  for (int m = 1; m <= maxdeg; ++m) {
    // ordered monomials of degree m, grouped by weight
    std::map<Weight, std::vector<Mono>> by_weight;
    std::uint64_t count = 0;
    Mono cur{};
    auto rec = [&](auto&& self, int g, int left) -> void {
      if (left == 0) {
        by_weight[weight(cur)].push_back(cur);
        ++count;
        return;
      }
      if (g == k()) return;
      for (int e = left; e >= 0; --e) {
        cur[g] = static_cast<std::uint8_t>(e);
        self(self, g + 1, left - e);
      }
      cur[g] = 0;
    };
    rec(rec, 0, m);
    // multiset count C(k + m - 1, m)
    Integer expect(1);
    for (int t = 0; t < m; ++t) expect = expect * (k() + t) / (t + 1);
    if (Integer(static_cast<unsigned long>(count)) != expect)
      rep.fail("degree " + std::to_string(m) + ": " + std::to_string(count) + " ordered monomials, expected " +
               expect.get_str());
    // independence: the pairing matrix against E-words has full rank mod p
    for (const auto& [mu, monos] : by_weight) {
      if (degree(monos.front()) != mu[pd().i0()]) rep.fail("degree differs from the a_i0 coordinate");
      std::vector<AtomCombo> xs;
      for (const auto& mo : monos) xs.push_back(gen_combo(sequence(mo)));
      modp::Basis basis(xs.size());
      std::set<Word> seen;
      std::size_t tries = 0;
      const std::size_t budget = 512 * xs.size() + 2048;
      while (basis.rank() < xs.size() && tries < budget) {
        Word e;
        if (tries % 4 != 3) {
          e = peel_word(t_, xs[rng() % xs.size()], rng);
        } else {
          Word base;
          for (std::size_t i = 0; i < mu.size(); ++i)
            for (int c = 0; c < mu[i]; ++c) base.push_back(static_cast<std::uint8_t>(i));
          std::shuffle(base.begin(), base.end(), rng);
          e = base;
        }
        ++tries;
        if (!seen.insert(e).second) continue;
        std::vector<std::uint64_t> col(xs.size());
        for (std::size_t r = 0; r < xs.size(); ++r) col[r] = atom_pairing_mod(t_, xs[r], e, at);
        basis.insert(std::move(col));
      }
      rep.checked += xs.size();
      if (basis.rank() < xs.size())
        rep.fail("degree " + std::to_string(m) + ": ordered monomials of one weight are dependent (rank " +
                 std::to_string(basis.rank()) + " of " + std::to_string(xs.size()) + ")");
    }
    // normal forms of random generator products pair like the products
    const int samples = m == 1 ? 0 : 24;
    for (int s = 0; s < samples; ++s) {
      std::vector<int> word(static_cast<std::size_t>(m));
      for (auto& g : word) g = static_cast<int>(rng() % static_cast<std::uint64_t>(k()));
      PBWElem nf = normal_form(word);
      AtomCombo lhs = gen_combo(word);
      AtomCombo diff = lhs;
      for (const auto& [mo, c] : nf.sorted()) {
        auto seq = sequence(mo);
        diff.emplace_back(AtomWord(seq.begin(), seq.end()), -c);
      }
      for (int e = 0; e < 32; ++e) {
        ++rep.checked;
        if (atom_pairing_mod(t_, diff, peel_word(t_, lhs, rng), at) != 0) {
          std::string w;
          for (int g : word) w += "Y" + std::to_string(g + 1) + " ";
          rep.fail("normal form of " + w + "does not pair like the product");
          break;
        }
      }
    }
  }
  return rep;
}

CheckReport PBWAlgebra::confluence_check() {
  CheckReport rep;
  for (int c = 0; c < k(); ++c)
    for (int b = 0; b < c; ++b)
      for (int a = 0; a < b; ++a) {
        // (Y_c Y_b) Y_a against Y_c (Y_b Y_a), each reduced leftmost first
        PBWElem left = mul_gen(normal_form({c, b}), a);
        PBWElem right = mul(gen(c), normal_form({b, a}));
        ++rep.checked;
        if (!(left == right))
          rep.fail("triple (" + std::to_string(c + 1) + "," + std::to_string(b + 1) + "," + std::to_string(a + 1) + ")");
      }
  return rep;
}

std::size_t PBWAlgebra::memo_entries() const {
  std::size_t n = mul_memo_.size();
  for (const auto* v : {&rp_memo_, &adf_memo_, &t_memo_})
    for (const auto& m : *v) n += m.size();
  return n;
}

void PBWAlgebra::note_memo() {
  ++memo_count_;
  if (memo_limit_ != 0 && memo_count_ > memo_limit_)
    throw MemoLimitExceeded("more than " + std::to_string(memo_limit_) + " memoized images");
}

void PBWAlgebra::clear_memos() {
  memo_count_ = 0;
  mul_memo_.clear();
  for (auto* v : {&rp_memo_, &adf_memo_, &t_memo_})
    for (auto& m : *v) m.clear();
}

}  // namespace qbf
