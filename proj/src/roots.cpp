#include "qbf/roots.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <set>

namespace qbf {

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E7";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "A") return Family::A;
  if (s == "B") return Family::B;
  if (s == "C") return Family::C;
  if (s == "D") return Family::D;
  if (s == "E7" || s == "E") return Family::E;
  throw std::invalid_argument("unknown family '" + s + "'");
}

Weight operator+(const Weight& a, const Weight& b) {
  Weight r(a);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += b[k];
  return r;
}

Weight operator-(const Weight& a, const Weight& b) {
  Weight r(a);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
  return r;
}

Weight scaled(const Weight& a, int k) {
  Weight r(a);
  for (auto& x : r) x *= k;
  return r;
}

bool is_negative(const Weight& w) {
  bool any = false;
  for (int x : w) {
    if (x > 0) return false;
    any = any || x < 0;
  }
  return any;
}

bool is_nonneg(const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](int x) { return x >= 0; });
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix r(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Weight mat_apply(const IntMatrix& m, const Weight& v) {
  Weight r(v.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  return r;
}

// ---------------------------------------------------------------- RootSystem

RootSystem::RootSystem(Family family, int rank) : family_(family), rank_(rank) {
  std::vector<std::pair<int, int>> edges;
  switch (family) {
    case Family::A:
      if (rank < 1) throw std::invalid_argument("A_n needs n >= 1");
      d_.assign(rank, 1);
      for (int i = 0; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
      break;
    case Family::B:
      if (rank < 2) throw std::invalid_argument("B_n needs n >= 2");
      d_.assign(rank, 2);
      d_[rank - 1] = 1;
      for (int i = 0; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
      break;
    case Family::C:
      if (rank < 2) throw std::invalid_argument("C_n needs n >= 2");
      d_.assign(rank, 1);
      d_[rank - 1] = 2;
      for (int i = 0; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
      break;
    case Family::D:
      if (rank < 4) throw std::invalid_argument("D_n needs n >= 4");
      d_.assign(rank, 1);
      for (int i = 0; i + 2 < rank; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(rank - 3, rank - 1);
      break;
    case Family::E:
      if (rank != 7) throw std::invalid_argument("only E7 is supported in type E");
      d_.assign(7, 1);
      // chain 1-2-3-4-6-7, vertex 5 hangs off 4
      edges = {{0, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 6}, {3, 4}};
      break;
  }
  gram_.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) gram_[i][i] = 2 * d_[i];
  for (auto [i, j] : edges) {
    // (a_i, a_j) = -min(d_i, d_j) * (number of bonds) = -max(d_i, d_j) for simply-laced/doubly-laced
    const int v = -std::max(d_[i], d_[j]);
    gram_[i][j] = gram_[j][i] = v;
  }
  cartan_.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) cartan_[i][j] = 2 * gram_[i][j] / gram_[i][i];

  // positive roots by height, using root strings
  std::set<Weight> seen;
  std::vector<Weight> level;
  for (int i = 0; i < rank; ++i) level.push_back(simple(i));
  while (!level.empty()) {
    std::vector<Weight> next;
    for (const auto& b : level) {
      if (!seen.insert(b).second) continue;
      positive_.push_back(b);
    }
    for (const auto& b : level) {
      for (int i = 0; i < rank; ++i) {
        if (b == simple(i)) continue;
        int p = 0;
        Weight down = b - simple(i);
        while (is_nonneg(down) && seen.count(down)) {
          ++p;
          down = down - simple(i);
        }
        const int qq = p - coroot_coord(b, i);
        if (qq > 0) {
          Weight up = b + simple(i);
          if (!seen.count(up) && std::find(next.begin(), next.end(), up) == next.end()) next.push_back(up);
        }
      }
    }
    level = std::move(next);
  }
  std::stable_sort(positive_.begin(), positive_.end(),
                   [this](const Weight& a, const Weight& b) { return height(a) < height(b); });
}

int RootSystem::root_index(const Weight& w) const {
  for (std::size_t k = 0; k < positive_.size(); ++k)
    if (positive_[k] == w) return static_cast<int>(k);
  return -1;
}

int RootSystem::pair(const Weight& a, const Weight& b) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) s += a[i] * gram_[i][j] * b[j];
  }
  return s;
}

int RootSystem::coroot_coord(const Weight& mu, int i) const {
  int s = 0;
  for (int j = 0; j < rank_; ++j) s += mu[j] * gram_[j][i];
  return 2 * s / gram_[i][i];
}

Weight RootSystem::simple(int i) const {
  Weight w(rank_, 0);
  w[i] = 1;
  return w;
}

Weight RootSystem::reflect(int i, const Weight& mu) const {
  Weight r = mu;
  r[i] -= coroot_coord(mu, i);
  return r;
}

int RootSystem::height(const Weight& mu) const {
  int h = 0;
  for (int x : mu) h += x;
  return h;
}

IntMatrix RootSystem::identity() const {
  IntMatrix m(rank_, std::vector<int>(rank_, 0));
  for (int i = 0; i < rank_; ++i) m[i][i] = 1;
  return m;
}

IntMatrix RootSystem::reflection_matrix(int i) const {
  IntMatrix m = identity();
  // column j is s_i(a_j) = a_j - a_ij a_i
  for (int j = 0; j < rank_; ++j) m[i][j] -= cartan_[i][j];
  return m;
}

IntMatrix RootSystem::longest_element(const std::vector<int>& subset) const {
  IntMatrix w = identity();
  for (;;) {
    bool grew = false;
    for (int i : subset) {
      Weight col(rank_);
      for (int k = 0; k < rank_; ++k) col[k] = w[k][i];
      if (!is_negative(col)) {
        w = mat_mul(w, reflection_matrix(i));
        grew = true;
        break;
      }
    }
    if (!grew) return w;
  }
}

std::vector<int> reduced_word(const RootSystem& rs, const IntMatrix& target) {
  const int n = rs.rank();
  const IntMatrix id = rs.identity();
  IntMatrix w = target;
  std::vector<int> letters;
  const std::size_t guard = rs.positive_roots().size();
  while (w != id) {
    int pick = -1;
    for (int i = 0; i < n && pick < 0; ++i) {
      Weight col(n);
      for (int k = 0; k < n; ++k) col[k] = w[k][i];
      if (is_negative(col)) pick = i;
    }
    if (pick < 0 || letters.size() >= guard)
      throw std::invalid_argument("reduced_word: target is not a Weyl group element");
    w = mat_mul(w, rs.reflection_matrix(pick));
    letters.push_back(pick);
  }
  std::reverse(letters.begin(), letters.end());
  return letters;
}

// ---------------------------------------------------------------- ParabolicDatum

namespace {

// Coordinates of the fundamental weight w_i in the simple-root basis.
std::vector<mpq_class> fundamental_weight(const RootSystem& rs, int i) {
  // solve sum_k c_k (a_k, a_j) = d_i delta_ij
  const int n = rs.rank();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) m[j][k] = rs.gram(k, j);
    m[j][n] = j == i ? rs.d(i) : 0;
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      mpq_class f = m[r][col] / m[col][col];
      for (int k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  std::vector<mpq_class> c(n);
  for (int k = 0; k < n; ++k) c[k] = m[k][n] / m[k][k];
  return c;
}

}  // namespace

ParabolicDatum::ParabolicDatum(RootSystem rs, int i0, int r) : rs_(std::move(rs)), i0_(i0), r_(r) {}

ParabolicDatum ParabolicDatum::make(Family family, int rank, std::optional<int> i0_opt) {
  RootSystem rs(family, rank);
  int i0 = -1, r = -1;
  switch (family) {
    case Family::A:
      if (rank % 2 == 0) throw std::invalid_argument("A_n is regular only for odd n");
      i0 = (rank + 1) / 2 - 1;
      r = (rank + 1) / 2;
      break;
    case Family::B:
      i0 = 0;
      r = 2;
      break;
    case Family::C:
      if (rank < 3) throw std::invalid_argument("(C_n, n) needs n >= 3");
      i0 = rank - 1;
      r = rank;
      break;
    case Family::D:
      i0 = 0;
      r = 2;
      if (i0_opt && *i0_opt == rank - 1) {
        if (rank % 2 != 0) throw std::invalid_argument("(D_n, n) is regular only for even n");
        i0 = rank - 1;
        r = rank / 2;
      }
      break;
    case Family::E:
      i0 = 0;
      r = 3;
      break;
  }
  if (i0_opt && *i0_opt != i0)
    throw std::invalid_argument("i0 = " + std::to_string(*i0_opt + 1) + " is not a regular choice for " +
                                family_name(family) + std::to_string(rank));
  ParabolicDatum pd(std::move(rs), i0, r);
  const RootSystem& R = pd.rs_;
  for (int i = 0; i < rank; ++i)
    if (i != i0) pd.levi_.push_back(i);

  // lambda_r = -2 w_{i0}
  auto c = fundamental_weight(R, i0);
  pd.lambda_r_.assign(rank, 0);
  for (int k = 0; k < rank; ++k) {
    mpq_class v = -2 * c[k];
    if (v.get_den() != 1) throw std::logic_error("-2 w_i0 is not in the root lattice");
    pd.lambda_r_[k] = static_cast<int>(v.get_num().get_si());
  }
  if (-pd.lambda_r_[i0] != r) throw std::logic_error("orbit count disagrees with the degree of -2 w_i0");

  IntMatrix w0 = R.longest_element([&] {
    std::vector<int> all(rank);
    for (int i = 0; i < rank; ++i) all[i] = i;
    return all;
  }());
  IntMatrix wI = R.longest_element(pd.levi_);
  pd.word_ = reduced_word(R, mat_mul(wI, w0));

  IntMatrix prefix = R.identity();
  for (int letter : pd.word_) {
    pd.order_.push_back(mat_apply(prefix, R.simple(letter)));
    prefix = mat_mul(prefix, R.reflection_matrix(letter));
  }

  // the convex order must enumerate exactly the roots with a_{i0}-coordinate >= 1,
  // and each such root must have coordinate exactly 1 (abelian nilradical)
  std::vector<Weight> expect;
  for (const auto& b : R.positive_roots()) {
    if (b[i0] >= 1) expect.push_back(b);
    if (b[i0] > 1) throw std::logic_error("nilradical is not abelian");
  }
  std::vector<Weight> got = pd.order_;
  std::sort(got.begin(), got.end());
  std::sort(expect.begin(), expect.end());
  if (got != expect) throw std::logic_error("convex order does not enumerate the complement roots");
  if (pd.order_.front() != R.simple(i0)) throw std::logic_error("beta_1 is not a_{i0}");
  return pd;
}

int ParabolicDatum::index_of(const Weight& w) const {
  for (std::size_t k = 0; k < order_.size(); ++k)
    if (order_[k] == w) return static_cast<int>(k);
  return -1;
}

std::string ParabolicDatum::tag() const {
  std::string t = family_name(rs_.family());
  if (rs_.family() != Family::E) t += std::to_string(rs_.rank());
  return t + "_i" + std::to_string(i0_ + 1);
}

std::string ParabolicDatum::display() const {
  std::string t = rs_.family() == Family::E ? "E_7" : family_name(rs_.family()) + "_" + std::to_string(rs_.rank());
  return "(" + t + ", " + std::to_string(i0_ + 1) + ")";
}

// ---------------------------------------------------------------- Kostant partitions

std::uint64_t kostant_partitions(const RootSystem& rs, const Weight& mu) {
  if (!is_nonneg(mu)) return 0;
  // unbounded knapsack over the box 0 <= w <= mu, mixed-radix indexed
  const std::size_t n = mu.size();
  std::vector<std::size_t> stride(n);
  std::size_t box = 1;
  for (std::size_t k = 0; k < n; ++k) {
    stride[k] = box;
    box *= static_cast<std::size_t>(mu[k]) + 1;
  }
  std::vector<std::uint64_t> dp(box, 0);
  dp[0] = 1;
  std::vector<int> coord(n);
  for (const Weight& root : rs.positive_roots()) {
    bool fits = true;
    std::size_t shift = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (root[k] > mu[k]) fits = false;
      shift += static_cast<std::size_t>(root[k]) * stride[k];
    }
    if (!fits) continue;
    std::fill(coord.begin(), coord.end(), 0);
    for (std::size_t idx = 0; idx < box; ++idx) {
      bool ok = true;
      for (std::size_t k = 0; k < n; ++k)
        if (coord[k] < root[k]) { ok = false; break; }
      if (ok) dp[idx] += dp[idx - shift];
      for (std::size_t k = 0; k < n; ++k) {
        if (++coord[k] <= mu[k]) break;
        coord[k] = 0;
      }
    }
  }
  return dp[box - 1];
}

}  // namespace qbf
