#include "qbf/linalg.hpp"

#include <stdexcept>

namespace qbf {

namespace {

// Multiply a row by the lcm-ish product of its denominators so every entry is
// a Laurent polynomial.  The scaling does not change the row space.
void clear_denominators(QVector& row) {
  LaurentPoly common(1);
  for (const auto& x : row) {
    if (x.is_zero() || x.den().is_one()) continue;
    LaurentPoly g = poly_gcd(common, x.den());
    common = common * poly_divexact(x.den(), g);
  }
  if (common.is_one()) return;
  QScalar c(common);
  for (auto& x : row) x *= c;
}

}  // namespace

Echelon echelon(QMatrix a, std::size_t cols) {
  for (auto& row : a) {
    if (row.size() != cols) throw std::invalid_argument("echelon: ragged matrix");
    clear_denominators(row);
  }
  Echelon out;
  out.cols = cols;
  std::size_t top = 0;
  QScalar prev(1);
  for (std::size_t c = 0; c < cols && top < a.size(); ++c) {
    std::size_t best = a.size();
    for (std::size_t r = top; r < a.size(); ++r)
      if (!a[r][c].is_zero() && (best == a.size() || a[r][c].weight() < a[best][c].weight())) best = r;
    if (best == a.size()) continue;
    std::swap(a[top], a[best]);
    const QScalar& piv = a[top][c];
    for (std::size_t r = top + 1; r < a.size(); ++r) {
      const QScalar lead = a[r][c];
      for (std::size_t k = c; k < cols; ++k) {
        QScalar v = piv * a[r][k];
        if (!lead.is_zero()) v -= lead * a[top][k];
        a[r][k] = v / prev;
      }
    }
    prev = piv;
    out.pivots.push_back(static_cast<int>(c));
    ++top;
  }
  a.resize(top);
  out.rows = std::move(a);
  return out;
}

std::size_t rank(const QMatrix& a, std::size_t cols) { return echelon(a, cols).rows.size(); }

std::vector<QVector> kernel(const QMatrix& a, std::size_t cols) {
  Echelon e = echelon(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector x(cols);
    x[f] = QScalar(1);
    for (std::size_t r = e.rows.size(); r-- > 0;) {
      const auto pc = static_cast<std::size_t>(e.pivots[r]);
      QScalar acc;
      for (std::size_t k = pc + 1; k < cols; ++k)
        if (!x[k].is_zero() && !e.rows[r][k].is_zero()) acc += e.rows[r][k] * x[k];
      x[pc] = -acc / e.rows[r][pc];
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b, std::size_t cols, bool* unique) {
  if (a.size() != b.size()) throw std::invalid_argument("solve: row count mismatch");
  QMatrix aug = a;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  Echelon e = echelon(std::move(aug), cols + 1);
  if (!e.pivots.empty() && static_cast<std::size_t>(e.pivots.back()) == cols) return std::nullopt;
  if (unique) *unique = e.rows.size() == cols;
  QVector x(cols);
  for (std::size_t r = e.rows.size(); r-- > 0;) {
    const auto pc = static_cast<std::size_t>(e.pivots[r]);
    QScalar acc = e.rows[r][cols];
    for (std::size_t k = pc + 1; k < cols; ++k)
      if (!x[k].is_zero() && !e.rows[r][k].is_zero()) acc -= e.rows[r][k] * x[k];
    x[pc] = acc / e.rows[r][pc];
  }
  return x;
}

namespace modp {

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t ipow(std::uint64_t x, int e, std::uint64_t p) {
  return e >= 0 ? pow(x, static_cast<std::uint64_t>(e), p) : pow(inv(x, p), static_cast<std::uint64_t>(-e), p);
}

bool Basis::insert(std::vector<std::uint64_t> v) {
  if (v.size() != dim_) throw std::invalid_argument("Basis::insert: dimension mismatch");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::uint64_t f = v[piv_[r]];
    if (f == 0) continue;
    for (std::size_t k = 0; k < dim_; ++k)
      if (rows_[r][k]) v[k] = sub(v[k], mul(f, rows_[r][k], p_), p_);
  }
  std::size_t pc = 0;
  while (pc < dim_ && v[pc] == 0) ++pc;
  if (pc == dim_) return false;
  const std::uint64_t s = inv(v[pc], p_);
  for (auto& x : v) x = mul(x, s, p_);
  // keep existing rows reduced in the new pivot column
  for (auto& row : rows_) {
    const std::uint64_t f = row[pc];
    if (f == 0) continue;
    for (std::size_t k = 0; k < dim_; ++k)
      if (v[k]) row[k] = sub(row[k], mul(f, v[k], p_), p_);
  }
  rows_.push_back(std::move(v));
  piv_.push_back(pc);
  return true;
}

std::size_t rank(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
  if (a.empty()) return 0;
  Basis b(a.front().size(), p);
  for (auto& row : a) b.insert(std::move(row));
  return b.rank();
}

}  // namespace modp

}  // namespace qbf
