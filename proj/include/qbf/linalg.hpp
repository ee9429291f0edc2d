#pragma once

// Exact linear algebra over Q(q) and over Z/p.
//
// The Q(q) side clears row denominators and runs Bareiss elimination, so the
// forward phase never divides by anything but the previous pivot; pivots are
// chosen by minimal serialized size.  Back substitution then works in the
// field.

#include <cstdint>
#include <optional>
#include <vector>

#include "qbf/scalars.hpp"

namespace qbf {

using QMatrix = std::vector<std::vector<QScalar>>;
using QVector = std::vector<QScalar>;

struct Echelon {
  QMatrix rows;               // nonzero rows in echelon form
  std::vector<int> pivots;    // pivot column of each row
  std::size_t cols = 0;
};

Echelon echelon(QMatrix a, std::size_t cols);
std::size_t rank(const QMatrix& a, std::size_t cols);

// Basis of {x : a x = 0}, one vector per free column; each basis vector has a
// 1 in its free column.
std::vector<QVector> kernel(const QMatrix& a, std::size_t cols);

// Some solution of a x = b, or nullopt when the system is inconsistent.
// `unique` is set to whether the solution is the only one.
std::optional<QVector> solve(const QMatrix& a, const QVector& b, std::size_t cols, bool* unique = nullptr);

namespace modp {

inline constexpr std::uint64_t kPrime = (1ULL << 61) - 1;

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p = kPrime) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p = kPrime) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p = kPrime) {
  return a >= b ? a - b : a + p - b;
}
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p = kPrime);
inline std::uint64_t inv(std::uint64_t a, std::uint64_t p = kPrime) { return pow(a, p - 2, p); }
// x^e for a possibly negative exponent
std::uint64_t ipow(std::uint64_t x, int e, std::uint64_t p = kPrime);

// Incrementally grown row space over Z/p.
class Basis {
 public:
  explicit Basis(std::size_t dim, std::uint64_t p = kPrime) : dim_(dim), p_(p) {}
  // Reduces v against the basis; keeps it and returns true when independent.
  bool insert(std::vector<std::uint64_t> v);
  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t dim_;
  std::uint64_t p_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> piv_;
};

std::size_t rank(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p = kPrime);

}  // namespace modp

}  // namespace qbf
