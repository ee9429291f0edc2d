#pragma once

// Root systems of types A, B, C, D, E7 with the vertex labeling of the
// regular commutative-parabolic diagrams, Weyl group words, and the
// parabolic datum (g, i0).
//
// Vertices are 0-based internally; user-facing text (CLI, reports) is
// 1-based.  The invariant form is normalized so short roots have
// (a, a) = 2, hence (a_i, a_j) = d_i a_ij is an integer on the root lattice.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbf {

using Weight = std::vector<int>;  // coordinates in the simple-root basis
using IntMatrix = std::vector<std::vector<int>>;

enum class Family { A, B, C, D, E };

std::string family_name(Family f);  // "A", "B", "C", "D", "E7"
Family parse_family(const std::string& s);

class RootSystem {
 public:
  RootSystem(Family family, int rank);

  Family family() const noexcept { return family_; }
  int rank() const noexcept { return rank_; }
  // a_ij = 2 (a_i, a_j) / (a_i, a_i) = a_j(h_i)
  int cartan(int i, int j) const { return cartan_[i][j]; }
  int d(int i) const { return d_[i]; }
  // (a_i, a_j)
  int gram(int i, int j) const { return gram_[i][j]; }

  const std::vector<Weight>& positive_roots() const noexcept { return positive_; }
  // Index into positive_roots(), or -1.
  int root_index(const Weight& w) const;
  bool is_positive_root(const Weight& w) const { return root_index(w) >= 0; }

  int pair(const Weight& a, const Weight& b) const;  // (a, b)
  int pair2(const Weight& a, const Weight& b) const { return 2 * pair(a, b); }
  // mu(h_i) = 2 (mu, a_i) / (a_i, a_i)
  int coroot_coord(const Weight& mu, int i) const;
  Weight simple(int i) const;
  Weight reflect(int i, const Weight& mu) const;
  int height(const Weight& mu) const;

  IntMatrix identity() const;
  IntMatrix reflection_matrix(int i) const;
  // Longest element of the parabolic subgroup generated by `subset`.
  IntMatrix longest_element(const std::vector<int>& subset) const;

 private:
  Family family_;
  int rank_;
  std::vector<int> d_;
  IntMatrix gram_;
  IntMatrix cartan_;
  std::vector<Weight> positive_;
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
Weight mat_apply(const IntMatrix& m, const Weight& v);
bool is_negative(const Weight& w);
bool is_nonneg(const Weight& w);
Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight scaled(const Weight& a, int k);

// Reduced word s_{i1} ... s_{ik} of a Weyl element given by its matrix on
// root coordinates.  Greedy right-descent; throws on non-termination.
std::vector<int> reduced_word(const RootSystem& rs, const IntMatrix& target);

class ParabolicDatum {
 public:
  // i0 is 0-based.  Unset i0 takes the diagram default.
  static ParabolicDatum make(Family family, int rank, std::optional<int> i0 = std::nullopt);

  const RootSystem& rs() const noexcept { return rs_; }
  int i0() const noexcept { return i0_; }
  int r() const noexcept { return r_; }
  int d_i0() const { return rs_.d(i0_); }
  const std::vector<int>& levi() const noexcept { return levi_; }  // I
  const std::vector<int>& word() const noexcept { return word_; }
  // beta_1, ..., beta_k in convex order
  const std::vector<Weight>& roots() const noexcept { return order_; }
  int size() const noexcept { return static_cast<int>(order_.size()); }
  // Position of a complement root in convex order, or -1.
  int index_of(const Weight& w) const;
  const Weight& lambda_r() const noexcept { return lambda_r_; }
  // Short label like "A3_i2" (1-based i0).
  std::string tag() const;
  std::string display() const;  // "(A_3, 2)"

 private:
  ParabolicDatum(RootSystem rs, int i0, int r);
  RootSystem rs_;
  int i0_;
  int r_;
  std::vector<int> levi_;
  std::vector<int> word_;
  std::vector<Weight> order_;
  Weight lambda_r_;
};

// Number of ways to write mu as a sum of positive roots (Kostant partition
// function), counted by a knapsack over the box below mu.
std::uint64_t kostant_partitions(const RootSystem& rs, const Weight& mu);

}  // namespace qbf
