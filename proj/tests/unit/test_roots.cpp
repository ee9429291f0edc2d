#include <algorithm>
#include <set>

#include "doctest.h"
#include "qbf/roots.hpp"

using namespace qbf;

TEST_CASE("positive root counts") {
  CHECK(RootSystem(Family::A, 3).positive_roots().size() == 6);
  CHECK(RootSystem(Family::A, 5).positive_roots().size() == 15);
  CHECK(RootSystem(Family::B, 3).positive_roots().size() == 9);
  CHECK(RootSystem(Family::C, 3).positive_roots().size() == 9);
  CHECK(RootSystem(Family::D, 4).positive_roots().size() == 12);
  CHECK(RootSystem(Family::D, 6).positive_roots().size() == 30);
  CHECK(RootSystem(Family::E, 7).positive_roots().size() == 63);
  CHECK_THROWS(RootSystem(Family::E, 6));
  CHECK_THROWS(RootSystem(Family::D, 3));
}

TEST_CASE("pairing normalization") {
  RootSystem b3(Family::B, 3);
  CHECK(b3.pair(b3.simple(0), b3.simple(0)) == 4);
  CHECK(b3.pair(b3.simple(2), b3.simple(2)) == 2);
  CHECK(b3.pair2(b3.simple(2), b3.simple(2)) == 4);
  CHECK(b3.cartan(1, 2) == -1);
  CHECK(b3.cartan(2, 1) == -2);
  RootSystem c3(Family::C, 3);
  CHECK(c3.pair(c3.simple(2), c3.simple(2)) == 4);
  CHECK(c3.cartan(2, 1) == -1);
  CHECK(c3.cartan(1, 2) == -2);
  for (int i = 0; i < 3; ++i) CHECK(b3.coroot_coord(b3.simple(i), i) == 2);
  // every root has norm 2 or 4 and short roots are the norm-2 ones
  for (const auto& r : b3.positive_roots()) {
    int n = b3.pair(r, r);
    CHECK((n == 2 || n == 4));
  }
}

TEST_CASE("E7 labeling") {
  RootSystem e(Family::E, 7);
  // vertex 5 hangs off vertex 4; chain 1-2-3-4-6-7
  CHECK(e.cartan(3, 4) == -1);
  CHECK(e.cartan(3, 5) == -1);
  CHECK(e.cartan(4, 5) == 0);
  CHECK(e.cartan(5, 6) == -1);
  int degree3 = 0;
  for (int j = 0; j < 7; ++j) {
    int deg = 0;
    for (int k = 0; k < 7; ++k)
      if (k != j && e.cartan(j, k) != 0) ++deg;
    if (deg == 3) ++degree3;
  }
  CHECK(degree3 == 1);
}

TEST_CASE("reduced words") {
  RootSystem a1(Family::A, 1);
  CHECK(reduced_word(a1, a1.identity()).empty());
  CHECK(reduced_word(a1, a1.longest_element({0})) == std::vector<int>{0});
  RootSystem a3(Family::A, 3);
  IntMatrix bad = a3.identity();
  bad[0][0] = 2;
  CHECK_THROWS(reduced_word(a3, bad));
}

namespace {

// Brute force over all words of length 4 in A_3: keep those equal to
// w_I w_0 (as matrices).  Each is reduced since the length is minimal.
std::vector<std::vector<int>> all_reduced_words(const RootSystem& rs, const IntMatrix& target, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(len, 0);
  const int n = rs.rank();
  int total = 1;
  for (int k = 0; k < len; ++k) total *= n;
  for (int code = 0; code < total; ++code) {
    int c = code;
    IntMatrix m = rs.identity();
    for (int k = 0; k < len; ++k) {
      w[k] = c % n;
      c /= n;
      m = mat_mul(m, rs.reflection_matrix(w[k]));
    }
    if (m == target) out.push_back(w);
  }
  return out;
}

}  // namespace

TEST_CASE("parabolic data") {
  auto a3 = ParabolicDatum::make(Family::A, 3);
  CHECK(a3.i0() == 1);
  CHECK(a3.r() == 2);
  CHECK(a3.size() == 4);
  CHECK(a3.word().size() == 4);
  CHECK(a3.lambda_r() == Weight{-1, -2, -1});

  // brute force: no word of length 3 gives w_I w_0, and every length-4 word
  // that does yields the complement roots as its beta set
  const RootSystem& rs = a3.rs();
  IntMatrix target = mat_mul(rs.longest_element({0, 2}), rs.longest_element({0, 1, 2}));
  CHECK(all_reduced_words(rs, target, 3).empty());
  CHECK(all_reduced_words(rs, target, 2).empty());
  auto words = all_reduced_words(rs, target, 4);
  CHECK(!words.empty());
  CHECK(std::find(words.begin(), words.end(), a3.word()) != words.end());
  std::set<Weight> expect(a3.roots().begin(), a3.roots().end());
  for (const auto& w : words) {
    std::set<Weight> betas;
    IntMatrix pre = rs.identity();
    for (int letter : w) {
      betas.insert(mat_apply(pre, rs.simple(letter)));
      pre = mat_mul(pre, rs.reflection_matrix(letter));
    }
    CHECK(betas == expect);
  }

  auto b3 = ParabolicDatum::make(Family::B, 3);
  CHECK(b3.d_i0() == 2);
  CHECK(b3.size() == 5);
  auto e7 = ParabolicDatum::make(Family::E, 7);
  CHECK(e7.r() == 3);
  CHECK(e7.size() == 27);
  CHECK(ParabolicDatum::make(Family::A, 5).size() == 9);
  CHECK(ParabolicDatum::make(Family::C, 3).size() == 6);
  CHECK(ParabolicDatum::make(Family::C, 4).size() == 10);
  CHECK(ParabolicDatum::make(Family::D, 4).size() == 6);
  CHECK(ParabolicDatum::make(Family::D, 5).size() == 8);
  CHECK(ParabolicDatum::make(Family::D, 4, 3).size() == 6);
  CHECK(ParabolicDatum::make(Family::D, 6, 5).size() == 15);
  CHECK(ParabolicDatum::make(Family::D, 6, 5).r() == 3);
  CHECK(ParabolicDatum::make(Family::A, 1).r() == 1);
  CHECK_THROWS(ParabolicDatum::make(Family::A, 4));
  CHECK_THROWS(ParabolicDatum::make(Family::D, 5, 4));
  CHECK_THROWS(ParabolicDatum::make(Family::A, 3, 0));
  CHECK_THROWS(ParabolicDatum::make(Family::C, 2));

  for (auto pd : {a3, b3, e7, ParabolicDatum::make(Family::C, 3), ParabolicDatum::make(Family::D, 4, 3)}) {
    const auto& R = pd.rs();
    CHECK(pd.roots().front() == R.simple(pd.i0()));
    CHECK(R.coroot_coord(pd.lambda_r(), pd.i0()) == -2);
    for (int i : pd.levi()) CHECK(R.coroot_coord(pd.lambda_r(), i) == 0);
    CHECK(is_nonneg(scaled(pd.lambda_r(), -1)));
    for (const auto& b : pd.roots()) CHECK(b[pd.i0()] == 1);
  }
}

TEST_CASE("Kostant partition function") {
  RootSystem a2(Family::A, 2);
  CHECK(kostant_partitions(a2, {1, 1}) == 2);
  CHECK(kostant_partitions(a2, {2, 2}) == 3);
  RootSystem a3(Family::A, 3);
  CHECK(kostant_partitions(a3, {1, 1, 1}) == 4);
  CHECK(kostant_partitions(a3, {1, -1, 0}) == 0);
}
