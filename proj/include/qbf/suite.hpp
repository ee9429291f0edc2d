#pragma once

// The named property checks behind `verify` and the acceptance suite.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qbf/bfunc.hpp"

namespace qbf {

struct SuiteOptions {
  std::uint64_t seed = 1;
  int pairs = 100;       // random homogeneous pairs for symmetry / adjointness
  int max_degree = 3;    // of those pairs
  int hilbert_degree = 5;
  int gram_smax = 2;
  int product_n = 3;
  int holdout_smax = -1;  // -1: r + 1
  Gauge gauge = Gauge::Intrinsic;
  std::set<std::string> only;  // empty: every check
};

struct NamedCheck {
  std::string name;
  std::string identity;  // what is asserted, in words
  CheckReport report;
};

const std::vector<std::string>& suite_check_names();
std::string suite_identity(const std::string& name);

CheckReport norms_check(PBWAlgebra& alg);
CheckReport symmetry_check(PBWAlgebra& alg, int pairs, int max_degree, std::uint64_t seed);
CheckReport adjointness_check(PBWAlgebra& alg, int pairs, int max_degree, std::uint64_t seed);
// tx(d) for x the normal form of a generator word equals the letters applied in turn.
CheckReport anti_multiplicativity_check(PBWAlgebra& alg, int pairs, int max_degree, std::uint64_t seed);

// Runs the selected checks in the fixed order of suite_check_names().
// Throws std::invalid_argument on an unknown name in opt.only.
std::vector<NamedCheck> run_suite(PBWAlgebra& alg, const SuiteOptions& opt);

}  // namespace qbf
