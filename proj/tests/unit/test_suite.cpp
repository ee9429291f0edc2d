#include "doctest.h"
#include "qbf/suite.hpp"

using namespace qbf;

TEST_CASE("full suite on (C_3,3)") {
  auto pd = ParabolicDatum::make(Family::C, 3);
  RelationTable t = derive_table(pd, {});
  PBWAlgebra alg(t);
  SuiteOptions opt;
  opt.hilbert_degree = 4;
  auto res = run_suite(alg, opt);
  CHECK(res.size() == suite_check_names().size());
  for (auto& c : res) {
    CAPTURE(c.name);
    for (auto& s : c.report.failures) MESSAGE(s);
    CHECK(c.report.ok);
    if (c.name == "symmetry" || c.name == "adjointness") CHECK(c.report.checked >= 100);
  }
}

TEST_CASE("check filter") {
  auto pd = ParabolicDatum::make(Family::A, 3);
  RelationTable t = derive_table(pd, {});
  PBWAlgebra alg(t);
  SuiteOptions opt;
  opt.only = {"gram"};
  auto res = run_suite(alg, opt);
  REQUIRE(res.size() == 1);
  CHECK(res[0].name == "gram");
  CHECK(res[0].report.checked == 3);
  opt.only = {"nonsense"};
  CHECK_THROWS_AS(run_suite(alg, opt), std::invalid_argument);
}

TEST_CASE("a perturbed rule breaks confluence or independence") {
  auto pd = ParabolicDatum::make(Family::C, 3);
  RelationTable t = derive_table(pd, {});
  // scale the first correction term of some non-commuting pair
  for (auto& [key, terms] : t.rules)
    if (terms.size() > 1) {
      terms.back().c = terms.back().c * QScalar(2);
      break;
    }
  PBWAlgebra alg(t);
  const bool conf = alg.confluence_check().ok;
  const bool hil = alg.hilbert_check(3, 1).ok;
  CHECK_FALSE((conf && hil));
}
