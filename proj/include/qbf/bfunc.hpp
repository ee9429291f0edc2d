#pragma once

// Relative invariants f_{q,p}, the samples b_{q,r}(s) defined by
// tf(d) f^{s+1} = b(s) f^s, interpolation in u = q_{i0}^{2s}, and the
// checks against the closed form prod q0^{s+a-1} [s+a]_{q0}.

#include <chrono>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbf/pbw.hpp"

namespace qbf {

class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotProportional : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InterpolationMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Gauge { Intrinsic, Explicit };
std::string gauge_name(Gauge g);
Gauge parse_gauge(const std::string& s);

// Exponents a_i of the classical b-function, stored doubled (a = a2 / 2).
struct ClassicalData {
  std::vector<int> a2;
  // b_{q,r} constant when f is built by construct_f_explicit; absent for E7.
  std::optional<QScalar> explicit_constant;
};
ClassicalData classical_data(const ParabolicDatum& pd);

// q0^{x-1} [x]_{q0} with x = s + a2/2 and q0 = q^d.
QScalar theorem_factor(int s, int a2, int d);
QScalar theorem_product(const ParabolicDatum& pd, int s);
// The same product as a polynomial in u = q0^{2s}, lowest degree first.
std::vector<QScalar> theorem_poly(const ParabolicDatum& pd);
// q0-number [x]_{q0} for x = x2 / 2; q0^{x2/2} must be an integral power of q.
QScalar qnum_half(int x2, int d);

struct Budget {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::size_t max_terms = 0;  // 0: unlimited
  std::size_t max_memo = 0;   // memoized operator images, 0: unlimited
  void check(std::size_t terms = 0) const;
};

PBWElem construct_f_intrinsic(PBWAlgebra& alg);
// Classical types only; p <= r.  Throws std::invalid_argument for E7.
PBWElem construct_f_explicit(PBWAlgebra& alg, int p);
PBWElem construct_f(PBWAlgebra& alg, Gauge g);

struct InvariantLadder {
  std::vector<PBWElem> fs;     // f_{q,1}, ..., f_{q,r}
  std::vector<Weight> lambdas;  // lambda_p, negative coordinates
  std::vector<Weight> gammas;   // gamma_p = lambda_{p-1} - lambda_p
  Gauge source = Gauge::Explicit;
};
InvariantLadder ladder(PBWAlgebra& alg);
CheckReport ladder_check(PBWAlgebra& alg, const InvariantLadder& lad);

// b(s) for s = 0..smax; the powers f^{s+1} are kept in `powers` when given,
// and finished samples land in `partial` as they complete.
std::map<int, QScalar> b_samples(PBWAlgebra& alg, const PBWElem& f, int smax, const Budget& budget = {},
                                 std::vector<PBWElem>* powers = nullptr, std::map<int, QScalar>* partial = nullptr);

// Degree-`degree` polynomial in u = q^{2ds} through the first degree+1
// samples; every further sample must lie on it.
std::vector<QScalar> interpolate(const std::map<int, QScalar>& samples, int degree, int d);
QScalar poly_eval(const std::vector<QScalar>& poly, const QScalar& u);
std::string poly_str(const std::vector<QScalar>& poly, const std::string& var = "u");

struct BFuncResult {
  std::map<int, QScalar> samples;
  std::vector<QScalar> poly;       // empty when too few samples to interpolate
  int holdouts = 0;
  std::vector<int> expected_a2;
  std::optional<QScalar> constant;  // c with b = c * theorem product
  std::vector<Rational> classical;  // monic, in s, lowest degree first
  bool theorem_ok = false;
  bool classical_ok = false;
  bool constant_ok = true;         // explicit-gauge constant up to sign
  std::vector<std::string> notes;
};

// On BudgetExceeded the finished samples are left in `partial` when given.
BFuncResult compute_bfunction(PBWAlgebra& alg, const PBWElem& f, Gauge gauge, int smax, const Budget& budget = {},
                              std::map<int, QScalar>* partial = nullptr);

// Pointwise: b(s) / theorem product is one s-independent scalar.
CheckReport theorem_check(const ParabolicDatum& pd, BFuncResult& res, Gauge gauge);
// Monic polynomial in s through b(s) at q = 1, after removing the power of
// (q - 1) common to all samples, compared with prod (s + a_i).
CheckReport classical_limit(const ParabolicDatum& pd, BFuncResult& res);
std::string factored_str(const ParabolicDatum& pd, const std::optional<QScalar>& c);
std::string classical_str(const std::vector<int>& a2);
// c as +-q^a (q+q^-1)^b when it has that shape (|b| <= 16), e.g. "(q+q^-1)^-2".
std::optional<std::string> constant_shape(const QScalar& c);

// <f^{s+1}, f^{s+1}> = b(s) ... b(0), the left side by the monomial operators.
CheckReport gram_check(PBWAlgebra& alg, const PBWElem& f, const std::map<int, QScalar>& samples, int smax,
                       const std::vector<PBWElem>* powers = nullptr);
// ad(E_i) f = ad(F_i) f = 0, the weight, centrality, r'_{i0} f != 0 = r'^2_{i0} f.
CheckReport invariance_check(PBWAlgebra& alg, const PBWElem& f);
// r'_{i0}(Y_beta) = delta on every generator, from the table and the algebra.
CheckReport rprime_generator_check(PBWAlgebra& alg);
// tY_beta(d)(f^n y) = tY_beta(d)(f^n) ad(K_beta^{-1}) y + f^n tY_beta(d) y and
// tY_beta(d)(f^n) = q0^{n-1} [n]_{q0} f^{n-1} tY_beta(d) f, n <= nmax.
CheckReport product_rule_check(PBWAlgebra& alg, const PBWElem& f, int nmax, std::uint64_t seed);
// tf(d) commutes with ad(E_i), ad(F_i) on sampled inputs.
CheckReport operator_commutation_check(PBWAlgebra& alg, const PBWElem& f, std::uint64_t seed);
// Per-type identities for tY(d) f_{q,p} and the Gram ratios a_p(s).
CheckReport lemma_oracles(PBWAlgebra& alg, const InvariantLadder& lad, int smax = 2);

}  // namespace qbf
