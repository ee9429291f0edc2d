#include "qbf/suite.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>

namespace qbf {

namespace {

const std::map<std::string, std::string>& identities() {
  static const std::map<std::string, std::string> m{
      {"norms", "<Y_b, Y_b> = [(b,b)/2]_q^-1 and <Y_b, Y_c> = 0 for b != c"},
      {"symmetry", "<x, y> = <y, x> on random homogeneous pairs"},
      {"adjointness", "<ad(E_i) x, y> = <x, ad(F_i) y> on random homogeneous pairs"},
      {"anti_multiplicativity", "t(x y)(d) = t(y)(d) t(x)(d): a straightened word acts as its letters in turn"},
      {"confluence", "(Y_c Y_b) Y_a = Y_c (Y_b Y_a) after straightening, every c > b > a"},
      {"hilbert", "ordered monomials: C(k+m-1, m) of degree m, independent under the pairing"},
      {"rprime_delta", "r'_i0(Y_b) = delta(b, a_i0) on every generator"},
      {"invariance", "ad(E_i) f = ad(F_i) f = 0, weight -2w_i0, f central, r'_i0 f != 0 = r'_i0^2 f"},
      {"ladder", "f_p has degree p and weight lambda_p; the gammas are orthogonal complement roots"},
      {"gram", "<f^{s+1}, f^{s+1}> = b(s) b(s-1) ... b(0)"},
      {"product_rule", "tY_b(d)(f^n y) = tY_b(d)(f^n) ad(K_b^-1) y + f^n tY_b(d) y"},
      {"commutation", "tf(d) commutes with ad(E_i) and ad(F_i)"},
      {"lemmas", "per-type formulas for tY(d) f_p and the Gram ratios a_p(s)"},
      {"holdout", "samples past the first r + 1 lie on the degree-r interpolant in u"},
  };
  return m;
}

Mono random_mono(PBWAlgebra& alg, int m, std::mt19937_64& rng) {
  Mono x = alg.unit_mono();
  for (int t = 0; t < m; ++t) ++x[rng() % static_cast<std::uint64_t>(alg.k())];
  return x;
}

bool nonnegative(const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](int c) { return c >= 0; });
}

}  // namespace

const std::vector<std::string>& suite_check_names() {
  static const std::vector<std::string> v{"norms", "symmetry", "adjointness", "anti_multiplicativity",
                                          "confluence", "hilbert",
                                          "rprime_delta", "invariance", "ladder", "gram", "product_rule",
                                          "commutation", "lemmas", "holdout"};
  return v;
}

std::string suite_identity(const std::string& name) {
  auto it = identities().find(name);
  if (it == identities().end()) throw std::invalid_argument("unknown check: " + name);
  return it->second;
}

CheckReport norms_check(PBWAlgebra& alg) {
  CheckReport rep;
  const ParabolicDatum& pd = alg.pd();
  for (int a = 0; a < alg.k(); ++a)
    for (int b = 0; b < alg.k(); ++b) {
      ++rep.checked;
      const QScalar v = alg.bilinear(alg.gen(a), alg.gen(b));
      const Weight& beta = pd.roots()[a];
      const QScalar want = a == b ? qint(pd.rs().pair(beta, beta) / 2).inverse() : QScalar();
      if (v != want)
        rep.fail("<Y_" + std::to_string(a + 1) + ", Y_" + std::to_string(b + 1) + "> = " + v.str() + ", want " +
                 want.str());
    }
  return rep;
}

CheckReport symmetry_check(PBWAlgebra& alg, int pairs, int max_degree, std::uint64_t seed) {
  CheckReport rep;
  std::mt19937_64 rng(seed ^ 0x5e11);
  while (rep.checked < static_cast<std::uint64_t>(pairs)) {
    const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree));
    const Mono x = random_mono(alg, m, rng);
    auto basis = alg.weight_space_basis(alg.weight(x), m);
    const Mono y = basis[rng() % basis.size()];
    // a random combination on one side exercises bilinearity as well
    PBWElem yy = PBWElem::monomial(y);
    yy.add_term(x, QScalar::q_pow(static_cast<int>(rng() % 5) - 2));
    const PBWElem xx = PBWElem::monomial(x);
    ++rep.checked;
    const QScalar l = alg.bilinear(xx, yy), r = alg.bilinear(yy, xx);
    if (l != r) rep.fail("<x, y> != <y, x> at x = " + alg.mono_str(x) + ", y = " + alg.str(yy));
  }
  return rep;
}

CheckReport adjointness_check(PBWAlgebra& alg, int pairs, int max_degree, std::uint64_t seed) {
  CheckReport rep;
  const auto& levi = alg.pd().levi();
  if (levi.empty()) return rep;
  std::mt19937_64 rng(seed ^ 0xad70);
  std::uint64_t attempts = 0;
  while (rep.checked < static_cast<std::uint64_t>(pairs) && attempts < 100ULL * static_cast<std::uint64_t>(pairs)) {
    ++attempts;
    const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree));
    const Mono x = random_mono(alg, m, rng);
    const int i = levi[rng() % levi.size()];
    const Weight mu = alg.weight(x) - alg.pd().rs().simple(i);
    if (!nonnegative(mu)) continue;
    auto basis = alg.weight_space_basis(mu, m);
    if (basis.empty()) continue;
    const PBWElem xx = PBWElem::monomial(x), yy = PBWElem::monomial(basis[rng() % basis.size()]);
    ++rep.checked;
    const QScalar l = alg.bilinear(alg.ad_e(i, xx), yy), r = alg.bilinear(xx, alg.ad_f(i, yy));
    if (l != r)
      rep.fail("adjointness fails for i = " + std::to_string(i + 1) + " at x = " + alg.mono_str(x) +
               ", y = " + alg.str(yy));
  }
  if (rep.checked < static_cast<std::uint64_t>(pairs))
    rep.fail("only " + std::to_string(rep.checked) + " admissible pairs found");
  return rep;
}

CheckReport anti_multiplicativity_check(PBWAlgebra& alg, int pairs, int max_degree, std::uint64_t seed) {
  CheckReport rep;
  std::mt19937_64 rng(seed ^ 0xa171);
  while (rep.checked < static_cast<std::uint64_t>(pairs)) {
    const int m = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, max_degree - 1)));
    std::vector<int> word(static_cast<std::size_t>(m));
    for (auto& g : word) g = static_cast<int>(rng() % static_cast<std::uint64_t>(alg.k()));
    PBWElem z = PBWElem::monomial(random_mono(alg, m + static_cast<int>(rng() % 2), rng));
    for (int g : word) z = alg.mul_gen(z, g);  // so that the operators reach the unit
    PBWElem seq = z;
    for (int g : word) seq = alg.t_op(g, seq);
    ++rep.checked;
    if (alg.t_op_elem(alg.normal_form(word), z) != seq) {
      std::string w;
      for (int g : word) w += "Y" + std::to_string(g + 1) + " ";
      rep.fail("straightened " + w + "acts differently from its letters");
    }
  }
  return rep;
}

std::vector<NamedCheck> run_suite(PBWAlgebra& alg, const SuiteOptions& opt) {
  for (const auto& n : opt.only) suite_identity(n);
  auto want = [&](const std::string& n) { return opt.only.empty() || opt.only.count(n) > 0; };
  const ParabolicDatum& pd = alg.pd();
  const bool classical = pd.rs().family() != Family::E;
  const Gauge gauge = classical ? opt.gauge : Gauge::Intrinsic;

  std::optional<PBWElem> f;
  auto get_f = [&]() -> const PBWElem& {
    if (!f) f = construct_f(alg, gauge);
    return *f;
  };
  std::vector<PBWElem> powers;
  std::map<int, QScalar> samples;
  auto get_samples = [&](int smax) -> const std::map<int, QScalar>& {
    if (samples.empty() || samples.rbegin()->first < smax) samples = b_samples(alg, get_f(), smax, {}, &powers);
    return samples;
  };

  std::vector<NamedCheck> out;
  for (const std::string& name : suite_check_names()) {
    if (!want(name)) continue;
    CheckReport rep;
    try {
      if (name == "norms") {
        rep = norms_check(alg);
      } else if (name == "symmetry") {
        rep = symmetry_check(alg, opt.pairs, opt.max_degree, opt.seed);
      } else if (name == "adjointness") {
        rep = adjointness_check(alg, opt.pairs, opt.max_degree, opt.seed);
      } else if (name == "anti_multiplicativity") {
        rep = anti_multiplicativity_check(alg, opt.pairs, opt.max_degree, opt.seed);
      } else if (name == "confluence") {
        rep = alg.confluence_check();
      } else if (name == "hilbert") {
        rep = alg.hilbert_check(opt.hilbert_degree, opt.seed);
      } else if (name == "rprime_delta") {
        rep = rprime_generator_check(alg);
      } else if (name == "invariance") {
        rep = invariance_check(alg, get_f());
      } else if (name == "ladder") {
        if (classical) rep = ladder_check(alg, ladder(alg));
      } else if (name == "gram") {
        rep = gram_check(alg, get_f(), get_samples(opt.gram_smax), opt.gram_smax, &powers);
      } else if (name == "product_rule") {
        rep = product_rule_check(alg, get_f(), opt.product_n, opt.seed);
      } else if (name == "commutation") {
        rep = operator_commutation_check(alg, get_f(), opt.seed);
      } else if (name == "lemmas") {
        if (classical) rep = lemma_oracles(alg, ladder(alg), 2);
      } else if (name == "holdout") {
        const int smax = opt.holdout_smax >= 0 ? opt.holdout_smax : pd.r() + 1;
        const auto& s = get_samples(smax);
        std::map<int, QScalar> head(s.begin(), s.upper_bound(smax));
        rep.checked = head.size();
        if (static_cast<int>(head.size()) < pd.r() + 2) {
          rep.fail("need r + 2 samples for a holdout");
        } else {
          interpolate(head, pd.r(), pd.d_i0());
        }
      }
    } catch (const InterpolationMismatch& e) {
      rep.fail(e.what());
    } catch (const NotProportional& e) {
      rep.fail(e.what());
    } catch (const DimensionError& e) {
      rep.fail(e.what());
    }
    out.push_back({name, suite_identity(name), std::move(rep)});
  }
  return out;
}

}  // namespace qbf
