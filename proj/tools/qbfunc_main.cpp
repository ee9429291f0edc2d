// qbfunc: derive relation tables, compute quantum b-functions, run checks.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbf/bfunc.hpp"
#include "qbf/suite.hpp"

using json = nlohmann::json;
using namespace qbf;

namespace {

enum Exit { kOk = 0, kUsage = 1, kVerify = 2, kBudget = 3, kNotProportional = 4, kMismatch = 5 };

struct Config {
  std::string family;
  int rank = 0;
  int i0 = 0;  // 1-based, 0 = default
  std::uint64_t seed = 1;
  std::string level;  // empty: per-type default
  int smax = -1;
  std::string gauge = "intrinsic";
  std::string cache_dir;
  bool json_out = false;
  std::vector<std::string> checks;
  double budget_seconds = 0;
  std::size_t max_terms = 0;
  std::size_t max_memo = 0;
  int trials = 32;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ParabolicDatum datum(const Config& c) {
  Family fam;
  int rank = c.rank;
  try {
    fam = parse_family(c.family);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (fam == Family::E) {
    if (rank != 0 && rank != 7) throw UsageError("only E7 is supported");
    rank = 7;
  }
  if (rank <= 0) throw UsageError("--rank is required");
  try {
    return ParabolicDatum::make(fam, rank, c.i0 > 0 ? std::optional<int>(c.i0 - 1) : std::nullopt);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

DeriveOptions derive_options(const Config& c, const ParabolicDatum& pd) {
  DeriveOptions o;
  o.seed = c.seed;
  o.trials = c.trials;
  try {
    o.level = c.level.empty() ? default_level(pd) : parse_level(c.level);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (c.budget_seconds > 0)
    o.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(c.budget_seconds));
  return o;
}

std::string cache_dir(const Config& c) {
  if (!c.cache_dir.empty()) return c.cache_dir;
  if (const char* env = std::getenv("QB_CACHE_DIR"); env && *env) return env;
  return ".qbf-cache";
}

json type_json(const ParabolicDatum& pd) {
  return {{"family", family_name(pd.rs().family())}, {"rank", pd.rs().rank()}, {"i0", pd.i0() + 1},
          {"r", pd.r()}, {"generators", pd.size()}};
}

json table_json(const RelationTable& t) {
  std::size_t rp = 0, af = 0;
  for (const auto& row : t.rprime)
    for (const auto& x : row) rp += x.has_value();
  for (const auto& row : t.adf)
    for (const auto& x : row) af += x.has_value();
  return {{"rules", t.rules.size()},
          {"rprime_entries", rp},
          {"adf_entries", af},
          {"hash", t.header_hash()},
          {"verification",
           {{"level", level_name(t.level)}, {"seed", t.seed}, {"trials", t.trials},
            {"words_checked", t.words_checked}}}};
}

// Loads the cached table, or derives and stores it.  A stale or unreadable
// file is refused and replaced.
RelationTable obtain_table(const Config& c, const ParabolicDatum& pd, bool force, std::ostream& log) {
  const DeriveOptions o = derive_options(c, pd);
  const std::string dir = cache_dir(c);
  if (!force) {
    try {
      if (auto t = load_cached(dir, pd, o)) return std::move(*t);
    } catch (const std::exception& e) {
      log << "refusing cache " << cache_filename(pd, o) << ": " << e.what() << "\n";
    }
  }
  RelationTable t = derive_table(pd, o);
  store_cached(dir, t);
  return t;
}

void emit(const Config& c, const json& j, const std::string& human) {
  if (c.json_out)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human;
}

int cmd_derive(const Config& c) {
  const ParabolicDatum pd = datum(c);
  RelationTable t = obtain_table(c, pd, true, std::cerr);
  json j{{"schema", 1}, {"command", "derive"}, {"type", type_json(pd)}, {"table", table_json(t)},
         {"cache_file", cache_filename(pd, derive_options(c, pd))}};
  std::ostringstream h;
  h << pd.display() << ": " << pd.size() << " generators, " << t.rules.size() << " pair rules, verification "
    << level_name(t.level) << " (seed " << t.seed << ", " << t.words_checked << " words)\n"
    << "cache: " << (std::filesystem::path(cache_dir(c)) / cache_filename(pd, derive_options(c, pd))).string()
    << "\n";
  emit(c, j, h.str());
  return kOk;
}

Budget make_budget(const Config& c) {
  Budget b;
  b.max_terms = c.max_terms;
  b.max_memo = c.max_memo;
  if (c.budget_seconds > 0)
    b.deadline = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                        std::chrono::duration<double>(c.budget_seconds));
  return b;
}

Gauge gauge_for(const Config& c, const ParabolicDatum& pd) {
  Gauge g;
  try {
    g = parse_gauge(c.gauge);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (g == Gauge::Explicit && pd.rs().family() == Family::E)
    throw UsageError("no explicit construction for E7; use --gauge intrinsic");
  return g;
}

json samples_json(const std::map<int, QScalar>& s) {
  json j = json::object();
  for (const auto& [k, v] : s) j[std::to_string(k)] = v.str();
  return j;
}

int cmd_compute(const Config& c) {
  const ParabolicDatum pd = datum(c);
  const Gauge gauge = gauge_for(c, pd);
  RelationTable t = obtain_table(c, pd, false, std::cerr);
  PBWAlgebra alg(t);
  const int smax = c.smax >= 0 ? c.smax : (pd.rs().family() == Family::E ? 3 : pd.r() + 1);
  const Budget budget = make_budget(c);
  const ClassicalData cd = classical_data(pd);
  json expected_a = json::array();
  for (int a2 : cd.a2) expected_a.push_back(a2 % 2 == 0 ? std::to_string(a2 / 2) : std::to_string(a2) + "/2");

  json j{{"schema", 1}, {"command", "compute"}, {"type", type_json(pd)}, {"gauge", gauge_name(gauge)},
         {"smax", smax}, {"expected_a", expected_a}, {"expected_classical", classical_str(cd.a2)}};
  PBWElem f = construct_f(alg, gauge);
  j["f_terms"] = f.size();

  std::map<int, QScalar> partial;
  BFuncResult res;
  try {
    res = compute_bfunction(alg, f, gauge, smax, budget, &partial);
  } catch (const BudgetExceeded& e) {
    j["complete"] = false;
    j["samples"] = samples_json(partial);
    j["error"] = std::string("budget: ") + e.what();
    emit(c, j, "budget exhausted after " + std::to_string(partial.size()) + " samples\n");
    return kBudget;
  }

  json poly = json::array();
  for (const auto& x : res.poly) poly.push_back(x.str());
  json classical = json::array();
  for (const auto& x : res.classical) classical.push_back(x.get_str());
  j["complete"] = true;
  j["samples"] = samples_json(res.samples);
  j["poly_u"] = poly;
  j["holdouts"] = res.holdouts;
  j["constant"] = res.constant ? json(res.constant->str()) : json(nullptr);
  j["expected_constant"] =
      gauge == Gauge::Explicit && cd.explicit_constant ? json(cd.explicit_constant->str()) : json(nullptr);
  j["classical_coeffs"] = classical;
  j["factored"] = factored_str(pd, res.constant);
  j["constant_shape"] = nullptr;
  if (res.constant)
    if (auto shape = constant_shape(*res.constant)) j["constant_shape"] = *shape;
  j["theorem_check"] = res.theorem_ok;
  j["classical_limit"] = res.classical_ok;
  j["constant_check"] = res.constant_ok;
  j["notes"] = res.notes;
  const bool pass = res.theorem_ok && res.classical_ok && res.constant_ok;
  j["pass"] = pass;

  std::ostringstream h;
  h << pd.display() << ", " << gauge_name(gauge) << " gauge, s = 0.." << smax << "\n";
  h << factored_str(pd, res.constant) << "\n";
  if (res.constant)
    if (auto shape = constant_shape(*res.constant)) h << "c = " << *shape << "\n";
  h << "classical limit " << classical_str(cd.a2) << ": " << (res.classical_ok ? "ok" : "FAIL") << "\n";
  h << "theorem check: " << (res.theorem_ok ? "ok" : "FAIL") << ", holdouts " << res.holdouts << "\n";
  if (gauge == Gauge::Explicit && cd.explicit_constant)
    h << "expected constant " << cd.explicit_constant->str() << ": " << (res.constant_ok ? "ok" : "FAIL") << "\n";
  for (const auto& n : res.notes) h << "  " << n << "\n";
  emit(c, j, h.str());
  return pass ? kOk : kVerify;
}

int cmd_verify(const Config& c) {
  const ParabolicDatum pd = datum(c);
  const Gauge gauge = gauge_for(c, pd);
  RelationTable t = obtain_table(c, pd, false, std::cerr);
  PBWAlgebra alg(t);
  SuiteOptions opt;
  opt.seed = c.seed;
  opt.gauge = gauge;
  if (c.smax >= 0) {
    opt.gram_smax = c.smax;
    opt.holdout_smax = std::max(c.smax, pd.r() + 1);
  }
  opt.only.insert(c.checks.begin(), c.checks.end());
  std::vector<NamedCheck> res;
  try {
    res = run_suite(alg, opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool all = true;
  json checks = json::object();
  std::ostringstream h;
  h << pd.display() << " property suite\n";
  for (const auto& nc : res) {
    all = all && nc.report.ok;
    checks[nc.name] = {{"pass", nc.report.ok}, {"checked", nc.report.checked}, {"identity", nc.identity},
                       {"failures", nc.report.failures}};
    h << "  " << (nc.report.ok ? "ok  " : "FAIL") << " " << nc.name << " (" << nc.report.checked << ")  "
      << nc.identity << "\n";
    for (const auto& f : nc.report.failures) h << "        " << f << "\n";
  }
  json j{{"schema", 1}, {"command", "verify"}, {"type", type_json(pd)}, {"gauge", gauge_name(gauge)},
         {"checks", checks}, {"pass", all}, {"table_hash", t.header_hash()}};
  emit(c, j, h.str());
  return all ? kOk : kVerify;
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--family", c.family, "A, B, C, D or E7")->required();
  sub->add_option("--rank", c.rank, "rank n (implied for E7)");
  sub->add_option("--i0", c.i0, "distinguished vertex, 1-based");
  sub->add_option("--seed", c.seed, "word sampling seed");
  sub->add_option("--verify-level", c.level, "probabilistic or rank_complete")
      ->check(CLI::IsMember({"probabilistic", "rank_complete"}));
  sub->add_option("--trials", c.trials, "extra words per check in probabilistic mode");
  sub->add_option("--cache-dir", c.cache_dir, "table cache (default $QB_CACHE_DIR or .qbf-cache)");
  sub->add_option("--budget-seconds", c.budget_seconds, "wall-clock budget");
  sub->add_flag("--json", c.json_out, "JSON output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum b-functions of commutative parabolic prehomogeneous spaces"};
  app.require_subcommand(1);
  Config c;
  auto* derive = app.add_subcommand("derive", "derive and cache the relation table");
  auto* compute = app.add_subcommand("compute", "b(s) samples, interpolation and checks");
  auto* verify = app.add_subcommand("verify", "property suite");
  for (auto* s : {derive, compute, verify}) add_common(s, c);
  for (auto* s : {compute, verify}) {
    s->add_option("--smax", c.smax, "largest s");
    s->add_option("--gauge", c.gauge, "intrinsic or explicit")->check(CLI::IsMember({"intrinsic", "explicit"}));
  }
  compute->add_option("--max-terms", c.max_terms, "monomial budget per element");
  compute->add_option("--max-memo", c.max_memo, "budget of memoized operator images");
  verify->add_option("--checks", c.checks, "subset of checks")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  try {
    if (derive->parsed()) return cmd_derive(c);
    if (compute->parsed()) return cmd_compute(c);
    return cmd_verify(c);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const DerivationError& e) {
    std::cerr << "derivation: " << e.what() << "\n";
    return e.kind() == DerivationError::Kind::Budget ? kBudget : kVerify;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kBudget;
  } catch (const NotProportional& e) {
    std::cerr << "not proportional: " << e.what() << "\n";
    return kNotProportional;
  } catch (const InterpolationMismatch& e) {
    std::cerr << "interpolation mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerify;
  }
}
