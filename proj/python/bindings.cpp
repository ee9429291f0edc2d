#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "qbf/bfunc.hpp"
#include "qbf/suite.hpp"

namespace py = pybind11;
using namespace qbf;

namespace {

// i0 is 1-based here, as on the command line; E7 implies rank 7.
ParabolicDatum datum(const std::string& family, int rank, std::optional<int> i0) {
  const Family fam = parse_family(family);
  if (fam == Family::E && rank == 0) rank = 7;
  if (rank <= 0) throw std::invalid_argument("rank is required");
  if (i0) *i0 -= 1;
  return ParabolicDatum::make(fam, rank, i0);
}

// Owns the table the algebra points into.
struct Session {
  RelationTable table;
  std::unique_ptr<PBWAlgebra> alg;

  Session(const std::string& family, int rank, std::optional<int> i0, std::uint64_t seed,
          std::optional<std::string> level)
      : table(derive(family, rank, i0, seed, level)), alg(std::make_unique<PBWAlgebra>(table)) {}

  static RelationTable derive(const std::string& family, int rank, std::optional<int> i0, std::uint64_t seed,
                              const std::optional<std::string>& level) {
    const auto pd = datum(family, rank, i0);
    DeriveOptions o;
    o.seed = seed;
    o.level = level ? parse_level(*level) : default_level(pd);
    return derive_table(pd, o);
  }

  const ParabolicDatum& pd() const { return table.pd; }

  py::dict bfunction(const std::string& gauge, int smax) {
    const Gauge g = parse_gauge(gauge);
    if (smax < 0) smax = pd().r() + 1;
    const PBWElem f = construct_f(*alg, g);
    BFuncResult res = compute_bfunction(*alg, f, g, smax);
    py::dict out;
    std::map<int, std::string> samples;
    for (const auto& [s, b] : res.samples) samples[s] = b.str();
    out["samples"] = samples;
    out["poly_u"] = poly_str(res.poly);
    out["holdouts"] = res.holdouts;
    out["constant"] = res.constant ? py::object(py::str(res.constant->str())) : py::object(py::none());
    out["factored"] = factored_str(pd(), res.constant);
    out["classical"] = classical_str(res.expected_a2);
    out["theorem_ok"] = res.theorem_ok;
    out["classical_ok"] = res.classical_ok;
    out["constant_ok"] = res.constant_ok;
    return out;
  }

  py::dict verify(const std::vector<std::string>& only, std::uint64_t seed) {
    SuiteOptions opt;
    opt.seed = seed;
    opt.only.insert(only.begin(), only.end());
    py::dict out;
    for (const auto& c : run_suite(*alg, opt)) {
      py::dict e;
      e["pass"] = c.report.ok;
      e["checked"] = c.report.checked;
      e["failures"] = c.report.failures;
      out[py::str(c.name)] = e;
    }
    return out;
  }
};

}  // namespace

PYBIND11_MODULE(_qbfunc, m) {
  m.doc() = "Quantum b-functions of commutative parabolic prehomogeneous spaces";

  py::register_exception<NotProportional>(m, "NotProportional");
  py::register_exception<InterpolationMismatch>(m, "InterpolationMismatch");
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded");
  py::register_exception<DerivationError>(m, "DerivationError");

  py::class_<Session>(m, "Session")
      .def(py::init<const std::string&, int, std::optional<int>, std::uint64_t, std::optional<std::string>>(),
           py::arg("family"), py::arg("rank") = 0, py::arg("i0") = py::none(), py::arg("seed") = 1,
           py::arg("level") = py::none())
      .def_property_readonly("tag", [](const Session& s) { return s.pd().tag(); })
      .def_property_readonly("display", [](const Session& s) { return s.pd().display(); })
      .def_property_readonly("r", [](const Session& s) { return s.pd().r(); })
      .def_property_readonly("generators", [](const Session& s) { return s.pd().size(); })
      .def_property_readonly("level", [](const Session& s) { return level_name(s.table.level); })
      .def_property_readonly("table_hash", [](const Session& s) { return s.table.header_hash(); })
      .def("serialize", [](const Session& s) { return s.table.serialize(); })
      .def("bfunction", &Session::bfunction, py::arg("gauge") = "intrinsic", py::arg("smax") = -1)
      .def("verify", &Session::verify, py::arg("checks") = std::vector<std::string>{}, py::arg("seed") = 1);

  m.def("check_names", &suite_check_names);
  m.def(
      "theorem_product",
      [](const std::string& family, int rank, std::optional<int> i0, int s) {
        return theorem_product(datum(family, rank, i0), s).str();
      },
      py::arg("family"), py::arg("rank") = 0, py::arg("i0") = py::none(), py::arg("s") = 0);
}
