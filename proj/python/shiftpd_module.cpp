#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shiftpd/binary_tree.hpp"
#include "shiftpd/errors.hpp"
#include "shiftpd/hardpolys.hpp"
#include "shiftpd/measures.hpp"
#include "shiftpd/residue.hpp"
#include "shiftpd/serialize.hpp"
#include "shiftpd/sweep.hpp"
#include "shiftpd/upt.hpp"
#include "shiftpd/verify.hpp"

namespace py = pybind11;
using namespace shiftpd;

namespace {

// Results cross the boundary as plain dicts, using the same JSON the CLI prints.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(dump(j)); }

MeasureOptions measure_options(const std::string& field) {
  MeasureOptions o;
  o.field = Field::parse(field);
  return o;
}

py::dict report_dict(const CheckReport& r) {
  py::list failures;
  for (const auto& f : r.failures) failures.append(py::make_tuple(f.where, f.detail));
  py::dict d;
  d["name"] = r.name;
  d["cases"] = r.cases;
  d["failures"] = failures;
  d["notes"] = r.notes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_shiftpd, m) {
  m.doc() = "Shifted-partial measures, hard polynomial families and formula decompositions";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());

  py::class_<Polynomial>(m, "Polynomial")
      .def_property_readonly("nvars", &Polynomial::nvars)
      .def_property_readonly("degree", &Polynomial::degree)
      .def("is_zero", &Polynomial::is_zero)
      .def("__add__", &poly_add)
      .def("__mul__", &poly_mul)
      .def("__eq__", [](const Polynomial& a, const Polynomial& b) { return a == b; })
      .def("__str__", &format_polynomial)
      .def("__repr__", [](const Polynomial& p) { return "Polynomial('" + format_polynomial(p) + "')"; });

  m.def(
      "parse_polynomial",
      [](const std::string& text, std::optional<std::uint32_t> nvars, const std::string& field) {
        return parse_polynomial(text, nvars, Field::parse(field));
      },
      py::arg("text"), py::arg("nvars") = py::none(), py::arg("field") = "rational");

  m.def(
      "sp_measure",
      [](const Polynomial& p, std::uint32_t k, std::uint32_t l, const std::string& field) {
        return to_py(to_json(sp_measure(p, k, l, measure_options(field))));
      },
      py::arg("p"), py::arg("k"), py::arg("l"), py::arg("field") = "rational");
  m.def(
      "pd_measure",
      [](const Polynomial& p, std::uint32_t k, const std::string& field) {
        return to_py(to_json(pd_measure(p, k, measure_options(field))));
      },
      py::arg("p"), py::arg("k"), py::arg("field") = "rational");
  m.def(
      "residue",
      [](std::uint32_t k, const std::vector<std::uint32_t>& degrees) { return to_py(to_json(residue(k, degrees))); },
      py::arg("k"), py::arg("degrees"));

  m.def(
      "nw_polynomial", [](std::uint32_t q, std::uint32_t d, std::uint32_t k) { return nw_polynomial(q, d, k).poly; },
      py::arg("q"), py::arg("d"), py::arg("k"));
  m.def(
      "imm_polynomial", [](std::uint32_t n, std::uint32_t d) { return imm_polynomial(n, d); }, py::arg("n"),
      py::arg("d"));
  m.def(
      "unbiased_word", [](int h, std::uint32_t d, std::uint32_t k) { return construct_unbiased_word(h, d, k).weights; },
      py::arg("h"), py::arg("d"), py::arg("k"));

  m.def("canonical_tree", [](const std::string& t) { return canonical_tree(BinaryTree::parse(t)).encoding(); });
  m.def("deg_seq", [](const std::string& t) { return to_py(to_json(deg_seq(BinaryTree::parse(t)))); });
  m.def("upt_k", [](const std::string& t) { return to_py(to_json(upt_k(deg_seq(BinaryTree::parse(t))))); });
  m.def("caterpillar", [](std::size_t leaves) { return caterpillar(leaves).encoding(); });

  m.def("suite_names", &suite_names);
  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, const std::string& scale) {
        VerifyOptions o;
        o.seed = seed;
        o.scale = parse_scale(scale);
        if (!is_suite(suite)) throw ParseError("unknown suite: " + suite);
        return report_dict(run_suite(suite, o));
      },
      py::arg("suite"), py::arg("seed") = 42, py::arg("scale") = "small");
  m.def(
      "run_sweep", [](const std::string& spec_json) { return run_sweep(parse_sweep_spec(Json::parse(spec_json))); },
      py::arg("spec_json"));
}
