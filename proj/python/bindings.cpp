#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ci0/scenario.hpp"

namespace py = pybind11;
using namespace ci0;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::handle& o) {
  if (o.is_none()) return Json::object();
  std::string s = py::module_::import("json").attr("dumps")(o).cast<std::string>();
  return Json::parse(s);
}

/// An Artinian local algebra together with an evaluator for its operations.
class PyAlgebra {
 public:
  PyAlgebra(RingSpec spec, const std::optional<std::string>& field, std::uint64_t seed, std::filesystem::path base)
      : spec_(std::move(spec)), ev_(build_algebra(spec_, field), std::move(base), seed) {}

  static PyAlgebra create(std::vector<std::string> vars, std::vector<std::string> relations, const std::string& field,
                          const std::string& order, std::uint64_t seed) {
    RingSpec r;
    r.vars = std::move(vars);
    r.relations = std::move(relations);
    r.field = field;
    r.order = order;
    return PyAlgebra(std::move(r), std::nullopt, seed, std::filesystem::current_path());
  }

  static PyAlgebra from_file(const std::filesystem::path& path, const std::optional<std::string>& field,
                             std::uint64_t seed) {
    RingSpec r = ring_spec_from_json(read_json_file(path));
    return PyAlgebra(std::move(r), field, seed, path.parent_path());
  }

  const AlgebraPtr& alg() const { return ev_.algebra(); }
  const RingSpec& spec() const { return spec_; }

  py::object run(const std::string& op, const py::object& args) const {
    Value v;
    {
      Json a = from_py(args);
      py::gil_scoped_release release;
      v = ev_.run(op, a);
    }
    return to_py(v.to_json());
  }

  bool matches(const std::string& op, const py::object& args, const py::object& expect) const {
    Json a = from_py(args);
    Json e = from_py(expect);
    py::gil_scoped_release release;
    return ev_.matches(ev_.run(op, a), e);
  }

 private:
  RingSpec spec_;
  Evaluator ev_;
};

py::dict kw(std::initializer_list<std::pair<const char*, py::object>> items) {
  py::dict d;
  for (const auto& [k, v] : items)
    if (!v.is_none()) d[k] = v;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ci0, m) {
  m.doc() = "C.I.0 ideals and Wiebe matrices over Artinian local algebras";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ContextMismatch>(m, "ContextMismatch", base.ptr());
  py::register_exception<NotZeroDimensional>(m, "NotZeroDimensional", base.ptr());
  py::register_exception<NotLocal>(m, "NotLocal", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());
  py::register_exception<Inconclusive>(m, "Inconclusive", base.ptr());
  py::register_exception<NotApplicable>(m, "NotApplicable", base.ptr());

  py::class_<PyAlgebra>(m, "Algebra")
      .def(py::init(&PyAlgebra::create), py::arg("vars"), py::arg("relations"), py::arg("field") = "Q",
           py::arg("order") = "degrevlex", py::arg("seed") = 0)
      .def_static("from_file", &PyAlgebra::from_file, py::arg("path"), py::arg("field") = std::nullopt,
                  py::arg("seed") = 0)
      .def_property_readonly("vars", [](const PyAlgebra& a) { return a.spec().vars; })
      .def_property_readonly("relations", [](const PyAlgebra& a) { return a.spec().relations; })
      .def_property_readonly("field", [](const PyAlgebra& a) { return a.alg()->field().name(); })
      .def_property_readonly("dim", [](const PyAlgebra& a) { return a.alg()->dim(); })
      .def_property_readonly("exponent", [](const PyAlgebra& a) { return a.alg()->exponent(); })
      .def_property_readonly("embedding_dim", [](const PyAlgebra& a) { return a.alg()->embedding_dimension(); })
      .def_property_readonly("hilbert", [](const PyAlgebra& a) { return hilbert_data(a.alg()); })
      .def_property_readonly("is_gorenstein", [](const PyAlgebra& a) { return is_gorenstein(a.alg()); })
      .def("run", &PyAlgebra::run, py::arg("op"), py::arg("args") = py::none(),
           "Evaluate a scenario operation and return its JSON value.")
      .def("matches", &PyAlgebra::matches, py::arg("op"), py::arg("args"), py::arg("expect"))
      .def("socle", [](const PyAlgebra& a) { return a.run("socle", py::none()); })
      .def(
          "ci0_test", [](const PyAlgebra& a, const py::object& ideal) { return a.run("ci0", kw({{"ideal", ideal}})); },
          py::arg("ideal"))
      .def(
          "ann_ci0_test", [](const PyAlgebra& a, const py::object& e) { return a.run("ci0_ann", kw({{"elem", e}})); },
          py::arg("elem"))
      .def(
          "is_x_nice",
          [](const PyAlgebra& a, const py::object& matrix, const py::object& row) {
            return a.run("nice", kw({{"matrix", matrix}, {"row", row}}));
          },
          py::arg("matrix"), py::arg("row") = py::none())
      .def(
          "is_wiebe",
          [](const PyAlgebra& a, const py::object& matrix, const py::object& row) {
            return a.run("wiebe", kw({{"matrix", matrix}, {"row", row}})).cast<bool>();
          },
          py::arg("matrix"), py::arg("row") = py::none())
      .def(
          "chain_from_factors",
          [](const PyAlgebra& a, const py::list& factors) { return a.run("chain_factors", kw({{"factors", factors}})); },
          py::arg("factors"))
      .def(
          "chain_from_socle",
          [](const PyAlgebra& a, const py::list& factors) { return a.run("chain_socle", kw({{"factors", factors}})); },
          py::arg("factors"))
      .def(
          "profile", [](const PyAlgebra& a, const py::object& e) { return a.run("profile", kw({{"elem", e}})); },
          py::arg("elem"))
      .def(
          "realize", [](const PyAlgebra& a, const py::object& e) { return a.run("realize", kw({{"elem", e}})); },
          py::arg("elem"))
      .def(
          "decompose",
          [](const PyAlgebra& a, const py::object& elem, const py::object& matrix, const std::string& mode,
             std::size_t budget) {
            return a.run("decompose", kw({{"elem", elem},
                                          {"matrix", matrix},
                                          {"mode", py::str(mode)},
                                          {"budget", py::int_(budget)}}));
          },
          py::arg("elem") = py::none(), py::arg("matrix") = py::none(), py::arg("mode") = "exhaustive",
          py::arg("budget") = 20000)
      .def(
          "maxchain",
          [](const PyAlgebra& a, const py::object& start, std::size_t budget) {
            return a.run("maxchain", kw({{"start", start}, {"budget", py::int_(budget)}}));
          },
          py::arg("start") = py::none(), py::arg("budget") = 400)
      .def("__repr__", [](const PyAlgebra& a) {
        std::string s = "Algebra(" + a.alg()->field().name() + "[";
        for (std::size_t i = 0; i < a.spec().vars.size(); ++i) s += (i ? "," : "") + a.spec().vars[i];
        s += "]/(";
        for (std::size_t i = 0; i < a.spec().relations.size(); ++i) s += (i ? ", " : "") + a.spec().relations[i];
        return s + "), dim " + std::to_string(a.alg()->dim()) + ")";
      });

  m.def(
      "run_suite",
      [](const std::filesystem::path& dir, unsigned threads) {
        Report r;
        {
          py::gil_scoped_release release;
          r = run_suite(dir, threads);
        }
        return to_py(to_json(r));
      },
      py::arg("dir"), py::arg("threads") = 0, "Run every scenario file below dir and return the report.");

  m.def("operations", &Evaluator::operations);
}
