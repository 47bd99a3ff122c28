#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcyc/corpus.hpp"
#include "qcyc/forms.hpp"
#include "qcyc/greenjulg.hpp"
#include "qcyc/stability.hpp"

namespace py = pybind11;
using namespace qcyc;

namespace {

// Builtin groupoids are returned by value but algebras keep a pointer to
// their groupoid, so bundle the two and let pybind manage the lifetime.
struct Context {
  std::shared_ptr<Groupoid> g;
  explicit Context(const std::string& name)
      : g(std::make_shared<Groupoid>(builtin_groupoid(name))) {}
  GAlgebra algebra(const std::string& name) const { return algebra_by_name(*g, name); }
};

py::dict homology_dict(const HomologyReport& r) {
  py::dict d;
  d["even"] = r.even_rank;
  d["odd"] = r.odd_rank;
  d["level"] = r.level;
  d["reduction"] = r.reduction;
  d["stabilized"] = r.stabilized;
  return d;
}

}  // namespace

PYBIND11_MODULE(pyqcyc, m) {
  m.doc() = "exact equivariant periodic cyclic homology of finite ample groupoids";

  m.def("builtin_groupoids", &builtin_groupoid_names);
  m.def("builtin_algebras", &builtin_algebra_names);

  py::class_<Context>(m, "Groupoid")
      .def(py::init<const std::string&>(), py::arg("name"))
      .def_property_readonly("num_units", [](const Context& c) { return c.g->num_units(); })
      .def_property_readonly("num_arrows", [](const Context& c) { return c.g->num_arrows(); })
      .def_property_readonly("num_orbits",
                             [](const Context& c) { return (int)c.g->orbits().size(); })
      .def_property_readonly("num_loops", [](const Context& c) { return (int)c.g->loops().size(); })
      .def("is_quasifree",
           [](const Context& c, const std::string& algebra) {
             return quasifree_certificate(c.algebra(algebra)).has_value();
           },
           py::arg("algebra"))
      .def("paramixed",
           [](const Context& c, const std::string& algebra, int cap) {
             ParamixedReport r = paramixed_report(*c.g, c.algebra(algebra), cap);
             py::dict d;
             d["passed"] = r.all_pass;
             d["max_degree"] = r.max_degree;
             d["monomials_checked"] = r.monomials_checked;
             d["failures"] = r.failures;
             return d;
           },
           py::arg("algebra") = "trivial", py::arg("cap") = 6)
      .def("hp",
           [](const Context& c, const std::string& source, const std::string& target) {
             return homology_dict(hp_quasifree(c.algebra(source), c.algebra(target)));
           },
           py::arg("source") = "trivial", py::arg("target") = "trivial")
      .def("hp_level",
           [](const Context& c, const std::string& source, const std::string& target, int level) {
             std::vector<py::dict> out;
             for (const auto& r : hp_level(c.algebra(source), c.algebra(target), level))
               out.push_back(homology_dict(r));
             return out;
           },
           py::arg("source"), py::arg("target"), py::arg("level"))
      .def("green_julg",
           [](const Context& c, const std::string& algebra) {
             GreenJulgReport r = green_julg_verify(c.algebra(algebra));
             py::dict d;
             d["lhs"] = homology_dict(r.lhs);
             d["rhs"] = homology_dict(r.rhs);
             d["equal"] = r.equal;
             d["orbit_sums_equal"] = r.orbit_sums_equal;
             return d;
           },
           py::arg("algebra") = "trivial")
      .def("stability",
           [](const Context& c, const std::string& algebra) {
             StabilityReport r = stability_check(c.algebra(algebra), regular_pairing(*c.g));
             py::dict d;
             d["admissible"] = r.admissible;
             d["trace_property"] = r.trace_property;
             d["chain_map"] = r.chain_map;
             d["retraction"] = r.retraction;
             d["ranks_equal"] = r.ranks_equal;
             d["hp_a"] = homology_dict(r.hp_a);
             d["hp_ak"] = homology_dict(r.hp_ak);
             d["all"] = r.all();
             return d;
           },
           py::arg("algebra") = "trivial");
}
