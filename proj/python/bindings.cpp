#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mfd/io.hpp"

namespace py = pybind11;
using namespace mfd;

namespace {

// Results cross the boundary as JSON text; the Python package decodes them.

std::string decide_json(const std::string& theory, const std::string& query, std::size_t bfs_nodes,
                        std::size_t model_evaluations, std::size_t max_size) {
  Budgets b{bfs_nodes, model_evaluations, max_size};
  return verdict_to_json(decide(parse_theory(theory), parse_mfd(query), b)).dump();
}

std::string member_json(const std::string& theory, const std::string& query) {
  return member_to_json(member(parse_theory(theory), parse_mfd(query))).dump();
}

template <class Alg>
json check_with(const RankedRelation<Alg>& rel, const Theory& theory) {
  const auto found = first_violation(rel, theory);
  json doc = {{"holds", !found}};
  if (found) {
    doc["formula"] = to_string(found->formula);
    doc["i"] = found->pair.i;
    doc["j"] = found->pair.j;
    if constexpr (std::is_floating_point_v<typename Alg::element>) {
      doc["antecedent"] = found->pair.antecedent;
      doc["consequent"] = found->pair.consequent;
    } else {
      doc["antecedent"] = rel.algebra().name(found->pair.antecedent);
      doc["consequent"] = rel.algebra().name(found->pair.consequent);
    }
  }
  return doc;
}

std::string check_relation_json(const std::string& relation, const std::string& theory) {
  const AnyRelation rel = relation_from_json(json::parse(relation));
  const Theory t = parse_theory(theory);
  return std::visit([&](const auto& r) { return check_with(r, t); }, rel).dump();
}

std::string complete_json(const std::string& algebra) {
  const auto p = algebra_from_json(json::parse(algebra));
  const auto dc = downset_completion(p);
  json doc = lattice_to_json(dc.lattice);
  for (std::size_t i = 0; i < p.size(); ++i) doc["embedding"][p.name(i)] = dc.lattice.name(dc.embedding[i]);
  return doc.dump();
}

std::vector<std::string> enumerate_json(std::size_t max_size) {
  std::vector<std::string> out;
  for (const auto& p : enumerate_pomonoids(max_size)) out.push_back(algebra_to_json(p).dump());
  return out;
}

}  // namespace

PYBIND11_MODULE(_mfd, m) {
  m.doc() = "Monoidal functional dependencies: core bindings";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ContractingTheory>(m, "ContractingTheory", PyExc_ValueError);
  py::register_exception<ProofError>(m, "ProofError", PyExc_ValueError);

  m.def("decide_json", &decide_json, py::arg("theory"), py::arg("query"), py::arg("bfs_nodes") = 100000,
        py::arg("model_evaluations") = 1000000, py::arg("max_size") = 5,
        py::call_guard<py::gil_scoped_release>());
  m.def("member_json", &member_json, py::arg("theory"), py::arg("query"));
  m.def("check_relation_json", &check_relation_json, py::arg("relation"), py::arg("theory"));
  m.def("complete_algebra_json", &complete_json, py::arg("algebra"));
  m.def("enumerate_pomonoids_json", &enumerate_json, py::arg("max_size"));
  m.def(
      "check_proof", [](const std::string& cert, const std::string& theory) {
        return to_string(check_proof(parse_sexpr(cert), parse_theory(theory)));
      },
      py::arg("certificate"), py::arg("theory"));
  m.def(
      "is_trivial", [](const std::string& f) { return is_trivial(parse_mfd(f)); }, py::arg("formula"));
  m.def(
      "is_non_contracting", [](const std::string& f) { return is_non_contracting(parse_mfd(f)); },
      py::arg("formula"));
  m.def(
      "booleanize", [](const std::string& t) { return format_theory(booleanize(parse_theory(t))); },
      py::arg("theory"));
  m.def(
      "classical_entails",
      [](const std::string& t, const std::string& q) { return classical_entails(parse_theory(t), parse_mfd(q)); },
      py::arg("theory"), py::arg("query"));
  m.def(
      "normalize", [](const std::string& f) { return to_string(parse_mfd(f)); }, py::arg("formula"));
}
