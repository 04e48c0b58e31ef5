#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "amk/bench.hpp"
#include "amk/dimacs.hpp"
#include "amk/encoders.hpp"
#include "amk/pigeonhole.hpp"
#include "amk/propagation.hpp"

namespace py = pybind11;

namespace {

amk::Encoding to_encoding(const std::string& name) {
  auto e = amk::parse_encoding(name);
  if (!e) throw py::value_error("unknown encoding '" + name + "'");
  return *e;
}

std::vector<std::vector<int>> clause_lists(const amk::CnfFormula& f) {
  std::vector<std::vector<int>> out;
  out.reserve(f.clauses.size());
  for (const amk::Clause& c : f.clauses) {
    std::vector<int>& row = out.emplace_back();
    for (amk::Lit l : c) row.push_back(l.dimacs());
  }
  return out;
}

amk::CnfFormula from_lists(int num_vars, const std::vector<std::vector<int>>& clauses) {
  amk::CnfFormula f;
  f.num_vars = num_vars;
  for (const auto& row : clauses) {
    std::vector<amk::Lit> lits;
    for (int v : row) lits.push_back(amk::Lit::from_dimacs(v));
    f.clauses.emplace_back(std::move(lits));
  }
  f.validate();
  return f;
}

py::dict count_dict(const amk::CountReport& r) {
  py::dict d;
  d["encoding"] = std::string(amk::encoding_name(r.encoding));
  d["n"] = r.n;
  d["k"] = r.k;
  d["aux_vars"] = r.aux_vars;
  d["clauses"] = r.clauses;
  return d;
}

py::dict ac_dict(const amk::AcReport& r) {
  py::dict d;
  d["encoding"] = std::string(amk::encoding_name(r.encoding));
  d["n"] = r.n;
  d["k"] = r.k;
  d["achieves_ac"] = r.achieves_ac;
  d["exhaustive"] = r.exhaustive;
  d["seeds_tested"] = r.seeds_tested;
  if (r.witness) {
    py::dict w;
    std::vector<int> seed;
    for (amk::Lit l : r.witness->seed) seed.push_back(l.dimacs());
    w["seed"] = seed;
    w["unforced"] = r.witness->unforced ? py::cast(r.witness->unforced->dimacs()) : py::none();
    w["conflict"] = r.witness->conflict;
    d["witness"] = w;
  } else {
    d["witness"] = py::none();
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "At-most-k CNF encodings, oracles and pigeonhole instances";

  m.attr("ENCODINGS") = [] {
    std::vector<std::string> names;
    for (amk::Encoding e : amk::kAllEncodings) names.emplace_back(amk::encoding_name(e));
    return names;
  }();

  py::class_<amk::CnfFormula>(m, "Formula")
      .def(py::init(&from_lists), py::arg("num_vars"), py::arg("clauses"))
      .def_readonly("num_vars", &amk::CnfFormula::num_vars)
      .def_property_readonly("clauses", &clause_lists)
      .def_readonly("comments", &amk::CnfFormula::comments)
      .def_property_readonly("num_clauses",
                             [](const amk::CnfFormula& f) { return f.clauses.size(); })
      .def("to_dimacs", &amk::to_dimacs)
      .def_static("from_dimacs", [](const std::string& text) { return amk::parse_dimacs(text); })
      .def("__eq__", [](const amk::CnfFormula& a, const amk::CnfFormula& b) { return a == b; })
      .def("__repr__", [](const amk::CnfFormula& f) {
        return "<Formula vars=" + std::to_string(f.num_vars) +
               " clauses=" + std::to_string(f.clauses.size()) + ">";
      });

  m.def(
      "encode",
      [](const std::string& enc, int n, long long k) {
        return amk::encode_formula(to_encoding(enc), n, k);
      },
      py::arg("encoding"), py::arg("n"), py::arg("k"),
      "At-most-k over variables 1..n with the named encoding.");

  m.def(
      "count_report",
      [](const std::string& enc, int n, long long k) {
        return count_dict(amk::count_report(to_encoding(enc), n, k));
      },
      py::arg("encoding"), py::arg("n"), py::arg("k"));

  m.def(
      "oracle_equivalent",
      [](const std::string& enc, int n, long long k) {
        return amk::oracle_equivalent(to_encoding(enc), n, k).equivalent;
      },
      py::arg("encoding"), py::arg("n"), py::arg("k"));

  m.def(
      "oracle_check",
      [](const amk::CnfFormula& f, int n, long long k) {
        const amk::OracleResult r = amk::oracle_equivalent(f, n, k);
        py::object cex = py::none();
        if (r.counterexample) cex = py::cast(std::vector<bool>(*r.counterexample));
        return py::make_tuple(r.equivalent, cex);
      },
      py::arg("formula"), py::arg("n"), py::arg("k"),
      "Returns (equivalent, counterexample or None) for a formula over inputs 1..n.");

  m.def(
      "unit_propagate",
      [](const amk::CnfFormula& f, const std::vector<int>& seed) {
        std::vector<amk::Lit> lits;
        for (int v : seed) lits.push_back(amk::Lit::from_dimacs(v));
        const amk::UpOutcome r =
            amk::unit_propagate(f, amk::Assignment::from_literals(f.num_vars, lits));
        std::vector<int> forced;
        for (amk::Lit l : r.forced) forced.push_back(l.dimacs());
        return py::make_tuple(r.conflict() ? "conflict" : "fixpoint", forced);
      },
      py::arg("formula"), py::arg("seed"));

  m.def(
      "check_ac_by_up",
      [](const std::string& enc, int n, long long k) {
        return ac_dict(amk::check_ac_by_up(to_encoding(enc), n, k));
      },
      py::arg("encoding"), py::arg("n"), py::arg("k"));

  m.def(
      "find_model",
      [](const amk::CnfFormula& f) -> py::object {
        auto model = amk::find_model(f);
        if (!model) return py::none();
        std::vector<int> lits;
        for (int v = 1; v <= f.num_vars; ++v) lits.push_back((*model)[v] ? v : -v);
        return py::cast(lits);
      },
      py::arg("formula"), "Model as signed literals, or None if unsatisfiable.");

  m.def(
      "generate_pigeonhole",
      [](int pigeons, int holes, int capacity, const std::string& amo, const std::string& amk) {
        return amk::generate_pigeonhole(
            {pigeons, holes, capacity, to_encoding(amo), to_encoding(amk)});
      },
      py::arg("pigeons"), py::arg("holes"), py::arg("capacity"), py::arg("amo") = "pd",
      py::arg("amk") = "sc");

  m.def(
      "verify_model",
      [](int pigeons, int holes, int capacity, const std::vector<int>& lits) {
        amk::PigeonholeInstance inst{pigeons, holes, capacity};
        std::vector<bool> model(static_cast<std::size_t>(pigeons * holes) + 1, false);
        for (int v : lits)
          if (v > 0 && v <= pigeons * holes) model[static_cast<std::size_t>(v)] = true;
        return amk::verify_model(inst, model);
      },
      py::arg("pigeons"), py::arg("holes"), py::arg("capacity"), py::arg("model"),
      "Model given as signed literals; only the placement variables are read.");

  py::register_exception<amk::UnsupportedBound>(m, "UnsupportedBound", PyExc_ValueError);
  py::register_exception<amk::DimacsError>(m, "DimacsError", PyExc_ValueError);
  py::register_exception<amk::OracleLimitExceeded>(m, "OracleLimitExceeded", PyExc_ValueError);
}
