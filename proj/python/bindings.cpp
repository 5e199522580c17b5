#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hodge/cli.hpp"
#include "hodge/gauge.hpp"
#include "hodge/hn.hpp"
#include "hodge/oper.hpp"
#include "hodge/report.hpp"
#include "hodge/rep.hpp"
#include "hodge/suite.hpp"

namespace py = pybind11;
using namespace hodge;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::pair<std::string, std::optional<std::string>> run_command(const std::string& command, const std::string& params) {
  const auto overrides = params.empty() ? nlohmann::json() : nlohmann::json::parse(params);
  const auto r = cli::run(cli::resolve_config(command, nullptr, overrides));
  return {report::to_stable_json(r.report), r.csv};
}

std::vector<CMat> group_generators() {
  std::vector<CMat> out;
  for (const auto& g : hyp::octagon_group().generators) out.push_back(g.complex_matrix());
  return out;
}

std::vector<CMat> trivial_oper_monodromy(int n, double tol) {
  oper::MonodromyOptions o;
  o.tol.rtol = tol;
  o.tol.atol = tol * 1e-2;
  const auto m = oper::monodromy(oper::ode_from_projective(n, forms::JetProvider::zero()), hyp::octagon_group(), I_unit, o);
  std::vector<CMat> out;
  for (const auto& img : m.rho.images) out.push_back(oper::to_polynomial_basis(img, I_unit));
  return out;
}

py::dict moduli_dimensions(int n, int g) {
  const auto d = rep::moduli_dimensions(n, g);
  py::dict out;
  out["betti"] = d.betti;
  out["hitchin_base"] = d.hitchin_base;
  out["eichler_h1"] = d.eichler_h1;
  return out;
}

py::dict oper_maximality(int n, int g) {
  const auto r = hn::verify_oper_maximality(n, g);
  py::dict out;
  out["types"] = r.count;
  out["all_dominated"] = r.all_dominated;
  out["equality_only_at_oper"] = r.equality_only_at_oper;
  out["maximal"] = r.verdict();
  out["oper_type"] = hn::oper_hn_type(n, g).to_string();
  return out;
}

std::string run_suite(const std::string& level, std::uint64_t seed) {
  suite::SuiteOptions o;
  o.level = suite::parse_level(level);
  o.seed = seed;
  return report::to_stable_json(suite::results_to_json(suite::run_acceptance(o)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical laboratory for Higgs bundles, opers and harmonic maps on a genus-2 surface";
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.attr("__version__") = report::kToolVersion;
  m.def("command_names", &cli::command_names);
  m.def("default_parameters", [](const std::string& c) { return cli::default_parameters(c).dump(); });
  m.def("run_command", &run_command, py::arg("command"), py::arg("params") = "",
        "Runs a command with JSON parameter overrides; returns (report json, csv or None).");
  m.def("octagon_generators", &group_generators, "Generators a1, b1, a2, b2 as 2x2 complex matrices.");
  m.def("trivial_oper_monodromy", &trivial_oper_monodromy, py::arg("n"), py::arg("tol") = 1e-10,
        "Monodromy of y^(n) = 0 in the basis z^(n-1), ..., 1.");
  m.def("principal_embedding", &rep::principal_embedding, py::arg("n"), py::arg("m"));
  m.def("hitchin_map_point", &gauge::hitchin_map_point, py::arg("phi"), "Coefficients c_2..c_n of det(lambda + phi).");
  m.def("nilpotent_commutator_bound", &gauge::nilpotent_commutator_bound, py::arg("n"), py::arg("trials"),
        py::arg("seed"));
  m.def("moduli_dimensions", &moduli_dimensions, py::arg("n"), py::arg("g"));
  m.def("oper_maximality", &oper_maximality, py::arg("n"), py::arg("g"));
  m.def("run_suite", &run_suite, py::arg("level") = "smoke", py::arg("seed") = 7);
}
