#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ruelle/cli.hpp"
#include "ruelle/ruelle.hpp"

namespace py = pybind11;
using namespace ruelle;

namespace {

// Potentials cross the boundary as (k, values); the depth follows from the length.
Potential make_potential(int k, const std::vector<double>& values) {
  const ShiftSpace s(k);
  std::size_t n = 1;
  int depth = 0;
  while (n < values.size()) {
    n *= static_cast<std::size_t>(k);
    ++depth;
  }
  if (n != values.size()) throw DomainError("value count is not a power of k");
  return Potential::positive(RealFunction(s, depth, values));
}

std::vector<double> values_of(const RealFunction& f) { return {f.values().begin(), f.values().end()}; }
std::vector<double> masses_of(const CylinderMeasure& m) { return {m.masses().begin(), m.masses().end()}; }

py::dict spectrum(int k, const std::vector<double>& H, double beta, int depth) {
  const auto t = leading_triple(gibbs_weight(make_potential(k, H), beta), depth);
  py::dict d;
  d["eigenvalue"] = t.eigenvalue;
  d["eigenfunction"] = values_of(t.eigenfunction);
  d["eigenmeasure"] = masses_of(t.eigenmeasure);
  d["iterations"] = t.iterations;
  d["residual"] = std::max(t.right_residual, t.left_residual);
  return d;
}

py::dict kms_check(int k, const std::vector<double>& H, double beta, int depth, int function_depth, int max_level) {
  const ShiftSpace s(k);
  const Potential h = make_potential(k, H);
  const auto p = Potential::positive(RealFunction::constant(s, 1.0 / k));
  const auto ctx = AlgebraContext::make(p, depth);
  const auto nu = leading_triple(gibbs_weight(h, beta), std::max(depth, h.depth())).eigenmeasure.marginal(depth);
  const auto r = kms_battery(StateFunctional{nu, p}, h, beta, battery_terms(s, function_depth, max_level), ctx, 1e-8);
  py::dict d;
  d["battery_size"] = r.battery_size;
  d["max_residual"] = r.max_residual;
  d["failure_count"] = r.failures.size();
  return d;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Transfer operators, Gibbs states and KMS checks on full shifts";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("cylinders", [](int k, int depth) {
    std::vector<std::string> out;
    for (const auto& w : enumerate_cylinders(ShiftSpace(k), depth)) out.push_back(w.to_string());
    return out;
  }, py::arg("k"), py::arg("depth"));

  m.def("spectrum", &spectrum, py::arg("k"), py::arg("H"), py::arg("beta"), py::arg("depth"),
        "Leading eigenvalue, eigenfunction and eigenmeasure of the operator with weight H^-beta.");
  m.def("pressure", [](int k, const std::vector<double>& H, double beta, int depth) {
    return pressure(make_potential(k, H), beta, depth);
  }, py::arg("k"), py::arg("H"), py::arg("beta"), py::arg("depth"));
  m.def("normalize", [](int k, const std::vector<double>& weight, int depth) {
    return values_of(normalize_potential(make_potential(k, weight), depth).function());
  }, py::arg("k"), py::arg("weight"), py::arg("depth"), "Normalized Jacobian of a positive weight e^A.");
  m.def("equilibrium", [](int k, const std::vector<double>& H, double beta, int depth) {
    const auto e = equilibrium_state(make_potential(k, H), beta, depth);
    py::dict d;
    d["pressure"] = e.pressure;
    d["entropy"] = e.entropy;
    d["energy"] = e.energy;
    d["measure"] = masses_of(e.measure);
    return d;
  }, py::arg("k"), py::arg("H"), py::arg("beta"), py::arg("depth"));
  m.def("kms_check", &kms_check, py::arg("k"), py::arg("H"), py::arg("beta"), py::arg("depth") = 4,
        py::arg("function_depth") = 1, py::arg("max_level") = 2,
        "KMS residuals of the eigenmeasure state over the indicator battery (uniform Jacobian).");

  m.def("zeta", &zeta, py::arg("s"));
  m.def("ff_pressure", [](double beta, double gamma) {
    FFParams p;
    p.gamma = gamma;
    return ff_pressure(p, beta);
  }, py::arg("beta"), py::arg("gamma") = 3.0);
  m.def("ff_summary", [](double gamma, std::size_t k_max) {
    const FFModel model(FFParams{gamma, k_max, 1e-10});
    py::dict d;
    d["zeta_gamma"] = model.zeta_gamma();
    d["u"] = model.u();
    d["u_series"] = model.u_series();
    d["mass_deficit"] = model.mass_deficit();
    d["eigen_identity_residual"] = model.eigen_identity_residual();
    return d;
  }, py::arg("gamma") = 3.0, py::arg("k_max") = 10000);

  m.def("run_cli", &run_cli, py::arg("args"), "Runs the command-line tool in-process; returns (code, stdout, stderr).");
}
