#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hwkit/approx_eval.hpp"
#include "hwkit/asymptotics.hpp"
#include "hwkit/cli.hpp"
#include "hwkit/coefficients.hpp"
#include "hwkit/density_pricing.hpp"
#include "hwkit/errors.hpp"
#include "hwkit/exact_eval.hpp"

namespace py = pybind11;
using namespace hwkit;

namespace {

QuadratureSpec quad(const std::string& scheme, double tol) {
  QuadratureSpec q;
  q.scheme = parse_quad_scheme(scheme);
  q.target_rel_err = tol;
  return q;
}

py::dict price_dict(const PriceResult& r) {
  py::dict d;
  d["tau"] = r.params.tau;
  d["mu"] = r.params.mu;
  d["k"] = r.params.k;
  d["c_reduced"] = r.c_reduced;
  d["c_raw"] = r.c_raw;
  d["norm"] = r.norm;
  d["price"] = r.price;
  d["put_price"] = r.put_price ? py::cast(*r.put_price) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_hwkit, m) {
  m.doc() = "Hartman-Watson functions, exact series and Asian option pricing";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SeriesError>(m, "SeriesError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

  m.def(
      "coeffs",
      [](const std::string& family, int order) {
        const RationalSeries s = coeffs_for(parse_family(family), order);
        std::vector<std::string> out;
        for (const auto& c : s.coeffs()) out.push_back(c.str());
        return out;
      },
      py::arg("family"), py::arg("order"), "Exact coefficients as 'p/q' strings.");
  m.def(
      "coeff_values", [](const std::string& family, int order) { return coeffs_for(parse_family(family), order).to_doubles(); },
      py::arg("family"), py::arg("order"));

  m.def("F_exact", [](double rho) { return F_exact(rho); }, py::arg("rho"));
  m.def("G_exact", [](double rho) { return G_exact(rho); }, py::arg("rho"));
  m.def("JBS_exact", [](double x) { return JBS_exact(x); }, py::arg("x"));

  m.def(
      "critical_points",
      [](int K) {
        const auto cp = critical_points(K);
        py::list entries;
        for (const auto& e : cp.entries) {
          py::dict d;
          d["k"] = e.k;
          d["eta"] = e.eta;
          d["z"] = e.z;
          d["omega"] = e.omega;
          entries.append(d);
        }
        py::dict out;
        out["entries"] = entries;
        out["rho_x"] = cp.rho_x;
        out["theta_x"] = cp.theta_x;
        return out;
      },
      py::arg("K") = 5);

  m.def("asymptotic_constants", [] {
    const auto& c = asymptotic_constants();
    const auto& p = puiseux_data();
    py::dict d;
    d["c_inf"] = c.c_inf;
    d["d_inf"] = c.d_inf;
    d["d_J"] = c.d_J;
    d["d_F"] = c.d_F;
    d["d_G"] = c.d_G;
    d["z1"] = p.z1;
    d["omega1"] = p.omega1;
    d["C1"] = p.C1;
    d["C2"] = p.C2;
    d["C2_fit"] = p.C2_fit;
    d["C32_J"] = p.C32_J;
    d["C32_F"] = p.C32_F;
    return d;
  });

  m.def(
      "diagnostic_epsilon",
      [](const std::string& family, int order) {
        std::vector<std::tuple<int, double, double, double, double>> rows;
        for (const auto& r : diagnostic_epsilon(parse_asympt_family(family), order))
          rows.emplace_back(r.n, r.coeff_exact, r.coeff_asympt, r.epsilon, r.trig_factor);
        return rows;
      },
      py::arg("family"), py::arg("order"), "Rows (n, exact, asymptotic, epsilon, trig factor).");

  py::class_<PiecewiseEvaluator>(m, "Evaluator")
      .def(py::init([](const std::string& target, int order, std::pair<double, double> domain) {
             return make_evaluator(parse_target(target), order, LogDomain::from_rho(domain.first, domain.second));
           }),
           py::arg("target"), py::arg("order") = kDefaultOrder,
           py::arg("domain") = std::make_pair(kDefaultRhoLo, kDefaultRhoHi))
      .def("__call__", &PiecewiseEvaluator::eval, py::arg("arg"))
      .def("uses_series", &PiecewiseEvaluator::uses_series, py::arg("arg"))
      .def_property_readonly("order", &PiecewiseEvaluator::order)
      .def_property_readonly("coeffs", &PiecewiseEvaluator::coeffs);

  m.def("bessel_k", [](double nu, double x) { return bessel_k(nu, x); }, py::arg("nu"), py::arg("x"));
  m.def("rate_I", [](double a, double v) { return rate_I(a, v); }, py::arg("a"), py::arg("v"));
  m.def("rate_J", &rate_J, py::arg("a"));
  m.def("theta_hw", [](double r, double t) { return theta_hw(r, t); }, py::arg("r"), py::arg("t"));
  m.def("theta_asympt", [](double rho, double t) { return theta_asympt(rho, t); }, py::arg("rho"), py::arg("t"));
  m.def(
      "norm_factor",
      [](double tau, double mu, const std::string& scheme, double tol) {
        return norm_factor(tau, mu, default_evaluators(), quad(scheme, tol));
      },
      py::arg("tau"), py::arg("mu"), py::arg("scheme") = "tanh-sinh", py::arg("tol") = 1e-8);
  m.def(
      "f0_density", [](double a, double t, double mu) { return f0_density(a, t, mu); }, py::arg("a"), py::arg("t"),
      py::arg("mu"));
  m.def(
      "price_call_reduced", [](double k, double tau, double mu) { return price_call_reduced(k, tau, mu); },
      py::arg("k"), py::arg("tau"), py::arg("mu"));
  m.def(
      "price_put_reduced", [](double k, double tau, double mu) { return price_put_reduced(k, tau, mu); },
      py::arg("k"), py::arg("tau"), py::arg("mu"));
  m.def(
      "price_scenario",
      [](double S0, double r, double sigma, double T, double K, bool with_put) {
        return price_dict(price_scenario(Scenario{S0, r, sigma, T, K}, default_evaluators(), {}, with_put));
      },
      py::arg("S0"), py::arg("r"), py::arg("sigma"), py::arg("T"), py::arg("K"), py::arg("with_put") = false);
  m.def("table3", [] {
    py::list out;
    for (const auto& s : table3_scenarios()) out.append(price_dict(price_scenario(s)));
    return out;
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int rc = run_cli(args, out, err);
        return py::make_tuple(rc, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr).");
}
