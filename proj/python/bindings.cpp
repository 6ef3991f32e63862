#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "opim/bench.hpp"
#include "opim/opia.hpp"
#include "opim/optimize.hpp"
#include "opim/reference.hpp"

namespace py = pybind11;
using namespace opim;

namespace {

std::vector<double> coefficients(const Polynomial<double>& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

EmdenFowlerProblem<double> float_problem(const std::string& name, std::size_t exp_order) {
  return catalog(name, exp_order).problem.cast<double>();
}

std::size_t cap_or_default(std::optional<std::size_t> cap, std::size_t order) {
  return cap.value_or(default_degree_cap(static_cast<int>(order)));
}

py::dict fit_dict(const FitResult& fit) {
  py::dict d;
  d["constants"] = fit.constants;
  d["mode"] = std::string(fit_mode_name(fit.mode));
  d["objective"] = fit.objective;
  d["iterations"] = fit.iterations;
  d["converged"] = fit.converged;
  d["points"] = fit.points;
  d["stop_reason"] = fit.stop_reason;
  return d;
}

py::list table_rows(const ErrorTable& t) {
  py::list rows;
  for (const auto& r : t.rows) rows.append(py::make_tuple(r.x, r.approx, r.truth, r.abs_error()));
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Optimal perturbation iteration for singular Emden-Fowler initial value problems";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<UnknownProblem>(m, "UnknownProblem", base.ptr());
  py::register_exception<SingularJacobian>(m, "SingularJacobian", base.ptr());
  py::register_exception<StepUnderflow>(m, "StepUnderflow", base.ptr());
  py::register_exception<InvalidInterval>(m, "InvalidInterval", base.ptr());

  m.def("catalog_names", &catalog_names, "Names of the built-in problems.");

  m.def(
      "first_correction",
      [](const std::string& name) {
        const auto p = catalog(name).problem;
        return to_string(opia1_correction(initial_guess(p), p, 16));
      },
      py::arg("name"), "Exact first correction from the initial guess, as 'rational:[...]'.");

  m.def(
      "iterate",
      [](const std::string& name, const std::vector<double>& constants, std::optional<std::size_t> degree_cap,
         std::size_t exp_order) {
        const auto cap = cap_or_default(degree_cap, constants.size());
        return coefficients(iterate<double>(float_problem(name, exp_order), constants, cap).final());
      },
      py::arg("name"), py::arg("constants"), py::arg("degree_cap") = py::none(), py::arg("exp_order") = 10,
      "Coefficients of the approximant y_m for the given constants (floating point).");

  m.def(
      "iterate_exact",
      [](const std::string& name, const std::vector<double>& constants, std::optional<std::size_t> degree_cap) {
        const auto cap = cap_or_default(degree_cap, constants.size());
        return to_string(iterate<Rational>(catalog(name).problem, constants, cap).final());
      },
      py::arg("name"), py::arg("constants"), py::arg("degree_cap") = py::none(),
      "Approximant in exact rational arithmetic, as 'rational:[...]'.");

  m.def(
      "residual",
      [](const std::string& name, const std::vector<double>& constants, std::optional<std::size_t> degree_cap) {
        const auto cap = cap_or_default(degree_cap, constants.size());
        return coefficients(approximant_residual<double>(float_problem(name, 10), constants, cap).poly);
      },
      py::arg("name"), py::arg("constants"), py::arg("degree_cap") = py::none(),
      "Coefficients of the residual polynomial R(x; C).");

  m.def(
      "objective",
      [](const std::string& name, const std::vector<double>& constants, std::optional<std::size_t> degree_cap) {
        const auto p = float_problem(name, 10);
        return objective_J(constants, p, cap_or_default(degree_cap, constants.size()), p.domain.a, p.domain.b);
      },
      py::arg("name"), py::arg("constants"), py::arg("degree_cap") = py::none(),
      "Integrated squared residual J(C) over the problem domain.");

  m.def(
      "fit",
      [](const std::string& name, int order, const std::string& mode, std::optional<std::vector<double>> points,
         std::optional<std::vector<double>> init, std::optional<std::size_t> degree_cap) {
        if (order < 1) throw ConfigError("order must be at least 1");
        FitOptions opts;
        opts.mode = parse_fit_mode(mode);
        opts.points = std::move(points);
        opts.initial = std::move(init);
        const auto cap = cap_or_default(degree_cap, static_cast<std::size_t>(order));
        return fit_dict(fit_constants(float_problem(name, 10), order, cap, opts));
      },
      py::arg("name"), py::arg("order"), py::arg("mode") = "collocation", py::arg("points") = py::none(),
      py::arg("init") = py::none(), py::arg("degree_cap") = py::none(),
      "Fit the convergence-control constants; returns a dict.");

  m.def(
      "integrate",
      [](const std::string& name, double x_end, double tol, const std::vector<double>& xs) {
        const auto ref = integrate(float_problem(name, 10), x_end, tol);
        std::vector<double> out;
        out.reserve(xs.size());
        for (double x : xs) out.push_back(ref(x));
        return out;
      },
      py::arg("name"), py::arg("x_end"), py::arg("tol"), py::arg("xs"),
      "Reference solution values at xs (adaptive Runge-Kutta with a series start).");

  m.def(
      "bootstrap_series",
      [](const std::string& name, std::size_t order) {
        std::vector<std::string> out;
        const auto s = bootstrap_polynomial(catalog(name).problem, order);
        for (std::size_t j = 0; j <= order; ++j) out.push_back(s.coeff(j).get_str());
        return out;
      },
      py::arg("name"), py::arg("order") = 8, "Exact Taylor coefficients about the origin, as strings.");

  m.def(
      "table1",
      [](double slack) {
        const auto t = table1(slack);
        py::dict d;
        d["order4"] = table_rows(t.order4);
        d["order5"] = table_rows(t.order5);
        d["fit4"] = fit_dict(t.fit4);
        d["fit5"] = fit_dict(t.fit5);
        d["pass"] = t.verdict.pass;
        d["violations"] = t.verdict.violations;
        d["csv"] = emit(t, Format::csv);
        return d;
      },
      py::arg("slack") = kDefaultTable1Slack, "Example-1 error table at orders 4 and 5 with the baseline-error verdict.");
}
