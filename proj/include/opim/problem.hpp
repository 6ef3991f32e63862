#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opim/poly.hpp"
#include "opim/series.hpp"

namespace opim {

struct Interval {
  double a = 0.0;
  double b = 1.0;
};

/// y'' + (k/x) y' + beta(x) gamma(y) + g(x) = 0,  y(0) = y0, y'(0) = yp0.
///
/// Signs live in the coefficients: y'' + (2/x)y' - (4x^2+6)y = 0 is stored
/// with beta = -(4x^2+6) and gamma = y.
template <Scalar T>
struct EmdenFowlerProblem {
  std::string name = "custom";
  T k = T(0);
  Polynomial<T> beta;
  PowerSeries<T> gamma = power_series<T>(1);
  Polynomial<T> g;
  T y0 = T(0);
  T yp0 = T(0);
  Interval domain;

  template <Scalar U>
  EmdenFowlerProblem<U> cast() const {
    return EmdenFowlerProblem<U>{name,
                                 scalar_cast<U>(k),
                                 beta.template cast<U>(),
                                 gamma.template cast<U>(),
                                 g.template cast<U>(),
                                 scalar_cast<U>(y0),
                                 scalar_cast<U>(yp0),
                                 domain};
  }
};

enum class ProblemIssue { SingularSlope, EmptyDomain, NegativeDomainStart };

struct ValidationIssue {
  ProblemIssue code;
  std::string message;
};

/// Every violated invariant; empty means the problem is usable.
template <Scalar T>
std::vector<ValidationIssue> validate(const EmdenFowlerProblem<T>& p) {
  std::vector<ValidationIssue> issues;
  if (!ScalarTraits<T>::is_zero(p.k) && !ScalarTraits<T>::is_zero(p.yp0)) {
    issues.push_back({ProblemIssue::SingularSlope, "y'(0) must be 0 when k != 0"});
  }
  if (!(p.domain.b > p.domain.a)) {
    issues.push_back({ProblemIssue::EmptyDomain, "domain upper bound must exceed lower bound"});
  }
  if (p.domain.a < 0.0) {
    issues.push_back({ProblemIssue::NegativeDomainStart, "domain must start at x >= 0"});
  }
  return issues;
}

std::string_view issue_name(ProblemIssue code);

/// y, y', y'' of a closed-form solution at one point.
struct Jet {
  double y = 0.0;
  double dy = 0.0;
  double d2y = 0.0;
};

struct ExactSolution {
  std::function<Jet(double)> eval;
  std::string provenance;

  double operator()(double x) const { return eval(x).y; }
};

struct ProblemCatalogEntry {
  std::string name;
  EmdenFowlerProblem<Rational> problem;
  std::optional<ExactSolution> exact;
};

/// ODE residual y'' + (k/x)y' + beta*gamma(y) + g at x > 0, with gamma
/// evaluated as a function.
double ode_residual(const EmdenFowlerProblem<double>& p, const Jet& jet, double x);

/// Names accepted by catalog().
std::vector<std::string> catalog_names();

/// Built-in problems: example1, isothermal, lane_emden_s1, lane_emden_s5.
/// Exact solutions are checked against the ODE when the entry is built.
/// Throws UnknownProblem.
ProblemCatalogEntry catalog(std::string_view name, std::size_t exp_order = 10);

}  // namespace opim
