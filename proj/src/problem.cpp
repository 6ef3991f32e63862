#include "opim/problem.hpp"

#include <cmath>

namespace opim {

namespace {

constexpr double kExactCheckTolerance = 1e-8;
constexpr int kExactCheckPoints = 50;

Jet exp_x2(double x) {
  const double e = std::exp(x * x);
  return {e, 2.0 * x * e, (2.0 + 4.0 * x * x) * e};
}

// sin(x)/x with its removable singularity; the closed form loses digits to
// cancellation near 0, where the Maclaurin series takes over.
Jet sinc(double x) {
  if (std::abs(x) < 0.05) {
    const double x2 = x * x;
    const double y = 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0;
    const double dy = x * (-1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0);
    const double d2y = -1.0 / 3.0 + x2 / 10.0 - x2 * x2 / 168.0;
    return {y, dy, d2y};
  }
  const double s = std::sin(x);
  const double c = std::cos(x);
  return {s / x, (x * c - s) / (x * x), (-x * x * s - 2.0 * x * c + 2.0 * s) / (x * x * x)};
}

Jet lane_emden_5(double x) {
  const double u = 1.0 + x * x / 3.0;
  const double y = 1.0 / std::sqrt(u);
  const double u32 = y * y * y;
  const double u52 = u32 * y * y;
  return {y, -(x / 3.0) * u32, -u32 / 3.0 + (x * x / 3.0) * u52};
}

void check_exact(const ProblemCatalogEntry& entry) {
  if (!entry.exact) return;
  const auto p = entry.problem.cast<double>();
  const double b = p.domain.b;
  for (int i = 1; i <= kExactCheckPoints; ++i) {
    const double x = b * i / kExactCheckPoints;
    const double r = ode_residual(p, entry.exact->eval(x), x);
    if (!(std::abs(r) < kExactCheckTolerance)) {
      throw InternalInvariantBreach("catalog entry '" + entry.name + "': exact solution residual " +
                                    std::to_string(r) + " at x=" + std::to_string(x));
    }
  }
}

EmdenFowlerProblem<Rational> lane_emden(std::string name, PowerSeries<Rational> gamma) {
  EmdenFowlerProblem<Rational> p;
  p.name = std::move(name);
  p.k = 2;
  p.beta = Polynomial<Rational>::constant(1);
  p.gamma = std::move(gamma);
  p.y0 = 1;
  p.yp0 = 0;
  p.domain = {0.0, 1.0};
  return p;
}

}  // namespace

std::string_view issue_name(ProblemIssue code) {
  switch (code) {
    case ProblemIssue::SingularSlope:
      return "SingularSlope";
    case ProblemIssue::EmptyDomain:
      return "EmptyDomain";
    case ProblemIssue::NegativeDomainStart:
      return "NegativeDomainStart";
  }
  return "Unknown";
}

double ode_residual(const EmdenFowlerProblem<double>& p, const Jet& jet, double x) {
  return jet.d2y + p.k / x * jet.dy + eval(p.beta, x) * p.gamma.function_value(jet.y) + eval(p.g, x);
}

std::vector<std::string> catalog_names() { return {"example1", "isothermal", "lane_emden_s1", "lane_emden_s5"}; }

ProblemCatalogEntry catalog(std::string_view name, std::size_t exp_order) {
  ProblemCatalogEntry entry;
  entry.name = std::string(name);

  if (name == "example1") {
    auto& p = entry.problem;
    p.name = "example1";
    p.k = 2;
    p.beta = Polynomial<Rational>{-6, 0, -4};
    p.gamma = power_series<Rational>(1);
    p.y0 = 1;
    p.yp0 = 0;
    p.domain = {0.0, 1.0};
    entry.exact = ExactSolution{exp_x2, "y = exp(x^2)"};
  } else if (name == "isothermal") {
    auto& p = entry.problem;
    p.name = "isothermal";
    p.k = 2;
    p.beta = Polynomial<Rational>::constant(1);
    p.gamma = exp_series<Rational>(exp_order);
    p.y0 = 0;
    p.yp0 = 0;
    p.domain = {0.0, 1.0};
  } else if (name == "lane_emden_s1") {
    entry.problem = lane_emden("lane_emden_s1", power_series<Rational>(1));
    entry.exact = ExactSolution{sinc, "y = sin(x)/x, y(0) = 1"};
  } else if (name == "lane_emden_s5") {
    entry.problem = lane_emden("lane_emden_s5", power_series<Rational>(5));
    entry.exact = ExactSolution{lane_emden_5, "y = (1 + x^2/3)^(-1/2)"};
  } else {
    throw UnknownProblem("unknown problem '" + std::string(name) + "'");
  }

  check_exact(entry);
  return entry;
}

}  // namespace opim
