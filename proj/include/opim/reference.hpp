#pragma once

// Numerical reference solutions for problems without a closed form.
//
// The regular singular point at x = 0 is stepped over with a Taylor
// expansion obtained by coefficient matching; from the bootstrap radius x_b
// on, an embedded Dormand-Prince 5(4) pair integrates the first-order system
// (y, y') with local error control.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "opim/poly.hpp"
#include "opim/problem.hpp"

namespace opim {

/// Taylor polynomial of the solution about x = 0 through x^order, from
/// substituting y = sum c_j x^j into the ODE and matching powers:
///   (j+2)(j+1+k) c_{j+2} = -[beta gamma(y) + g]_j.
/// Throws SeriesBreakdown when j+1+k vanishes.
template <Scalar T>
Polynomial<T> bootstrap_polynomial(const EmdenFowlerProblem<T>& p, std::size_t order);

struct BootstrapState {
  double y = 0.0;
  double dy = 0.0;
};

/// y(x_b), y'(x_b) from the order-`order` Taylor expansion.
BootstrapState bootstrap_series(const EmdenFowlerProblem<double>& p, double x_b, std::size_t order = 8);

class ReferenceSolution {
 public:
  ReferenceSolution(std::vector<double> nodes, std::vector<double> values, std::vector<double> derivatives,
                    double tolerance_achieved, double bootstrap_radius, Polynomial<double> near_origin);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& derivatives() const { return derivatives_; }
  /// Largest accepted local error estimate.
  double tolerance_achieved() const { return tolerance_achieved_; }
  double bootstrap_radius() const { return bootstrap_radius_; }

  /// Cubic Hermite between nodes; the bootstrap series on [0, x_b).
  /// Throws InvalidInterval outside [0, last node].
  double operator()(double x) const;
  double derivative(double x) const;

  /// "x,y,dy" header plus one row per node.
  std::string to_csv() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> derivatives_;
  double tolerance_achieved_;
  double bootstrap_radius_;
  Polynomial<double> near_origin_;
};

struct IntegrateOptions {
  std::optional<double> bootstrap_radius;  // 1e-3 (b - a) of the problem domain by default
  std::size_t series_order = 8;
};

/// Throws StepUnderflow when the step falls below 1e-14 of the span or
/// after 200000 step attempts.
ReferenceSolution integrate(const EmdenFowlerProblem<double>& p, double x_end, double tol,
                            const IntegrateOptions& options = {});

}  // namespace opim
