#pragma once

// Residual of an approximant and the two ways of fixing the constants C:
// collocation (R(x_i; C) = 0 at chosen points, solved by damped Newton) and
// least squares (minimize J(C) = integral of R^2, by Nelder-Mead).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opim/opia.hpp"
#include "opim/poly.hpp"
#include "opim/problem.hpp"

namespace opim {

/// The residual is stored as R itself: k*divide_by_x(y') is exact on
/// iterates, so no x-multiplied numerator form is ever needed.
enum class ResidualForm { exact_quotient };

template <Scalar T>
struct Residual {
  Polynomial<T> poly;
  std::string problem;
  int order = 0;
  std::vector<T> constants;
  ResidualForm form = ResidualForm::exact_quotient;
};

/// R = y'' + k y'/x + beta * gamma(y) + g, with the full truncated series
/// gamma (not the linearization), truncated at `cap`.
/// Throws NonzeroConstantTerm if y'(0) != 0 while k != 0.
template <Scalar T>
Residual<T> residual(const Polynomial<T>& y, const EmdenFowlerProblem<T>& p, std::size_t cap);

/// Residual of the order-m approximant built with `constants`.
template <Scalar T>
Residual<T> approximant_residual(const EmdenFowlerProblem<T>& p, std::span<const T> constants, std::size_t cap);

/// J(C) = integral_a^b R(x; C)^2 dx, integrated exactly.
double objective_J(std::span<const double> constants, const EmdenFowlerProblem<double>& p, std::size_t cap, double a,
                   double b);

enum class FitMode { collocation, least_squares };

std::string_view fit_mode_name(FitMode mode);
/// Throws ConfigError for anything other than "collocation"/"least_squares".
FitMode parse_fit_mode(std::string_view text);

struct FitResult {
  std::vector<double> constants;
  FitMode mode = FitMode::collocation;
  double objective = 0.0;  // J(C) over the fit interval
  int iterations = 0;      // Newton steps or objective evaluations
  bool converged = false;
  std::vector<double> points;  // collocation only
  std::string stop_reason;
};

struct CollocationOptions {
  double tolerance = 1e-12;        // on max_i |R(x_i; C)|
  int max_iterations = 100;
  double relative_step = 1e-7;     // forward-difference step, scaled by max(1, |C_j|)
};

struct SimplexOptions {
  double diameter_tolerance = 1e-10;
  double spread_tolerance = 1e-16;
  int max_evaluations = 2000;
  double initial_step = 0.1;       // simplex edge, scaled by max(1, |C_j|)
};

/// m equally spaced interior points a + (b - a) i/(m+1), i = 1..m.
std::vector<double> default_collocation_points(double a, double b, int m);

/// R(x_i; C) for every point.
std::vector<double> collocation_values(const EmdenFowlerProblem<double>& p, std::size_t cap,
                                       std::span<const double> points, std::span<const double> constants);

/// Forward-difference Jacobian d R(x_i; C) / d C_j, row-major (points x m).
/// `relative_step` < 0 selects central differences with |step| instead.
std::vector<double> collocation_jacobian(const EmdenFowlerProblem<double>& p, std::size_t cap,
                                         std::span<const double> points, std::span<const double> constants,
                                         double relative_step);

/// Damped Newton on C -> (R(x_1; C), ..., R(x_n; C)). With more points than
/// constants the step is the least-squares (Gauss-Newton) step.
/// Throws SingularJacobian when no step can be computed; an exhausted
/// iteration budget returns the best C with converged == false.
FitResult solve_collocation(const EmdenFowlerProblem<double>& p, std::size_t cap, std::span<const double> points,
                            std::span<const double> initial, const CollocationOptions& options = {});

/// Nelder-Mead on J(C) over [a, b]. Never returns a point worse than `initial`.
FitResult minimize_objective(const EmdenFowlerProblem<double>& p, std::size_t cap, double a, double b,
                             std::span<const double> initial, const SimplexOptions& options = {});

struct FitOptions {
  FitMode mode = FitMode::collocation;
  std::optional<std::vector<double>> points;
  std::optional<std::vector<double>> initial;  // all 0.5 when absent
  std::optional<Interval> interval;            // problem domain when absent
  CollocationOptions collocation;
  SimplexOptions simplex;
};

FitResult fit_constants(const EmdenFowlerProblem<double>& p, int order, std::size_t cap, const FitOptions& options);

}  // namespace opim
