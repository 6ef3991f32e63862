#include "opim/optimize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace opim {

template <Scalar T>
Residual<T> residual(const Polynomial<T>& y, const EmdenFowlerProblem<T>& p, std::size_t cap) {
  const auto dy = differentiate(y);
  auto r = differentiate(dy);
  if (!ScalarTraits<T>::is_zero(p.k)) r = add(r, scale(divide_by_x(dy), p.k));
  r = add(r, mul_truncated(p.beta, compose(p.gamma, y, cap), cap));
  r = add(r, p.g);
  Residual<T> out;
  out.poly = truncate(r, cap);
  out.problem = p.name;
  return out;
}

template <Scalar T>
Residual<T> approximant_residual(const EmdenFowlerProblem<T>& p, std::span<const T> constants, std::size_t cap) {
  const auto trace = iterate<T>(p, constants, cap);
  auto out = residual(trace.final(), p, cap);
  out.order = trace.order;
  out.constants = trace.constants;
  return out;
}

template Residual<double> residual<double>(const Polynomial<double>&, const EmdenFowlerProblem<double>&, std::size_t);
template Residual<Rational> residual<Rational>(const Polynomial<Rational>&, const EmdenFowlerProblem<Rational>&,
                                               std::size_t);
template Residual<double> approximant_residual<double>(const EmdenFowlerProblem<double>&, std::span<const double>,
                                                       std::size_t);
template Residual<Rational> approximant_residual<Rational>(const EmdenFowlerProblem<Rational>&,
                                                           std::span<const Rational>, std::size_t);

double objective_J(std::span<const double> constants, const EmdenFowlerProblem<double>& p, std::size_t cap, double a,
                   double b) {
  const auto r = approximant_residual<double>(p, constants, cap).poly;
  return definite_integral(mul(r, r), a, b);
}

std::string_view fit_mode_name(FitMode mode) {
  return mode == FitMode::collocation ? "collocation" : "least_squares";
}

FitMode parse_fit_mode(std::string_view text) {
  if (text == "collocation") return FitMode::collocation;
  if (text == "least_squares") return FitMode::least_squares;
  throw ConfigError("unknown fit mode '" + std::string(text) + "' (expected collocation or least_squares)");
}

std::vector<double> default_collocation_points(double a, double b, int m) {
  std::vector<double> pts;
  for (int i = 1; i <= m; ++i) pts.push_back(a + (b - a) * i / (m + 1));
  return pts;
}

std::vector<double> collocation_values(const EmdenFowlerProblem<double>& p, std::size_t cap,
                                       std::span<const double> points, std::span<const double> constants) {
  const auto r = approximant_residual<double>(p, constants, cap).poly;
  std::vector<double> out;
  out.reserve(points.size());
  for (double x : points) out.push_back(eval(r, x));
  return out;
}

std::vector<double> collocation_jacobian(const EmdenFowlerProblem<double>& p, std::size_t cap,
                                         std::span<const double> points, std::span<const double> constants,
                                         double relative_step) {
  const std::size_t n = points.size();
  const std::size_t m = constants.size();
  std::vector<double> jac(n * m);
  const bool central = relative_step < 0.0;
  const double rel = std::abs(relative_step);
  const auto base = central ? std::vector<double>{} : collocation_values(p, cap, points, constants);
  std::vector<double> c(constants.begin(), constants.end());
  for (std::size_t j = 0; j < m; ++j) {
    const double h = rel * std::max(1.0, std::abs(constants[j]));
    c[j] = constants[j] + h;
    const auto plus = collocation_values(p, cap, points, c);
    if (central) {
      c[j] = constants[j] - h;
      const auto minus = collocation_values(p, cap, points, c);
      for (std::size_t i = 0; i < n; ++i) jac[i * m + j] = (plus[i] - minus[i]) / (2.0 * h);
    } else {
      for (std::size_t i = 0; i < n; ++i) jac[i * m + j] = (plus[i] - base[i]) / h;
    }
    c[j] = constants[j];
  }
  return jac;
}

namespace {

double max_abs(const std::vector<double>& v) {
  double out = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    out = std::max(out, std::abs(x));
  }
  return out;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::isfinite(s) ? std::sqrt(s) : std::numeric_limits<double>::infinity();
}

std::string describe_points(std::span<const double> points) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < points.size(); ++i) out << (i ? "," : "") << points[i];
  out << ')';
  return out.str();
}

}  // namespace

FitResult solve_collocation(const EmdenFowlerProblem<double>& p, std::size_t cap, std::span<const double> points,
                            std::span<const double> initial, const CollocationOptions& options) {
  const std::size_t m = initial.size();
  const std::size_t n = points.size();
  if (m == 0) throw ConfigError("collocation needs at least one constant");
  if (n < m) throw ConfigError("collocation needs at least as many points as constants");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(points[i] > p.domain.a && points[i] < p.domain.b)) {
      throw ConfigError("collocation point " + std::to_string(points[i]) + " lies outside the open domain");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (points[i] == points[j]) throw ConfigError("collocation points must be distinct");
    }
  }

  FitResult result;
  result.mode = FitMode::collocation;
  result.points.assign(points.begin(), points.end());

  std::vector<double> c(initial.begin(), initial.end());
  auto f = collocation_values(p, cap, points, c);
  std::vector<double> best = c;
  double best_norm = max_abs(f);
  bool converged = false;
  int steps = 0;

  for (;;) {
    const double fmax = max_abs(f);
    if (fmax < best_norm) {
      best_norm = fmax;
      best = c;
    }
    if (fmax < options.tolerance) {
      converged = true;
      result.stop_reason = "residual below tolerance";
      break;
    }
    if (steps >= options.max_iterations) {
      result.stop_reason = "iteration cap reached";
      break;
    }

    const auto jac = collocation_jacobian(p, cap, points, c, options.relative_step);
    Eigen::MatrixXd J(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      rhs(static_cast<Eigen::Index>(i)) = -f[i];
      for (std::size_t j = 0; j < m; ++j) J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = jac[i * m + j];
    }
    if (!J.allFinite() || !rhs.allFinite()) {
      throw SingularJacobian("non-finite Jacobian at collocation points " + describe_points(points));
    }
    Eigen::VectorXd step;
    if (n == m) {
      Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
      if (!lu.isInvertible()) throw SingularJacobian("singular Jacobian at collocation points " + describe_points(points));
      step = lu.solve(rhs);
    } else {
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(J);
      if (qr.rank() < static_cast<Eigen::Index>(m)) {
        throw SingularJacobian("rank-deficient Jacobian at collocation points " + describe_points(points));
      }
      step = qr.solve(rhs);
    }

    // Backtracking on ||F||_2.
    const double f0 = norm2(f);
    double lambda = 1.0;
    std::vector<double> trial(m);
    std::vector<double> f_trial;
    for (;;) {
      for (std::size_t j = 0; j < m; ++j) trial[j] = c[j] + lambda * step(static_cast<Eigen::Index>(j));
      f_trial = collocation_values(p, cap, points, trial);
      if (norm2(f_trial) < (1.0 - 1e-4 * lambda) * f0 || lambda < 1e-10) break;
      lambda *= 0.5;
    }
    ++steps;

    double step_norm = 0.0;
    double c_norm = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      step_norm = std::max(step_norm, std::abs(trial[j] - c[j]));
      c_norm = std::max(c_norm, std::abs(c[j]));
    }
    c = trial;
    f = std::move(f_trial);

    if (n > m && step_norm <= 1e-13 * (1.0 + c_norm)) {
      converged = true;
      result.stop_reason = "least-squares step below tolerance";
      best = c;
      break;
    }
  }

  result.constants = best;
  result.converged = converged;
  result.iterations = steps;
  result.objective = objective_J(result.constants, p, cap, p.domain.a, p.domain.b);
  return result;
}

FitResult minimize_objective(const EmdenFowlerProblem<double>& p, std::size_t cap, double a, double b,
                             std::span<const double> initial, const SimplexOptions& options) {
  const std::size_t m = initial.size();
  if (m == 0) throw ConfigError("least squares needs at least one constant");
  if (a > b) throw InvalidInterval("objective interval has a > b");

  int evaluations = 0;
  auto objective = [&](const std::vector<double>& c) {
    ++evaluations;
    const double v = objective_J(c, p, cap, a, b);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> simplex(m + 1, std::vector<double>(initial.begin(), initial.end()));
  for (std::size_t j = 0; j < m; ++j) {
    simplex[j + 1][j] += options.initial_step * std::max(1.0, std::abs(initial[j]));
  }
  std::vector<double> values(m + 1);
  for (std::size_t i = 0; i <= m; ++i) values[i] = objective(simplex[i]);

  std::vector<std::size_t> idx(m + 1);
  FitResult result;
  result.mode = FitMode::least_squares;

  auto point_along = [&](const std::vector<double>& centroid, const std::vector<double>& worst, double t) {
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = centroid[j] + t * (worst[j] - centroid[j]);
    return out;
  };

  for (;;) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
    const std::size_t best = idx.front();
    const std::size_t worst = idx.back();
    const std::size_t second_worst = idx[m > 0 ? m - 1 : 0];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
      for (std::size_t j = 0; j < m; ++j) diameter = std::max(diameter, std::abs(simplex[i][j] - simplex[best][j]));
    }
    const double spread = values[worst] - values[best];
    if (diameter < options.diameter_tolerance) {
      result.converged = true;
      result.stop_reason = "simplex diameter below tolerance";
      break;
    }
    if (spread < options.spread_tolerance) {
      result.converged = true;
      result.stop_reason = "objective spread below tolerance";
      break;
    }
    if (evaluations >= options.max_evaluations) {
      result.stop_reason = "evaluation budget exhausted";
      break;
    }

    std::vector<double> centroid(m, 0.0);
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < m; ++j) centroid[j] += simplex[i][j] / static_cast<double>(m);
    }

    const auto reflected = point_along(centroid, simplex[worst], -1.0);
    const double f_reflected = objective(reflected);
    if (f_reflected < values[best]) {
      const auto expanded = point_along(centroid, simplex[worst], -2.0);
      const double f_expanded = objective(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < values[worst];
    const auto contracted = point_along(centroid, simplex[worst], outside ? -0.5 : 0.5);
    const double f_contracted = objective(contracted);
    if (f_contracted < (outside ? f_reflected : values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < m; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
      values[i] = objective(simplex[i]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best = static_cast<std::size_t>(best_it - values.begin());
  result.constants = simplex[best];
  result.objective = values[best];
  result.iterations = evaluations;
  return result;
}

FitResult fit_constants(const EmdenFowlerProblem<double>& p, int order, std::size_t cap, const FitOptions& options) {
  if (order < 1) throw ConfigError("order must be at least 1");
  const auto m = static_cast<std::size_t>(order);
  std::vector<double> init = options.initial.value_or(std::vector<double>(m, 0.5));
  if (init.size() != m) throw ConfigError("initial constants must have exactly `order` entries");
  const Interval interval = options.interval.value_or(p.domain);

  if (options.mode == FitMode::collocation) {
    const auto pts = options.points.value_or(default_collocation_points(interval.a, interval.b, order));
    return solve_collocation(p, cap, pts, init, options.collocation);
  }
  return minimize_objective(p, cap, interval.a, interval.b, init, options.simplex);
}

}  // namespace opim
