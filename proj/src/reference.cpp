#include "opim/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "opim/series.hpp"

namespace opim {

template <Scalar T>
Polynomial<T> bootstrap_polynomial(const EmdenFowlerProblem<T>& p, std::size_t order) {
  std::vector<T> c(order + 1, T(0));
  c[0] = p.y0;
  if (order >= 1) c[1] = p.yp0;
  for (std::size_t j = 0; j + 2 <= order; ++j) {
    const T balance = p.k + T(static_cast<long>(j + 1));
    if (ScalarTraits<T>::is_zero(balance)) {
      throw SeriesBreakdown("series coefficient of x^" + std::to_string(j + 2) + " is undetermined (j+1+k = 0)");
    }
    const Polynomial<T> known(std::vector<T>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(j + 2)));
    const auto forcing = add(mul_truncated(p.beta, compose(p.gamma, known, j), j), p.g);
    c[j + 2] = -forcing.coeff(j) / (T(static_cast<long>(j + 2)) * balance);
  }
  return Polynomial<T>(std::move(c));
}

template Polynomial<double> bootstrap_polynomial<double>(const EmdenFowlerProblem<double>&, std::size_t);
template Polynomial<Rational> bootstrap_polynomial<Rational>(const EmdenFowlerProblem<Rational>&, std::size_t);

BootstrapState bootstrap_series(const EmdenFowlerProblem<double>& p, double x_b, std::size_t order) {
  const auto series = bootstrap_polynomial(p, order);
  return {eval(series, x_b), eval(differentiate(series), x_b)};
}

ReferenceSolution::ReferenceSolution(std::vector<double> nodes, std::vector<double> values,
                                     std::vector<double> derivatives, double tolerance_achieved,
                                     double bootstrap_radius, Polynomial<double> near_origin)
    : nodes_(std::move(nodes)),
      values_(std::move(values)),
      derivatives_(std::move(derivatives)),
      tolerance_achieved_(tolerance_achieved),
      bootstrap_radius_(bootstrap_radius),
      near_origin_(std::move(near_origin)) {}

namespace {

struct HermiteCell {
  std::size_t i;
  double h;
  double t;
};

HermiteCell locate(const std::vector<double>& nodes, double x) {
  auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  std::size_t i = it == nodes.begin() ? 0 : static_cast<std::size_t>(it - nodes.begin()) - 1;
  if (i + 1 >= nodes.size()) i = nodes.size() - 2;
  const double h = nodes[i + 1] - nodes[i];
  return {i, h, (x - nodes[i]) / h};
}

}  // namespace

double ReferenceSolution::operator()(double x) const {
  if (x < 0.0 || x > nodes_.back()) throw InvalidInterval("reference solution evaluated outside its range");
  if (x < bootstrap_radius_) return eval(near_origin_, x);
  if (nodes_.size() == 1) return values_.front();
  const auto [i, h, t] = locate(nodes_, x);
  if (t == 0.0) return values_[i];
  if (t == 1.0) return values_[i + 1];
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * values_[i] + (t3 - 2 * t2 + t) * h * derivatives_[i] +
         (-2 * t3 + 3 * t2) * values_[i + 1] + (t3 - t2) * h * derivatives_[i + 1];
}

double ReferenceSolution::derivative(double x) const {
  if (x < 0.0 || x > nodes_.back()) throw InvalidInterval("reference solution evaluated outside its range");
  if (x < bootstrap_radius_) return eval(differentiate(near_origin_), x);
  if (nodes_.size() == 1) return derivatives_.front();
  const auto [i, h, t] = locate(nodes_, x);
  if (t == 0.0) return derivatives_[i];
  if (t == 1.0) return derivatives_[i + 1];
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * values_[i] + (-6 * t2 + 6 * t) * values_[i + 1]) / h +
         (3 * t2 - 4 * t + 1) * derivatives_[i] + (3 * t2 - 2 * t) * derivatives_[i + 1];
}

std::string ReferenceSolution::to_csv() const {
  std::ostringstream out;
  out << "x,y,dy\n";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    out << format_scalar(nodes_[i]) << ',' << format_scalar(values_[i]) << ',' << format_scalar(derivatives_[i])
        << '\n';
  }
  return out.str();
}

namespace {

// Dormand-Prince 5(4).
constexpr std::array<double, 7> kC = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// Fifth-order minus embedded fourth-order weights.
constexpr std::array<double, 7> kE = {71.0 / 57600,  0.0,          -71.0 / 16695, 71.0 / 1920,
                                      -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

// Blow-up drives accepted steps toward the underflow limit very slowly.
constexpr std::size_t kMaxAttempts = 200000;

struct State {
  double y;
  double dy;
};

}  // namespace

ReferenceSolution integrate(const EmdenFowlerProblem<double>& p, double x_end, double tol,
                            const IntegrateOptions& options) {
  if (!(tol >= 1e-13)) throw ConfigError("reference tolerance must be at least 1e-13");
  const double span_default = p.domain.b - p.domain.a;
  const double x_b = options.bootstrap_radius.value_or(1e-3 * span_default);
  if (!(x_b > 0.0)) throw ConfigError("bootstrap radius must be positive");
  if (!(x_end > x_b)) throw InvalidInterval("x_end must exceed the bootstrap radius");
  if (p.k < 0.0) throw ConfigError("reference integrator requires k >= 0");

  const auto series = bootstrap_polynomial(p, options.series_order);
  auto rhs = [&](double x, const State& s) -> State {
    const double forcing = eval(p.beta, x) * p.gamma.function_value(s.y) + eval(p.g, x);
    return {s.dy, -p.k / x * s.dy - forcing};
  };

  const double span = x_end - x_b;
  std::vector<double> nodes{x_b};
  std::vector<double> values{eval(series, x_b)};
  std::vector<double> derivs{eval(differentiate(series), x_b)};
  double worst_error = 0.0;

  double x = x_b;
  State s{values.back(), derivs.back()};
  double h = std::min(1e-2 * span, x_b);

  std::array<State, 7> k{};
  std::size_t attempts = 0;
  while (x < x_end) {
    if (x + h > x_end) h = x_end - x;
    if (h < 1e-14 * span) throw StepUnderflow("step size underflow at x=" + std::to_string(x));
    if (++attempts > kMaxAttempts) throw StepUnderflow("step budget exhausted at x=" + std::to_string(x));

    k[0] = rhs(x, s);
    for (std::size_t stage = 1; stage < 7; ++stage) {
      State tmp = s;
      for (std::size_t j = 0; j < stage; ++j) {
        tmp.y += h * kA[stage][j] * k[j].y;
        tmp.dy += h * kA[stage][j] * k[j].dy;
      }
      k[stage] = rhs(x + kC[stage] * h, tmp);
    }
    State next = s;
    State err{0.0, 0.0};
    for (std::size_t j = 0; j < 7; ++j) {
      if (j < 6) {
        next.y += h * kA[6][j] * k[j].y;
        next.dy += h * kA[6][j] * k[j].dy;
      }
      err.y += h * kE[j] * k[j].y;
      err.dy += h * kE[j] * k[j].dy;
    }
    const double e = std::max(std::abs(err.y), std::abs(err.dy));
    if (!std::isfinite(e) || !std::isfinite(next.y)) {
      h *= 0.5;
      continue;
    }
    const double factor = e == 0.0 ? 5.0 : 0.9 * std::pow(tol / e, 0.2);
    if (e <= tol) {
      x = (x + h >= x_end) ? x_end : x + h;
      s = next;
      nodes.push_back(x);
      values.push_back(s.y);
      derivs.push_back(s.dy);
      worst_error = std::max(worst_error, e);
      h *= std::clamp(factor, 0.2, 5.0);
    } else {
      h *= std::min(0.5, std::max(0.1, factor));
    }
  }

  return ReferenceSolution(std::move(nodes), std::move(values), std::move(derivs), worst_error, x_b, series);
}

}  // namespace opim
