#include "opim/opia.hpp"

#include <sstream>

namespace opim {

template <Scalar T>
Polynomial<T> initial_guess(const EmdenFowlerProblem<T>& p) {
  return Polynomial<T>{p.y0, p.yp0};
}

template <Scalar T>
Polynomial<T> linearized_nonlinearity(const Polynomial<T>& y, const EmdenFowlerProblem<T>& p, std::size_t cap) {
  const T c = y.coeff(0);
  const T value = p.gamma.value_at(c);
  const T slope = p.gamma.slope_at(c);
  // gamma(c) + gamma'(c)(y - c)
  const auto lin = add(Polynomial<T>::constant(T(value - slope * c)), scale(y, slope));
  return mul_truncated(p.beta, lin, cap);
}

template <Scalar T>
Polynomial<T> opia1_correction(const Polynomial<T>& y_n, const EmdenFowlerProblem<T>& p, std::size_t cap) {
  const auto dy = differentiate(y_n);
  auto operator_value = differentiate(dy);
  if (!ScalarTraits<T>::is_zero(p.k)) {
    try {
      operator_value = add(operator_value, scale(divide_by_x(dy), p.k));
    } catch (const NonzeroConstantTerm& e) {
      throw InternalInvariantBreach(std::string("iterate has nonzero slope at x=0: ") + e.what());
    }
  }
  operator_value = add(operator_value, linearized_nonlinearity(y_n, p, cap));
  operator_value = add(operator_value, p.g);
  return truncate(double_antiderivative_zero_ic(negate(operator_value)), cap);
}

template <Scalar T>
IterationTrace<T> iterate(const EmdenFowlerProblem<T>& p, std::span<const T> constants, std::size_t cap) {
  if (const auto issues = validate(p); !issues.empty()) {
    throw ConfigError("invalid problem '" + p.name + "': " + issues.front().message);
  }
  if (constants.empty()) throw ConfigError("iteration order must be at least 1");

  IterationTrace<T> trace;
  trace.order = static_cast<int>(constants.size());
  trace.degree_cap = cap;
  trace.constants.assign(constants.begin(), constants.end());
  trace.iterates.push_back(truncate(initial_guess(p), cap));

  T weight(0);
  for (std::size_t n = 0; n < constants.size(); ++n) {
    weight += constants[n];
    const auto& y_n = trace.iterates.back();
    auto correction = opia1_correction(y_n, p, cap);
    auto next = truncate(add(y_n, scale(correction, weight)), cap);
    trace.corrections.push_back(std::move(correction));
    trace.iterates.push_back(std::move(next));
  }
  return trace;
}

template <Scalar T>
std::string dump_trace(const IterationTrace<T>& trace) {
  std::ostringstream out;
  out << "order=" << trace.order << " degree_cap=" << trace.degree_cap << " domain=" << ScalarTraits<T>::tag << '\n';
  out << "constants=";
  for (std::size_t i = 0; i < trace.constants.size(); ++i) {
    out << (i ? "," : "") << format_scalar(trace.constants[i]);
  }
  out << '\n';
  for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
    out << "y_" << n << " = " << to_string(trace.iterates[n]) << '\n';
    if (n < trace.corrections.size()) out << "yc_" << n << " = " << to_string(trace.corrections[n]) << '\n';
  }
  return out.str();
}

#define OPIM_INSTANTIATE(T)                                                                                   \
  template Polynomial<T> initial_guess<T>(const EmdenFowlerProblem<T>&);                                      \
  template Polynomial<T> linearized_nonlinearity<T>(const Polynomial<T>&, const EmdenFowlerProblem<T>&,       \
                                                    std::size_t);                                             \
  template Polynomial<T> opia1_correction<T>(const Polynomial<T>&, const EmdenFowlerProblem<T>&, std::size_t); \
  template IterationTrace<T> iterate<T>(const EmdenFowlerProblem<T>&, std::span<const T>, std::size_t);       \
  template std::string dump_trace<T>(const IterationTrace<T>&);

OPIM_INSTANTIATE(double)
OPIM_INSTANTIATE(Rational)

#undef OPIM_INSTANTIATE

}  // namespace opim
