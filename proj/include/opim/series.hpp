#pragma once

// Truncated power series in y for the nonlinearity gamma(y) of the equation
// y'' + (k/x) y' + beta(x) gamma(y) + g(x) = 0.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opim/poly.hpp"

namespace opim {

enum class SeriesKind { power, exp, custom };

template <Scalar T>
class PowerSeries {
 public:
  /// `coeffs` holds a0..aT and must not be empty.
  PowerSeries(std::vector<T> coeffs, SeriesKind kind, std::string tag)
      : a_(std::move(coeffs)), kind_(kind), tag_(std::move(tag)) {
    if (a_.empty()) throw ConfigError("power series needs at least one coefficient");
  }

  std::span<const T> coeffs() const { return a_; }
  /// Truncation order T; coeffs().size() == order() + 1.
  std::size_t order() const { return a_.size() - 1; }
  SeriesKind kind() const { return kind_; }
  const std::string& tag() const { return tag_; }

  /// Truncated series at y.
  T value_at(const T& y) const {
    T acc(0);
    for (std::size_t j = a_.size(); j-- > 0;) acc = acc * y + a_[j];
    return acc;
  }

  /// Derivative of the truncated series at y.
  T slope_at(const T& y) const {
    T acc(0);
    for (std::size_t j = a_.size(); j-- > 1;) acc = acc * y + a_[j] * T(static_cast<long>(j));
    return acc;
  }

  /// gamma(y) as a function: the exponential is evaluated exactly rather
  /// than through its truncation. Used by the numerical reference.
  double function_value(double y) const {
    if (kind_ == SeriesKind::exp) return std::exp(y);
    double acc = 0.0;
    for (std::size_t j = a_.size(); j-- > 0;) acc = acc * y + scalar_cast<double>(a_[j]);
    return acc;
  }

  template <Scalar U>
  PowerSeries<U> cast() const {
    std::vector<U> out;
    out.reserve(a_.size());
    for (const auto& v : a_) out.push_back(scalar_cast<U>(v));
    return PowerSeries<U>(std::move(out), kind_, tag_);
  }

 private:
  std::vector<T> a_;
  SeriesKind kind_;
  std::string tag_;
};

/// y^s.
template <Scalar T>
PowerSeries<T> power_series(std::size_t s) {
  std::vector<T> a(s + 1, T(0));
  a[s] = T(1);
  return PowerSeries<T>(std::move(a), SeriesKind::power, "power(" + std::to_string(s) + ")");
}

/// Maclaurin series of e^y through y^order.
template <Scalar T>
PowerSeries<T> exp_series(std::size_t order) {
  std::vector<T> a(order + 1);
  T inv_fact(1);
  for (std::size_t j = 0; j <= order; ++j) {
    if (j > 0) inv_fact /= T(static_cast<long>(j));
    a[j] = inv_fact;
  }
  return PowerSeries<T>(std::move(a), SeriesKind::exp, "exp");
}

template <Scalar T>
PowerSeries<T> custom_series(std::vector<T> coeffs) {
  return PowerSeries<T>(std::move(coeffs), SeriesKind::custom, "custom");
}

/// Termwise d/dy; the order drops by one (a zero series stays at order 0).
template <Scalar T>
PowerSeries<T> derivative_series(const PowerSeries<T>& gamma) {
  const auto a = gamma.coeffs();
  if (a.size() <= 1) return PowerSeries<T>({T(0)}, SeriesKind::custom, "d(" + gamma.tag() + ")");
  std::vector<T> d(a.size() - 1);
  for (std::size_t j = 1; j < a.size(); ++j) d[j - 1] = a[j] * T(static_cast<long>(j));
  return PowerSeries<T>(std::move(d), SeriesKind::custom, "d(" + gamma.tag() + ")");
}

/// alpha*g1 + beta*g2, padded to the longer order.
template <Scalar T>
PowerSeries<T> combine(const T& alpha, const PowerSeries<T>& g1, const T& beta, const PowerSeries<T>& g2) {
  std::vector<T> out(std::max(g1.coeffs().size(), g2.coeffs().size()), T(0));
  for (std::size_t j = 0; j < g1.coeffs().size(); ++j) out[j] += alpha * g1.coeffs()[j];
  for (std::size_t j = 0; j < g2.coeffs().size(); ++j) out[j] += beta * g2.coeffs()[j];
  return custom_series(std::move(out));
}

/// sum_j a_j y^j by Horner in y; every product is truncated at degree `cap`.
template <Scalar T>
Polynomial<T> compose(const PowerSeries<T>& gamma, const Polynomial<T>& y, std::size_t cap) {
  const auto a = gamma.coeffs();
  Polynomial<T> acc = Polynomial<T>::constant(a.back());
  for (std::size_t j = a.size() - 1; j-- > 0;) {
    acc = add(mul_truncated(acc, y, cap), Polynomial<T>::constant(a[j]));
  }
  return truncate(acc, cap);
}

/// "power:s", "exp" or "custom:[a0,a1,...]". `exp_order` applies to "exp".
template <Scalar T>
PowerSeries<T> parse_series(std::string_view text, std::size_t exp_order);

}  // namespace opim
