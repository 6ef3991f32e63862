#pragma once

// Dense univariate polynomials in x over exact rationals or doubles.
//
// Every iterate, correction and residual of the solver is one of these.
// Values are immutable after construction and always canonical: the last
// stored coefficient is nonzero, and the zero polynomial stores nothing.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opim/errors.hpp"
#include "opim/scalar.hpp"

namespace opim {

/// Polynomial degree with a distinguished minus-infinity value for the zero
/// polynomial. There is no arithmetic on Degree on purpose.
class Degree {
 public:
  explicit constexpr Degree(std::size_t d) : value_(d), finite_(true) {}
  static constexpr Degree minus_infinity() { return Degree(); }

  constexpr bool is_minus_infinity() const { return !finite_; }
  /// Precondition: !is_minus_infinity().
  std::size_t value() const {
    if (!finite_) throw InternalInvariantBreach("degree of the zero polynomial has no value");
    return value_;
  }

  friend constexpr bool operator==(const Degree&, const Degree&) = default;
  friend constexpr std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (a.finite_ != b.finite_) return a.finite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }

 private:
  constexpr Degree() = default;
  std::size_t value_ = 0;
  bool finite_ = false;
};

template <Scalar T>
class Polynomial {
 public:
  using value_type = T;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { canonicalize(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { canonicalize(); }

  static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }
  static Polynomial monomial(T c, std::size_t power) {
    std::vector<T> v(power + 1, T(0));
    v[power] = std::move(c);
    return Polynomial(std::move(v));
  }
  static Polynomial identity() { return monomial(T(1), 1); }

  /// c0 ... cd, coefficient of x^i at index i.
  std::span<const T> coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }
  Degree degree() const { return c_.empty() ? Degree::minus_infinity() : Degree(c_.size() - 1); }

  /// Coefficient of x^i; zero past the degree.
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }

  template <Scalar U>
  Polynomial<U> cast() const {
    std::vector<U> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(scalar_cast<U>(v));
    return Polynomial<U>(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void canonicalize() {
    while (!c_.empty() && ScalarTraits<T>::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

template <Scalar T>
Polynomial<T> add(const Polynomial<T>& p, const Polynomial<T>& q) {
  std::vector<T> out(std::max(p.size(), q.size()), T(0));
  for (std::size_t i = 0; i < p.size(); ++i) out[i] += p.coeffs()[i];
  for (std::size_t i = 0; i < q.size(); ++i) out[i] += q.coeffs()[i];
  return Polynomial<T>(std::move(out));
}

template <Scalar T>
Polynomial<T> scale(const Polynomial<T>& p, const T& s) {
  std::vector<T> out(p.coeffs().begin(), p.coeffs().end());
  for (auto& v : out) v *= s;
  return Polynomial<T>(std::move(out));
}

template <Scalar T>
Polynomial<T> negate(const Polynomial<T>& p) {
  return scale(p, T(-1));
}

template <Scalar T>
Polynomial<T> sub(const Polynomial<T>& p, const Polynomial<T>& q) {
  return add(p, negate(q));
}

/// Coefficient convolution. Products above `cap` are never formed.
template <Scalar T>
Polynomial<T> mul_truncated(const Polynomial<T>& p, const Polynomial<T>& q, std::size_t cap) {
  if (p.is_zero() || q.is_zero()) return {};
  const std::size_t n = std::min(p.size() + q.size() - 1, cap + 1);
  std::vector<T> out(n, T(0));
  const auto a = p.coeffs();
  const auto b = q.coeffs();
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (ScalarTraits<T>::is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] += a[i] * b[j];
  }
  return Polynomial<T>(std::move(out));
}

template <Scalar T>
Polynomial<T> mul(const Polynomial<T>& p, const Polynomial<T>& q) {
  if (p.is_zero() || q.is_zero()) return {};
  return mul_truncated(p, q, p.size() + q.size() - 2);
}

template <Scalar T>
Polynomial<T> differentiate(const Polynomial<T>& p) {
  if (p.size() <= 1) return {};
  std::vector<T> out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p.coeffs()[i] * T(static_cast<long>(i));
  return Polynomial<T>(std::move(out));
}

/// q with q'' = p and q(0) = q'(0) = 0.
template <Scalar T>
Polynomial<T> double_antiderivative_zero_ic(const Polynomial<T>& p) {
  if (p.is_zero()) return {};
  std::vector<T> out(p.size() + 2, T(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const long denom = static_cast<long>((i + 1) * (i + 2));
    out[i + 2] = p.coeffs()[i] / T(denom);
  }
  return Polynomial<T>(std::move(out));
}

/// p(x)/x. Throws NonzeroConstantTerm unless p(0) == 0 exactly.
template <Scalar T>
Polynomial<T> divide_by_x(const Polynomial<T>& p) {
  if (p.is_zero()) return {};
  if (!ScalarTraits<T>::is_zero(p.coeffs()[0])) {
    throw NonzeroConstantTerm("divide_by_x: constant coefficient " + format_scalar(p.coeffs()[0]) +
                              " is not zero");
  }
  return Polynomial<T>(std::vector<T>(p.coeffs().begin() + 1, p.coeffs().end()));
}

/// Horner.
template <Scalar T>
T eval(const Polynomial<T>& p, const T& x) {
  T acc(0);
  const auto c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

inline double eval(const Polynomial<double>& p, double x) { return eval<double>(p, x); }

/// Antiderivative with zero constant term.
template <Scalar T>
Polynomial<T> antiderivative(const Polynomial<T>& p) {
  if (p.is_zero()) return {};
  std::vector<T> out(p.size() + 1, T(0));
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p.coeffs()[i] / T(static_cast<long>(i + 1));
  return Polynomial<T>(std::move(out));
}

/// Exact for rational coefficients and bounds.
template <Scalar T>
T definite_integral(const Polynomial<T>& p, const T& a, const T& b) {
  if (a > b) throw InvalidInterval("definite_integral: lower bound exceeds upper bound");
  const auto prim = antiderivative(p);
  return eval(prim, b) - eval(prim, a);
}

/// Drops every coefficient above degree `cap`.
template <Scalar T>
Polynomial<T> truncate(const Polynomial<T>& p, std::size_t cap) {
  if (p.size() <= cap + 1) return p;
  return Polynomial<T>(std::vector<T>(p.coeffs().begin(), p.coeffs().begin() + static_cast<std::ptrdiff_t>(cap + 1)));
}

/// Serialized form "<domain>:[c0,c1,...]", e.g. "rational:[1,0,-1/2]".
template <Scalar T>
std::string to_string(const Polynomial<T>& p) {
  std::string out(ScalarTraits<T>::tag);
  out += ":[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += format_scalar(p.coeffs()[i]);
  }
  out += ']';
  return out;
}

/// Inverse of to_string. The domain tag must match T.
template <Scalar T>
Polynomial<T> parse_polynomial(std::string_view text);

/// Parses a bare comma-separated coefficient list "c0, c1, ...".
template <Scalar T>
std::vector<T> parse_scalar_list(std::string_view text);

/// Human-readable form, highest power first: "1/3*x^4 + 3*x^2".
template <Scalar T>
std::string pretty(const Polynomial<T>& p);

}  // namespace opim
