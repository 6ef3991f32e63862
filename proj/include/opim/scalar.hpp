#pragma once

#include <gmpxx.h>

#include <concepts>
#include <string>
#include <string_view>

namespace opim {

using Rational = mpq_class;

/// Per-domain behaviour of a polynomial coefficient type.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr std::string_view tag = "float";
  static bool is_zero(double v) { return v == 0.0; }
  static double to_double(double v) { return v; }
  static double from_double(double v) { return v; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr std::string_view tag = "rational";
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static double to_double(const Rational& v) { return v.get_d(); }
  // Exact: every finite double is a dyadic rational.
  static Rational from_double(double v) { return Rational(v); }
};

template <class T>
concept Scalar = requires(const T& v) {
  { ScalarTraits<T>::tag } -> std::convertible_to<std::string_view>;
  { ScalarTraits<T>::is_zero(v) } -> std::same_as<bool>;
};

template <Scalar To, Scalar From>
To scalar_cast(const From& v) {
  if constexpr (std::same_as<To, From>) {
    return v;
  } else if constexpr (std::same_as<To, double>) {
    return ScalarTraits<From>::to_double(v);
  } else {
    return ScalarTraits<To>::from_double(ScalarTraits<From>::to_double(v));
  }
}

/// Parses "3", "-1/6", "0.25" or "1e-3". Decimal strings become exact
/// rationals in the rational domain ("0.3" -> 3/10), not the nearest double.
template <Scalar T>
T parse_scalar(std::string_view text);
template <>
double parse_scalar<double>(std::string_view text);
template <>
Rational parse_scalar<Rational>(std::string_view text);

/// Round-trip text form: shortest repr for doubles, "p/q" for rationals.
std::string format_scalar(double v);
std::string format_scalar(const Rational& v);

}  // namespace opim
