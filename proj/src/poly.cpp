#include "opim/poly.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

namespace opim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double_token(std::string_view s) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ConfigError("not a number: '" + std::string(s) + "'");
  return v;
}

// Decimal literal -> exact rational: [sign] digits [. digits] [e|E [sign] digits].
Rational parse_decimal_exact(std::string_view s) {
  std::string digits;
  bool negative = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  long frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  long exponent = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    const std::string_view rest = s.substr(i);
    const auto* first = rest.data();
    if (!rest.empty() && rest.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, rest.data() + rest.size(), exponent);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) {
      throw ConfigError("bad exponent in '" + std::string(s) + "'");
    }
    i = s.size();
  }
  if (!any_digit || i != s.size()) throw ConfigError("not a number: '" + std::string(s) + "'");

  mpz_class num(digits);
  const long shift = exponent - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational out = shift >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

}  // namespace

template <>
double parse_scalar<double>(std::string_view text) {
  const auto s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const double den = parse_double_token(trim(s.substr(slash + 1)));
    if (den == 0.0) throw ConfigError("zero denominator in '" + std::string(s) + "'");
    return parse_double_token(trim(s.substr(0, slash))) / den;
  }
  return parse_double_token(s);
}

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  const auto s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_decimal_exact(trim(s.substr(0, slash)));
    const Rational den = parse_decimal_exact(trim(s.substr(slash + 1)));
    if (sgn(den) == 0) throw ConfigError("zero denominator in '" + std::string(s) + "'");
    return Rational(num / den);
  }
  return parse_decimal_exact(s);
}

std::string format_scalar(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string format_scalar(const Rational& v) { return v.get_str(); }

template <Scalar T>
std::vector<T> parse_scalar_list(std::string_view text) {
  std::vector<T> out;
  auto s = trim(text);
  if (s.empty()) return out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(parse_scalar<T>(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  return out;
}

template <Scalar T>
Polynomial<T> parse_polynomial(std::string_view text) {
  const auto s = trim(text);
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) throw ConfigError("polynomial text lacks a domain tag");
  if (trim(s.substr(0, colon)) != ScalarTraits<T>::tag) {
    throw ConfigError("polynomial domain tag '" + std::string(s.substr(0, colon)) + "' does not match '" +
                      std::string(ScalarTraits<T>::tag) + "'");
  }
  auto body = trim(s.substr(colon + 1));
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw ConfigError("polynomial coefficients must be bracketed");
  }
  return Polynomial<T>(parse_scalar_list<T>(body.substr(1, body.size() - 2)));
}

template <Scalar T>
std::string pretty(const Polynomial<T>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = p.size(); i-- > 0;) {
    const T& c = p.coeffs()[i];
    if (ScalarTraits<T>::is_zero(c)) continue;
    std::string term = format_scalar(c);
    if (!out.empty()) {
      if (term.front() == '-') {
        out += " - ";
        term.erase(0, 1);
      } else {
        out += " + ";
      }
    }
    out += term;
    if (i >= 1) out += "*x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

template std::vector<double> parse_scalar_list<double>(std::string_view);
template std::vector<Rational> parse_scalar_list<Rational>(std::string_view);
template Polynomial<double> parse_polynomial<double>(std::string_view);
template Polynomial<Rational> parse_polynomial<Rational>(std::string_view);
template std::string pretty<double>(const Polynomial<double>&);
template std::string pretty<Rational>(const Polynomial<Rational>&);

}  // namespace opim
