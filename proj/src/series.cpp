#include "opim/series.hpp"

#include <charconv>

namespace opim {

template <Scalar T>
PowerSeries<T> parse_series(std::string_view text, std::size_t exp_order) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "exp") return exp_series<T>(exp_order);
  if (text.starts_with("power:")) {
    const auto digits = text.substr(6);
    std::size_t s = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), s);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw ConfigError("power exponent must be a nonnegative integer: '" + std::string(text) + "'");
    }
    return power_series<T>(s);
  }
  if (text.starts_with("custom:")) {
    auto body = text.substr(7);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
      throw ConfigError("custom series coefficients must be bracketed: '" + std::string(text) + "'");
    }
    auto coeffs = parse_scalar_list<T>(body.substr(1, body.size() - 2));
    if (coeffs.empty()) throw ConfigError("custom series needs at least one coefficient");
    return custom_series<T>(std::move(coeffs));
  }
  throw ConfigError("unknown nonlinearity '" + std::string(text) + "' (expected power:s, exp or custom:[...])");
}

template PowerSeries<double> parse_series<double>(std::string_view, std::size_t);
template PowerSeries<Rational> parse_series<Rational>(std::string_view, std::size_t);

}  // namespace opim
