#include <doctest.h>

#include "generators.hpp"
#include "opim/series.hpp"

using namespace opim;
using Q = Polynomial<Rational>;

namespace {

std::vector<Rational> coeffs(const PowerSeries<Rational>& s) { return {s.coeffs().begin(), s.coeffs().end()}; }

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("power_series") {
  CHECK(coeffs(power_series<Rational>(1)) == std::vector<Rational>{0, 1});
  CHECK(coeffs(power_series<Rational>(5)) == std::vector<Rational>{0, 0, 0, 0, 0, 1});
  CHECK(coeffs(power_series<Rational>(0)) == std::vector<Rational>{1});
  CHECK(power_series<Rational>(5).kind() == SeriesKind::power);
}

TEST_CASE("exp_series") {
  CHECK(coeffs(exp_series<Rational>(2)) == std::vector<Rational>{1, 1, q(1, 2)});
  CHECK(coeffs(exp_series<Rational>(0)) == std::vector<Rational>{1});
  CHECK(coeffs(exp_series<Rational>(4)) == std::vector<Rational>{1, 1, q(1, 2), q(1, 6), q(1, 24)});
  CHECK(exp_series<double>(3).function_value(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
}

TEST_CASE("compose") {
  const Q y{1, 2, 0, q(1, 3)};
  CHECK(compose(power_series<Rational>(1), y, 10) == y);
  CHECK(compose(exp_series<Rational>(1), Q{}, 10) == Q{1});
  CHECK(compose(power_series<Rational>(2), Q{0, 1}, 1).is_zero());
  CHECK(compose(exp_series<Rational>(3), Q{0, 1}, 3) == Q{1, 1, q(1, 2), q(1, 6)});
}

TEST_CASE("derivative_series") {
  CHECK(coeffs(derivative_series(exp_series<Rational>(3))) == std::vector<Rational>{1, 1, q(1, 2)});
  CHECK(coeffs(derivative_series(power_series<Rational>(5))) == std::vector<Rational>{0, 0, 0, 0, 5});
  const auto zero = derivative_series(power_series<Rational>(0));
  for (const auto& c : zero.coeffs()) CHECK(c == 0);
}

TEST_CASE("parse_series") {
  CHECK(coeffs(parse_series<Rational>("exp", 2)) == std::vector<Rational>{1, 1, q(1, 2)});
  CHECK(coeffs(parse_series<Rational>("power:3", 10)) == std::vector<Rational>{0, 0, 0, 1});
  CHECK(coeffs(parse_series<Rational>("custom:[1,1/2]", 10)) == std::vector<Rational>{1, q(1, 2)});
  CHECK_THROWS_AS(parse_series<Rational>("sin", 10), ConfigError);
}

TEST_CASE("property: compose is linear in the nonlinearity") {
  testing::Gen gen;
  for (int i = 0; i < 150; ++i) {
    std::vector<Rational> c1(static_cast<std::size_t>(gen.integer(1, 5))), c2(static_cast<std::size_t>(gen.integer(1, 5)));
    for (auto& v : c1) v = gen.rational();
    for (auto& v : c2) v = gen.rational();
    const auto g1 = custom_series<Rational>(c1);
    const auto g2 = custom_series<Rational>(c2);
    const Rational a = gen.rational();
    const Rational b = gen.rational();
    const auto y = gen.rational_poly(4);
    const std::size_t cap = static_cast<std::size_t>(gen.integer(0, 12));
    const auto lhs = compose(combine(a, g1, b, g2), y, cap);
    const auto rhs = add(scale(compose(g1, y, cap), a), scale(compose(g2, y, cap), b));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("property: compose with a power matches the exact power") {
  testing::Gen gen;
  for (int i = 0; i < 150; ++i) {
    const auto s = static_cast<std::size_t>(gen.integer(0, 5));
    const auto y = gen.real_poly(4);
    const std::size_t deg = y.is_zero() ? 0 : y.degree().value();
    const auto composed = compose(power_series<double>(s), y, s * deg);
    for (int j = 0; j < 20; ++j) {
      const double x = gen.real(-1.0, 1.0);
      CHECK(testing::rel_diff(eval(composed, x), std::pow(eval(y, x), static_cast<double>(s))) < 1e-12);
    }
  }
}

TEST_CASE("property: composing with zero yields the constant coefficient") {
  testing::Gen gen;
  for (int i = 0; i < 150; ++i) {
    std::vector<Rational> c(static_cast<std::size_t>(gen.integer(1, 6)));
    for (auto& v : c) v = gen.rational();
    const auto gamma = custom_series<Rational>(c);
    CHECK(compose(gamma, Q{}, static_cast<std::size_t>(gen.integer(0, 10))) == Q{c[0]});
  }
}
