#include <doctest.h>

#include <sstream>

#include "opim/cli.hpp"

using namespace opim;

namespace {

ParseOutcome parse(std::vector<const char*> args) {
  args.insert(args.begin(), "opim");
  return parse_args(static_cast<int>(args.size()), args.data());
}

struct Captured {
  int status;
  std::string out;
  std::string err;
};

Captured run_args(std::vector<const char*> args) {
  const auto parsed = parse(std::move(args));
  if (!parsed.config) return {parsed.exit_code, "", parsed.message};
  std::ostringstream out, err;
  const int status = run(*parsed.config, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(parse({}).exit_code == exit_status::usage);
  CHECK(parse({"solve"}).exit_code == exit_status::usage);
  CHECK(parse({"solve", "--problem", "example1", "--order", "0"}).exit_code == exit_status::usage);
  CHECK(parse({"solve", "--problem", "example1", "--degree-cap", "1"}).exit_code == exit_status::usage);
  CHECK(parse({"solve", "--problem", "example1", "--mode", "simplex"}).exit_code == exit_status::usage);
  CHECK(parse({"solve", "--problem", "example1", "--format", "xml"}).exit_code == exit_status::usage);
  CHECK(parse({"solve", "--problem", "example1", "--exp-order", "0"}).exit_code == exit_status::usage);
  CHECK(parse({"residual", "--problem", "example1"}).exit_code == exit_status::usage);
  CHECK(parse({"solve", "--config", "/nonexistent/problem.ini"}).exit_code == exit_status::usage);
  CHECK(run_args({"solve", "--problem", "polytrope"}).status == exit_status::usage);
}

TEST_CASE("flags populate the run configuration") {
  const auto parsed = parse({"solve", "--problem", "example1", "--order", "3", "--points", "0.3,0.6,0.9", "--init",
                             "0.3,0.3,0.2", "--mode", "collocation", "--format", "text", "--coeffs", "rational"});
  REQUIRE(parsed.config);
  const auto& c = *parsed.config;
  CHECK(c.command == "solve");
  CHECK(c.problem == "example1");
  CHECK(c.order == 3);
  CHECK(*c.points == std::vector<double>{0.3, 0.6, 0.9});
  CHECK(c.format == Format::text);
  CHECK(c.coefficients == CoefficientDomain::rational);
}

TEST_CASE("solve at 0.3, 0.6, 0.9") {
  const auto r = run_args({"solve", "--problem", "example1", "--order", "3", "--mode", "collocation", "--points",
                           "0.3,0.6,0.9", "--init", "0.3,0.3,0.2"});
  CHECK(r.status == exit_status::ok);
  CHECK(r.out.find("# constants=0.33423439842") != std::string::npos);
  CHECK(r.out.find("# converged=true") != std::string::npos);
}

TEST_CASE("rational coefficients") {
  const auto r = run_args({"residual", "--problem", "example1", "--constants", "1", "--coeffs", "rational",
                           "--format", "text"});
  CHECK(r.status == exit_status::ok);
  // y1 = 1 + 3x^2 + x^4/3: (6 + 4x^2) + (12 + 8x^2/3) - (4x^2 + 6)(1 + 3x^2 + x^4/3)
  const auto csv = run_args({"residual", "--problem", "example1", "--constants", "1", "--coeffs", "rational"});
  CHECK(csv.out.find("# residual=rational:[12,0,-46/3,0,-14,0,-4/3]") != std::string::npos);
}

TEST_CASE("non-converged fits exit with status 2") {
  const auto r = run_args({"solve", "--problem", "isothermal", "--order", "5"});
  CHECK(r.status == exit_status::no_convergence);
  CHECK(r.out.find("# converged=false") != std::string::npos);
}

TEST_CASE("configuration files") {
  const auto cfg = parse_config_text(R"(schema = 1
[problem]
name = quadratic
k = 2
beta = 0
gamma = power:1
g = 1,1
y0 = 0
yp0 = 0
domain = 0,1
[solver]
order = 1
mode = least_squares
init = 0.2
)");
  CHECK(cfg.problem.name == "quadratic");
  CHECK(cfg.problem.k == 2);
  CHECK(cfg.problem.g == Polynomial<Rational>{1, 1});
  CHECK(cfg.order == 1);
  CHECK(cfg.mode == FitMode::least_squares);

  CHECK_THROWS_AS(parse_config_text("[problem]\nk = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("schema = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("schema = 1\n[solver]\norder = many\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("schema = 1\n[problem]\nk = 2\ngamma = sin\n"), ConfigError);
  const auto catalog_cfg = parse_config_text("schema = 1\n[problem]\ncatalog = isothermal\n[solver]\nexp_order = 6\n");
  CHECK(catalog_cfg.catalog_name == "isothermal");
  CHECK(catalog_cfg.exp_order == 6u);
}

TEST_CASE("table1 emits a verdict line") {
  const auto r = run_args({"table1"});
  CHECK(r.out.find("# verdict=") != std::string::npos);
  CHECK((r.status == exit_status::ok || r.status == exit_status::bench_fail));
}
