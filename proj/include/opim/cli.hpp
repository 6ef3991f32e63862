#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "opim/bench.hpp"
#include "opim/optimize.hpp"
#include "opim/problem.hpp"

namespace opim {

enum class CoefficientDomain { rational, floating };

/// Settings from a problem/solver configuration file. Solver keys left out
/// of the file stay empty so command-line flags and defaults can fill them.
struct ConfigFile {
  int schema = 1;
  EmdenFowlerProblem<Rational> problem;
  std::string gamma_spec = "power:1";       // re-parsed if --exp-order overrides the file
  std::optional<std::string> catalog_name;  // [problem] catalog = <name> instead of explicit fields
  std::optional<int> order;
  std::optional<std::size_t> degree_cap;
  std::optional<FitMode> mode;
  std::optional<std::vector<double>> points;
  std::optional<std::vector<double>> initial;
  std::optional<std::vector<double>> constants;
  std::optional<std::size_t> exp_order;
  std::optional<CoefficientDomain> coefficients;
  std::optional<double> reference_tolerance;
};

/// Reads the INI-style configuration (see docs/config.md). Throws ConfigError.
ConfigFile load_config_file(const std::string& path);
ConfigFile parse_config_text(const std::string& text);

struct RunConfig {
  std::string command;  // solve | residual | table1 | bench
  std::optional<std::string> problem;
  std::optional<std::string> config_path;
  std::optional<EmdenFowlerProblem<Rational>> custom_problem;  // filled from --config
  int order = 3;
  std::optional<std::size_t> degree_cap;
  CoefficientDomain coefficients = CoefficientDomain::floating;
  FitMode mode = FitMode::collocation;
  std::optional<std::vector<double>> points;
  std::optional<std::vector<double>> initial;
  std::optional<std::vector<double>> constants;
  std::optional<Interval> domain;
  Format format = Format::csv;
  std::optional<std::string> out_path;
  std::optional<std::string> dump_trace;
  std::size_t exp_order = 10;
  double reference_tolerance = 1e-12;
};

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = 0;    // meaningful when config is empty
  std::string message;  // usage error or help text
};

/// Command-line parsing plus configuration-file merge and validation.
/// Flags given on the command line win over keys in --config.
ParseOutcome parse_args(int argc, const char* const* argv);

namespace exit_status {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int no_convergence = 2;
inline constexpr int bench_fail = 3;
inline constexpr int numerical_failure = 4;
}  // namespace exit_status

/// Executes a parsed command. Data goes to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace opim
