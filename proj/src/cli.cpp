#include "opim/cli.hpp"

#include <CLI11.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "opim/opia.hpp"

namespace opim {

namespace pt = boost::property_tree;

namespace {

template <class T>
std::optional<T> get_opt(const pt::ptree& tree, const std::string& path) {
  if (auto v = tree.get_optional<std::string>(path)) {
    if constexpr (std::is_same_v<T, std::string>) {
      return *v;
    } else {
      try {
        return boost::lexical_cast<T>(*v);
      } catch (const boost::bad_lexical_cast&) {
        throw ConfigError("config key '" + path + "' has invalid value '" + *v + "'");
      }
    }
  }
  return std::nullopt;
}

Interval parse_interval(std::string_view text) {
  const auto v = parse_scalar_list<double>(text);
  if (v.size() != 2) throw ConfigError("domain must be 'a,b'");
  return {v[0], v[1]};
}

CoefficientDomain parse_coefficient_domain(std::string_view text) {
  if (text == "rational") return CoefficientDomain::rational;
  if (text == "float") return CoefficientDomain::floating;
  throw ConfigError("unknown coefficient domain '" + std::string(text) + "' (expected rational or float)");
}

}  // namespace

ConfigFile parse_config_text(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  ConfigFile cfg;
  const auto schema = get_opt<int>(tree, "schema");
  if (!schema) throw ConfigError("config is missing 'schema = 1'");
  if (*schema != 1) throw ConfigError("unsupported config schema " + std::to_string(*schema));
  cfg.schema = *schema;

  const auto exp_order = get_opt<std::size_t>(tree, "solver.exp_order");
  cfg.exp_order = exp_order;
  if (const auto name = get_opt<std::string>(tree, "problem.catalog")) {
    cfg.catalog_name = *name;
  } else {
    auto& p = cfg.problem;
    p.name = get_opt<std::string>(tree, "problem.name").value_or("custom");
    const auto k = get_opt<std::string>(tree, "problem.k");
    if (!k) throw ConfigError("config [problem] needs 'k' (or 'catalog')");
    p.k = parse_scalar<Rational>(*k);
    p.beta = Polynomial<Rational>(parse_scalar_list<Rational>(get_opt<std::string>(tree, "problem.beta").value_or("0")));
    cfg.gamma_spec = get_opt<std::string>(tree, "problem.gamma").value_or("power:1");
    p.gamma = parse_series<Rational>(cfg.gamma_spec, exp_order.value_or(10));
    p.g = Polynomial<Rational>(parse_scalar_list<Rational>(get_opt<std::string>(tree, "problem.g").value_or("0")));
    p.y0 = parse_scalar<Rational>(get_opt<std::string>(tree, "problem.y0").value_or("0"));
    p.yp0 = parse_scalar<Rational>(get_opt<std::string>(tree, "problem.yp0").value_or("0"));
    if (const auto d = get_opt<std::string>(tree, "problem.domain")) p.domain = parse_interval(*d);
  }

  cfg.order = get_opt<int>(tree, "solver.order");
  cfg.degree_cap = get_opt<std::size_t>(tree, "solver.degree_cap");
  if (const auto m = get_opt<std::string>(tree, "solver.mode")) cfg.mode = parse_fit_mode(*m);
  if (const auto v = get_opt<std::string>(tree, "solver.points")) cfg.points = parse_scalar_list<double>(*v);
  if (const auto v = get_opt<std::string>(tree, "solver.init")) cfg.initial = parse_scalar_list<double>(*v);
  if (const auto v = get_opt<std::string>(tree, "solver.constants")) cfg.constants = parse_scalar_list<double>(*v);
  if (const auto v = get_opt<std::string>(tree, "solver.coeffs")) cfg.coefficients = parse_coefficient_domain(*v);
  cfg.reference_tolerance = get_opt<double>(tree, "solver.ref_tol");
  return cfg;
}

ConfigFile load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

ParseOutcome parse_args(int argc, const char* const* argv) {
  CLI::App app{"Optimal perturbation iteration solver for singular Emden-Fowler initial value problems", "opim"};
  app.require_subcommand(1);

  struct Raw {
    std::string problem, config, mode, points, init, constants, domain, out, format, dump_trace, coeffs;
    int order = 0;
    std::size_t degree_cap = 0, exp_order = 0;
    double ref_tol = 0.0;
  } raw;

  std::vector<CLI::App*> subs;
  subs.push_back(app.add_subcommand("solve", "fit the constants for one problem and report the approximant"));
  subs.push_back(app.add_subcommand("residual", "dump the residual R(x; C) for given constants"));
  subs.push_back(app.add_subcommand("table1", "example-1 absolute errors at orders 4 and 5 with verdict"));
  subs.push_back(app.add_subcommand("bench", "error-table verdict plus a solve of every catalog problem"));

  for (auto* sub : subs) {
    sub->add_option("--problem", raw.problem, "catalog problem name");
    sub->add_option("--config", raw.config, "problem/solver configuration file");
    sub->add_option("--order", raw.order, "approximation order m (>= 1)");
    sub->add_option("--degree-cap", raw.degree_cap, "polynomial degree cap D (>= 2, default 4(m+1))");
    sub->add_option("--mode", raw.mode, "collocation | least_squares");
    sub->add_option("--points", raw.points, "collocation points, comma separated");
    sub->add_option("--init", raw.init, "initial constants, comma separated");
    sub->add_option("--constants", raw.constants, "constants C for the residual command");
    sub->add_option("--domain", raw.domain, "domain override a,b");
    sub->add_option("--out", raw.out, "output path (default: standard output)");
    sub->add_option("--format", raw.format, "csv | text");
    sub->add_option("--dump-trace", raw.dump_trace, "write the iteration trace to this path");
    sub->add_option("--exp-order", raw.exp_order, "truncation order of the exponential series (>= 1)");
    sub->add_option("--ref-tol", raw.ref_tol, "reference integrator tolerance");
    sub->add_option("--coeffs", raw.coeffs, "coefficient domain: rational | float");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, exit_status::ok, app.help()};
  } catch (const CLI::ParseError& e) {
    return {std::nullopt, exit_status::usage, std::string("usage error: ") + e.what()};
  }

  auto given = [&](const char* flag) { return app.get_subcommands().front()->count(flag) > 0; };
  auto usage = [](std::string msg) { return ParseOutcome{std::nullopt, exit_status::usage, "usage error: " + std::move(msg)}; };

  RunConfig cfg;
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    std::optional<ConfigFile> file;
    if (given("--config")) {
      cfg.config_path = raw.config;
      file = load_config_file(raw.config);
    }

    if (file) {
      if (file->order) cfg.order = *file->order;
      cfg.degree_cap = file->degree_cap;
      if (file->mode) cfg.mode = *file->mode;
      cfg.points = file->points;
      cfg.initial = file->initial;
      cfg.constants = file->constants;
      if (file->exp_order) cfg.exp_order = *file->exp_order;
      if (file->coefficients) cfg.coefficients = *file->coefficients;
      if (file->reference_tolerance) cfg.reference_tolerance = *file->reference_tolerance;
    }

    if (given("--order")) cfg.order = raw.order;
    if (given("--degree-cap")) cfg.degree_cap = raw.degree_cap;
    if (given("--mode")) cfg.mode = parse_fit_mode(raw.mode);
    if (given("--points")) cfg.points = parse_scalar_list<double>(raw.points);
    if (given("--init")) cfg.initial = parse_scalar_list<double>(raw.init);
    if (given("--constants")) cfg.constants = parse_scalar_list<double>(raw.constants);
    if (given("--domain")) cfg.domain = parse_interval(raw.domain);
    if (given("--out")) cfg.out_path = raw.out;
    if (given("--format")) cfg.format = parse_format(raw.format);
    if (given("--dump-trace")) cfg.dump_trace = raw.dump_trace;
    if (given("--exp-order")) cfg.exp_order = raw.exp_order;
    if (given("--ref-tol")) cfg.reference_tolerance = raw.ref_tol;
    if (given("--coeffs")) cfg.coefficients = parse_coefficient_domain(raw.coeffs);

    if (given("--problem")) {
      cfg.problem = raw.problem;
    } else if (file && file->catalog_name) {
      cfg.problem = file->catalog_name;
    } else if (file) {
      auto p = file->problem;
      p.gamma = parse_series<Rational>(file->gamma_spec, cfg.exp_order);
      cfg.custom_problem = std::move(p);
    }

    if (cfg.command == "residual" && cfg.constants && !given("--order") && !(file && file->order)) {
      cfg.order = static_cast<int>(cfg.constants->size());
    }
  } catch (const Error& e) {
    return usage(e.what());
  }

  if (cfg.order < 1) return usage("--order must be at least 1");
  if (cfg.degree_cap && *cfg.degree_cap < 2) return usage("--degree-cap must be at least 2");
  if (cfg.exp_order < 1) return usage("--exp-order must be at least 1");
  if (!(cfg.reference_tolerance >= 1e-13)) return usage("--ref-tol must be at least 1e-13");
  if ((cfg.command == "solve" || cfg.command == "residual") && !cfg.problem && !cfg.custom_problem) {
    return usage(cfg.command + " needs --problem or --config");
  }
  if (cfg.command == "residual") {
    if (!cfg.constants) return usage("residual needs --constants");
    if (cfg.constants->size() != static_cast<std::size_t>(cfg.order)) {
      return usage("--constants must have exactly --order entries");
    }
  }
  if (cfg.initial && cfg.command == "solve" && cfg.initial->size() != static_cast<std::size_t>(cfg.order)) {
    return usage("--init must have exactly --order entries");
  }
  if (cfg.domain && !(cfg.domain->b > cfg.domain->a)) return usage("--domain needs a < b");
  return {cfg, exit_status::ok, {}};
}

namespace {

ProblemCatalogEntry resolve_problem(const RunConfig& cfg) {
  ProblemCatalogEntry entry;
  if (cfg.problem) {
    entry = catalog(*cfg.problem, cfg.exp_order);
  } else {
    entry.name = cfg.custom_problem->name;
    entry.problem = *cfg.custom_problem;
  }
  if (cfg.domain) entry.problem.domain = *cfg.domain;
  if (const auto issues = validate(entry.problem); !issues.empty()) {
    throw ConfigError("invalid problem: " + std::string(issue_name(issues.front().code)) + " (" +
                      issues.front().message + ")");
  }
  return entry;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

template <Scalar T>
std::string trace_text(const EmdenFowlerProblem<Rational>& p, const std::vector<double>& constants, std::size_t cap) {
  return dump_trace(iterate<T>(p.cast<T>(), constants, cap));
}

int run_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto entry = resolve_problem(cfg);
  ReportOptions opts;
  opts.order = cfg.order;
  opts.degree_cap = cfg.degree_cap;
  opts.fit.mode = cfg.mode;
  opts.fit.points = cfg.points;
  opts.fit.initial = cfg.initial;
  opts.reference_tolerance = cfg.reference_tolerance;
  const auto report = solve_report(entry, opts);
  out << emit(report, cfg.format);

  const std::size_t cap = cfg.degree_cap.value_or(default_degree_cap(cfg.order));
  if (cfg.coefficients == CoefficientDomain::rational) {
    // Exact approximant for the fitted (binary) constants.
    const auto y = iterate<Rational>(entry.problem, report.fit.constants, cap).final();
    out << (cfg.format == Format::csv ? "# " : "\n") << "approximant_exact=" << to_string(y) << '\n';
  }
  if (cfg.dump_trace) {
    write_file(*cfg.dump_trace, cfg.coefficients == CoefficientDomain::rational
                                    ? trace_text<Rational>(entry.problem, report.fit.constants, cap)
                                    : trace_text<double>(entry.problem, report.fit.constants, cap));
  }
  if (!report.fit.converged) {
    err << "no convergence: " << report.fit.stop_reason << " (best constants reported)\n";
    return exit_status::no_convergence;
  }
  return exit_status::ok;
}

int run_residual(const RunConfig& cfg, std::ostream& out) {
  const auto entry = resolve_problem(cfg);
  const std::size_t cap = cfg.degree_cap.value_or(default_degree_cap(cfg.order));
  const auto p = entry.problem;
  const double a = p.domain.a;
  const double b = p.domain.b;

  std::string poly_text;
  std::string poly_pretty;
  Polynomial<double> r;
  if (cfg.coefficients == CoefficientDomain::rational) {
    std::vector<Rational> c;
    for (double v : *cfg.constants) c.push_back(Rational(v));
    const auto exact = approximant_residual<Rational>(p, c, cap).poly;
    poly_text = to_string(exact);
    poly_pretty = pretty(exact);
    r = exact.cast<double>();
  } else {
    const auto pd = p.cast<double>();
    r = approximant_residual<double>(pd, *cfg.constants, cap).poly;
    poly_text = to_string(r);
    poly_pretty = pretty(r);
  }
  if (cfg.dump_trace) {
    write_file(*cfg.dump_trace, cfg.coefficients == CoefficientDomain::rational
                                    ? trace_text<Rational>(p, *cfg.constants, cap)
                                    : trace_text<double>(p, *cfg.constants, cap));
  }

  if (cfg.format == Format::csv) {
    out << "# problem=" << entry.name << "\n# residual=" << poly_text << "\nx,residual\n";
    for (int i = 0; i <= 20; ++i) {
      const double x = a + (b - a) * i / 20.0;
      out << format_scalar(x) << ',' << format_scalar(eval(r, x)) << '\n';
    }
  } else {
    out << "R(x) = " << poly_pretty << '\n';
  }
  return exit_status::ok;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "solve") return run_solve(cfg, out, err);
    if (cfg.command == "residual") return run_residual(cfg, out);
    if (cfg.command == "table1") {
      const auto result = table1();
      out << emit(result, cfg.format);
      if (!result.verdict.pass) {
        err << "table1: FAIL (" << result.verdict.violations.size() << " entries above slack)\n";
        return exit_status::bench_fail;
      }
      return exit_status::ok;
    }
    if (cfg.command == "bench") {
      const auto summary = run_bench(cfg.order, cfg.reference_tolerance);
      out << emit(summary, cfg.format);
      if (!summary.pass) {
        err << "bench: FAIL\n";
        return exit_status::bench_fail;
      }
      return exit_status::ok;
    }
    err << "usage error: unknown command '" << cfg.command << "'\n";
    return exit_status::usage;
  } catch (const SingularJacobian& e) {
    err << "no convergence: " << e.what() << '\n';
    return exit_status::no_convergence;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_status::usage;
  } catch (const UnknownProblem& e) {
    err << "error: " << e.what() << '\n';
    return exit_status::usage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_status::numerical_failure;
  }
}

}  // namespace opim
