#include "opim/bench.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <sstream>

#include "opim/opia.hpp"

namespace opim {

double ErrorTable::max_error() const {
  double out = 0.0;
  for (const auto& r : rows) out = std::max(out, r.abs_error());
  return out;
}

Table1Verdict table1_verdict(const ErrorTable& order4, const ErrorTable& order5, double slack) {
  Table1Verdict v;
  auto check = [&](const ErrorTable& t, const std::array<double, 10>& baseline, int order) {
    if (t.rows.size() != baseline.size()) {
      v.pass = false;
      v.violations.push_back(fmt::format("order {}: expected {} rows, got {}", order, baseline.size(), t.rows.size()));
      return;
    }
    for (std::size_t i = 0; i < baseline.size(); ++i) {
      const double bound = slack * baseline[i];
      const double err = t.rows[i].abs_error();
      if (!(err <= bound)) {
        v.pass = false;
        v.violations.push_back(
            fmt::format("order {} x={:g}: error {:.6e} > {:g} x {:.5e}", order, t.rows[i].x, err, slack, baseline[i]));
      }
    }
  };
  check(order4, kBaselineOrder4, 4);
  check(order5, kBaselineOrder5, 5);
  return v;
}

namespace {

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += format_scalar(v[i]);
  }
  return out;
}

std::string_view truth_name(TruthSource s) { return s == TruthSource::exact ? "exact" : "reference"; }

}  // namespace

SolveReport solve_report(const ProblemCatalogEntry& entry, const ReportOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto p = entry.problem.cast<double>();
  const std::size_t cap = options.degree_cap.value_or(default_degree_cap(options.order));

  SolveReport report;
  report.problem = entry.name;
  report.fit = fit_constants(p, options.order, cap, options.fit);
  report.approximant = iterate<double>(p, report.fit.constants, cap).final();

  const double a = p.domain.a;
  const double b = p.domain.b;
  const double step = (b - a) / options.samples;
  const double last = std::max(b, options.extended_end.value_or(b));

  std::optional<ReferenceSolution> ref;
  if (!entry.exact) ref = integrate(p, last, options.reference_tolerance);
  auto truth = [&](double x) { return entry.exact ? (*entry.exact)(x) : (*ref)(x); };

  auto tabulate = [&](int count) {
    ErrorTable t;
    t.source = entry.exact ? TruthSource::exact : TruthSource::reference;
    t.order = options.order;
    t.constants_provenance = std::string(fit_mode_name(report.fit.mode)) + (report.fit.converged ? "" : " (not converged)");
    for (int i = 1; i <= count; ++i) {
      const double x = a + (b - a) * i / options.samples;
      t.rows.push_back({x, eval(report.approximant, x), truth(x)});
    }
    return t;
  };
  report.errors = tabulate(options.samples);
  if (options.extended_end && *options.extended_end > b) {
    report.extended = tabulate(static_cast<int>(std::lround((*options.extended_end - a) / step)));
  }

  const auto r = residual(report.approximant, p, cap).poly;
  for (int i = 0; i <= 1000; ++i) {
    report.residual_max_norm = std::max(report.residual_max_norm, std::abs(eval(r, a + (b - a) * i / 1000.0)));
  }
  report.objective = definite_integral(mul(r, r), a, b);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Table1Result table1(double slack) {
  const auto entry = catalog("example1");
  Table1Result out;
  out.slack = slack;
  ReportOptions opts;
  opts.order = 4;
  const auto r4 = solve_report(entry, opts);
  opts.order = 5;
  const auto r5 = solve_report(entry, opts);
  out.order4 = r4.errors;
  out.order5 = r5.errors;
  out.fit4 = r4.fit;
  out.fit5 = r5.fit;
  out.verdict = table1_verdict(out.order4, out.order5, slack);
  return out;
}

SolveReport example2_report(int m, std::optional<std::vector<double>> initial) {
  if (m < 1) throw ConfigError("order must be at least 1");
  ReportOptions opts;
  opts.order = m;
  opts.fit.initial = initial ? *initial
                             : (m == 4 ? std::vector<double>{2.0, -1.0, -1.0, 0.0}
                                       : std::vector<double>(static_cast<std::size_t>(m), 0.5));
  opts.reference_tolerance = 1e-12;
  opts.extended_end = 2.0;
  return solve_report(catalog("isothermal"), opts);
}

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::csv;
  if (text == "text") return Format::text;
  throw ConfigError("unknown output format '" + std::string(text) + "' (expected csv or text)");
}

std::string emit_csv(const ErrorTable& table) {
  std::string out = fmt::format("# order={}\n# truth={}\n# constants={}\n", table.order, truth_name(table.source),
                                table.constants_provenance);
  out += "x,approx,truth,abs_error\n";
  for (const auto& r : table.rows) {
    out += fmt::format("{},{},{},{}\n", format_scalar(r.x), format_scalar(r.approx), format_scalar(r.truth),
                       format_scalar(r.abs_error()));
  }
  return out;
}

ErrorTable parse_csv(std::string_view csv) {
  ErrorTable t;
  std::istringstream in{std::string(csv)};
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with("# order=")) t.order = std::stoi(line.substr(8));
      if (line.starts_with("# truth=")) t.source = line.substr(8) == "exact" ? TruthSource::exact : TruthSource::reference;
      if (line.starts_with("# constants=")) t.constants_provenance = line.substr(12);
      continue;
    }
    if (!header_seen) {
      if (line != "x,approx,truth,abs_error") throw ConfigError("unexpected CSV header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto fields = parse_scalar_list<double>(line);
    if (fields.size() != 4) throw ConfigError("CSV row must have 4 fields: '" + line + "'");
    t.rows.push_back({fields[0], fields[1], fields[2]});
  }
  return t;
}

std::string emit(const SolveReport& report, Format format) {
  if (format == Format::csv) {
    std::string out = fmt::format("# problem={}\n# mode={}\n# constants={}\n# converged={}\n# J={}\n# residual_max={}\n",
                                  report.problem, fit_mode_name(report.fit.mode), join(report.fit.constants),
                                  report.fit.converged ? "true" : "false", format_scalar(report.objective),
                                  format_scalar(report.residual_max_norm));
    if (!report.fit.points.empty()) out += "# points=" + join(report.fit.points) + "\n";
    out += emit_csv(report.errors);
    if (report.extended) {
      out += "# extended\n";
      out += emit_csv(*report.extended);
    }
    return out;
  }

  std::string out;
  out += fmt::format("problem        {}\n", report.problem);
  out += fmt::format("mode           {}\n", fit_mode_name(report.fit.mode));
  out += fmt::format("converged      {} ({}, {} iterations)\n", report.fit.converged ? "yes" : "no",
                     report.fit.stop_reason, report.fit.iterations);
  for (std::size_t i = 0; i < report.fit.constants.size(); ++i) {
    out += fmt::format("C{:<13} {:.16g}\n", i, report.fit.constants[i]);
  }
  if (!report.fit.points.empty()) out += fmt::format("points         {}\n", join(report.fit.points));
  out += fmt::format("J              {:.6e}\n", report.objective);
  out += fmt::format("max |R|        {:.6e}\n", report.residual_max_norm);
  out += fmt::format("wall time      {:.3f} s\n", report.wall_seconds);
  out += "approximant    ";
  for (std::size_t i = 0; i < report.approximant.size(); ++i) {
    const double c = report.approximant.coeffs()[i];
    if (c == 0.0) continue;
    out += fmt::format("{:+.12g}x^{} ", c, i);
  }
  out += "\n\n";
  out += fmt::format("{:>6}  {:>22}  {:>22}  {:>12}   (truth: {})\n", "x", "approx", "truth", "abs error",
                     truth_name(report.errors.source));
  auto rows = [&](const ErrorTable& t) {
    for (const auto& r : t.rows) {
      out += fmt::format("{:>6.3f}  {:>22.16g}  {:>22.16g}  {:>12.5e}\n", r.x, r.approx, r.truth, r.abs_error());
    }
  };
  rows(report.errors);
  if (report.extended) {
    out += "\nextended range\n";
    rows(*report.extended);
  }
  return out;
}

std::string emit(const Table1Result& result, Format format) {
  if (format == Format::csv) {
    std::string out = "# table1 example1\n";
    out += "# fit4_constants=" + join(result.fit4.constants) + "\n";
    out += emit_csv(result.order4);
    out += "# fit5_constants=" + join(result.fit5.constants) + "\n";
    out += emit_csv(result.order5);
    out += fmt::format("# verdict={} slack={}\n", result.verdict.pass ? "PASS" : "FAIL", format_scalar(result.slack));
    return out;
  }
  std::string out = "Example 1 absolute errors |exp(x^2) - y_m|\n";
  out += fmt::format("{:>4}  {:>12}  {:>12}  {:>12}  {:>12}  {:>12}  {:>12}\n", "x", "m=4", "baseline", "m=5",
                     "baseline", "VIM/HPM m=4", "VIM/HPM m=5");
  for (std::size_t i = 0; i < result.order4.rows.size() && i < result.order5.rows.size(); ++i) {
    out += fmt::format("{:>4.1f}  {:>12.5e}  {:>12.5e}  {:>12.5e}  {:>12.5e}  {:>12.5e}  {:>12.5e}\n",
                       result.order4.rows[i].x, result.order4.rows[i].abs_error(), kBaselineOrder4[i],
                       result.order5.rows[i].abs_error(), kBaselineOrder5[i], kBaselineVimOrder4[i],
                       kBaselineVimOrder5[i]);
  }
  out += fmt::format("\nverdict: {} (slack x{:g})\n", result.verdict.pass ? "PASS" : "FAIL", result.slack);
  for (const auto& v : result.verdict.violations) out += "  " + v + "\n";
  return out;
}

BenchSummary run_bench(int order, double reference_tolerance) {
  BenchSummary s;
  s.table1 = table1();
  s.pass = s.table1.verdict.pass;
  for (const auto& name : catalog_names()) {
    ReportOptions opts;
    opts.order = order;
    opts.reference_tolerance = reference_tolerance;
    s.reports.push_back(solve_report(catalog(name), opts));
    s.pass = s.pass && s.reports.back().fit.converged;
  }
  return s;
}

std::string emit(const BenchSummary& summary, Format format) {
  std::string out = emit(summary.table1, format);
  for (const auto& r : summary.reports) {
    out += format == Format::csv ? "" : "\n";
    out += emit(r, format);
  }
  out += (format == Format::csv ? "# bench=" : "\nbench: ") + std::string(summary.pass ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace opim
