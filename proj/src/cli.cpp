#include "ptrig/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "ptrig/bounds.hpp"
#include "ptrig/core.hpp"
#include "ptrig/format.hpp"

namespace ptrig::cli {

namespace {

struct OutputOptions {
  std::string format = "text";
  int precision = kDefaultPrecision;
  std::string path;  // empty: standard output
};

void add_output_options(CLI::App& cmd, OutputOptions& output) {
  cmd.add_option("--format", output.format, "Output format")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();
  cmd.add_option("--prec", output.precision, "Significant digits")
      ->check(CLI::Range(kMinPrecision, kMaxPrecision))
      ->capture_default_str();
  cmd.add_option("--out", output.path, "Write output to this file instead of stdout");
}

// A "key value" line of a text report.
void kv(std::ostream& out, std::string_view key, const std::string& value) {
  out << key << ' ' << value << '\n';
}

std::optional<double> endpoint_of(const CLI::Option* option, double value) {
  if (option->count() == 0) return std::nullopt;
  return value;
}

bounds::TheoremId theorem_of(const std::string& label) {
  const auto id = bounds::parse_theorem(label);
  if (!id) throw ParamError("unknown theorem '" + label + "' (expected 3.1 ... 3.7)");
  return *id;
}

FnId fn_of(const std::string& name) {
  const auto fn = parse_fn(name);
  if (fn) return *fn;
  std::string names;
  for (FnId f : kAllFns) {
    if (!names.empty()) names += ", ";
    names += fn_name(f);
  }
  throw ParamError("unknown function '" + name + "' (expected one of " + names + ")");
}

int cmd_pi(double p_value, bool check, const OutputOptions& output, std::ostream& out) {
  const PParam p(p_value);
  const double closed = pi_p(p);
  std::optional<double> quad;
  if (check) quad = 2.0 * TrigFamily(p).arcsin(1.0).value;

  const auto num = [&](double v) { return format_number(v, output.precision); };
  if (output.format == "csv") {
    CsvWriter csv(out, output.precision);
    if (quad) {
      const std::vector<std::string_view> head = {"p", "pi_p", "quadrature", "difference"};
      csv.header(head);
      const std::vector<double> row = {p_value, closed, *quad, closed - *quad};
      csv.row(row);
    } else {
      const std::vector<std::string_view> head = {"p", "pi_p"};
      csv.header(head);
      const std::vector<double> row = {p_value, closed};
      csv.row(row);
    }
  } else if (quad) {
    kv(out, "pi_p", num(closed));
    kv(out, "quadrature", num(*quad));
    kv(out, "difference", num(closed - *quad));
  } else {
    out << num(closed) << '\n';
  }
  return kOk;
}

int cmd_eval(const std::string& fn_label, double p_value, double x,
             const OutputOptions& output, std::ostream& out) {
  const FnId fn = fn_of(fn_label);
  const TrigFamily family{PParam(p_value)};

  NumericResult result;
  const bool quadrature = is_quadrature_based(fn);
  if (fn == FnId::arcsin_p) {
    result = family.arcsin(x);
  } else if (fn == FnId::arcsinh_p) {
    result = family.arcsinh(x);
  } else {
    result.value = family.evaluate(fn, x);
  }

  if (output.format == "csv") {
    CsvWriter csv(out, output.precision);
    std::vector<std::string_view> head = {"x", fn_name(fn)};
    std::vector<double> row = {x, result.value};
    if (quadrature) {
      head.push_back("err_estimate");
      row.push_back(result.err_estimate);
    }
    csv.header(head);
    csv.row(row);
  } else {
    out << format_number(result.value, output.precision) << '\n';
    if (quadrature) kv(out, "err_estimate", format_number(result.err_estimate, 3));
  }
  return kOk;
}

int cmd_table(const std::string& fn_label, double p_value, double from, double to,
              int n, const OutputOptions& output, std::ostream& out, std::ostream& err) {
  const FnId fn = fn_of(fn_label);
  if (!(from < to)) throw ParamError("table needs --from < --to");
  if (n < 2) throw ParamError("table needs --n >= 2");
  const TrigFamily family{PParam(p_value)};

  CsvWriter csv(out, output.precision);
  const std::vector<std::string_view> head = {"x", fn_name(fn)};
  csv.header(head);

  const double step = (to - from) / static_cast<double>(n - 1);
  int failed = 0;
  for (int i = 0; i < n; ++i) {
    const double x = i == n - 1 ? to : from + step * static_cast<double>(i);
    double value = std::numeric_limits<double>::quiet_NaN();
    try {
      value = family.evaluate(fn, x);
    } catch (const Error& e) {
      ++failed;
      err << "row x = " << format_number(x, output.precision) << ": " << e.what() << '\n';
    }
    const std::vector<double> row = {x, value};
    csv.row(row);
  }
  return failed ? kPartialTable : kOk;
}

int cmd_verify(const std::string& label, double p_value, std::optional<double> endpoint,
               int n, bool force, const OutputOptions& output, std::ostream& out) {
  const bounds::TheoremId id = theorem_of(label);
  if (n < 10) throw ParamError("verify needs --n >= 10");
  const TrigFamily family{PParam(p_value)};
  bounds::VerifyOptions options;
  options.force = force;
  const bounds::BoundReport report =
      bounds::verify(id, family, endpoint, static_cast<std::size_t>(n), options);

  const auto num = [&](double v) { return format_number(v, output.precision); };
  if (output.format == "csv") {
    CsvWriter csv(out, output.precision);
    const std::vector<std::string_view> head = {"x",     "lower",        "target",
                                                "upper", "lower_margin", "upper_margin"};
    csv.header(head);
    for (const auto& s : report.samples) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      const std::vector<double> row =
          s.ok ? std::vector<double>{s.x, s.lower, s.target, s.upper, s.lower_margin, s.upper_margin}
               : std::vector<double>{s.x, nan, nan, nan, nan, nan};
      csv.row(row);
    }
  } else {
    const bool corollary = id == bounds::TheoremId::C3_7;
    kv(out, "theorem", std::string(bounds::info(id).label));
    kv(out, "p", num(p_value));
    kv(out, "endpoint", endpoint ? num(*endpoint) : std::string("none"));
    kv(out, "interval_end", num(report.interval_end));
    kv(out, "certifying", report.certifying ? "yes" : "no");
    if (!corollary) {
      kv(out, "lower_coeff", num(report.coefficients.lower_coeff));
      kv(out, "upper_coeff", num(report.coefficients.upper_coeff));
    }
    kv(out, "n_points", std::to_string(report.n_points));
    kv(out, "min_lower_margin", num(report.min_lower_margin));
    if (!corollary) kv(out, "min_upper_margin", num(report.min_upper_margin));
    kv(out, "violations", std::to_string(report.violations.size()));
    kv(out, "failed_points", std::to_string(report.failures.size()));
    if (!corollary) {
      kv(out, "empirical_limit_0", num(report.empirical_limit_0));
      kv(out, "closed_limit_0", num(report.closed_limit_0));
      kv(out, "empirical_limit_end", num(report.empirical_limit_end));
      kv(out, "closed_limit_end", num(report.closed_limit_end));
    }
    for (const auto& v : report.violations) {
      out << "violation x=" << num(v.x) << " side=" << (v.side == bounds::Side::lower ? "lower" : "upper")
          << " margin=" << num(v.margin) << '\n';
    }
  }
  if (!report.violations.empty()) return kViolations;
  if (!report.failures.empty()) return kConvergence;
  return kOk;
}

int cmd_constants(const std::string& label, double p_value, std::optional<double> endpoint,
                  bool force, bool with_sharpness, const OutputOptions& output, std::ostream& out) {
  const bounds::TheoremId id = theorem_of(label);
  const TrigFamily family{PParam(p_value)};
  const bounds::Hypotheses hyp{force};
  const bounds::BoundConstants c = bounds::constants(id, family, endpoint, hyp);
  std::optional<bounds::SharpnessReport> sharp;
  if (with_sharpness) sharp = bounds::sharpness(id, family, endpoint, hyp);

  const auto num = [&](double v) { return format_number(v, output.precision); };
  if (output.format == "csv") {
    CsvWriter csv(out, output.precision);
    if (sharp) {
      const std::vector<std::string_view> head = {"eps", "limit_0", "closed_0", "limit_end",
                                                  "closed_end"};
      csv.header(head);
      for (const auto& step : sharp->ladder) {
        const std::vector<double> row = {step.eps, step.limit_0, sharp->closed_0,
                                         step.limit_end, sharp->closed_end};
        csv.row(row);
      }
    } else {
      const std::vector<std::string_view> head = {"p", "endpoint", "lower_coeff", "upper_coeff"};
      csv.header(head);
      const std::vector<double> row = {p_value,
                                       endpoint.value_or(std::numeric_limits<double>::quiet_NaN()),
                                       c.lower_coeff, c.upper_coeff};
      csv.row(row);
    }
  } else {
    kv(out, "theorem", std::string(bounds::info(id).label));
    kv(out, "p", num(p_value));
    kv(out, "endpoint", endpoint ? num(*endpoint) : std::string("none"));
    kv(out, "lower_coeff", num(c.lower_coeff));
    kv(out, "upper_coeff", num(c.upper_coeff));
    if (sharp) {
      for (const auto& step : sharp->ladder) {
        out << "ladder eps=" << num(step.eps) << " limit_0=" << num(step.limit_0)
            << " limit_end=" << num(step.limit_end) << '\n';
      }
      kv(out, "closed_0", num(sharp->closed_0));
      kv(out, "closed_end", num(sharp->closed_end));
      kv(out, "richardson_0", num(sharp->richardson_0));
      kv(out, "richardson_end", num(sharp->richardson_end));
    }
  }
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized (p) circular and hyperbolic functions and their exponential bounds",
               "ptrig"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  double p = 0.0;
  double x = 0.0;
  double from = 0.0;
  double to = 0.0;
  double endpoint = 0.0;
  int n = 0;
  std::string fn;
  std::string theorem;
  bool check = false;
  bool force = false;
  bool with_sharpness = false;
  OutputOptions output;
  OutputOptions table_output;
  table_output.format = "csv";

  auto* pi = app.add_subcommand("pi", "Print pi_p = 2 pi / (p sin(pi/p))");
  pi->add_option("--p", p, "Parameter p > 1")->required();
  pi->add_flag("--check", check, "Also print 2 arcsin_p(1) by quadrature and the difference");
  add_output_options(*pi, output);

  auto* eval = app.add_subcommand("eval", "Evaluate one generalized function");
  eval->add_option("--fn", fn, "Function name (sinp, cosp, tanp, secp, arcsinp, sinhp, ...)")
      ->required();
  eval->add_option("--p", p, "Parameter p > 1")->required();
  eval->add_option("--x", x, "Argument")->required();
  add_output_options(*eval, output);

  auto* table = app.add_subcommand("table", "Tabulate a function on a uniform grid as CSV");
  table->add_option("--fn", fn, "Function name")->required();
  table->add_option("--p", p, "Parameter p > 1")->required();
  table->add_option("--from", from, "First abscissa")->required();
  table->add_option("--to", to, "Last abscissa")->required();
  table->add_option("--n", n, "Number of rows (>= 2)")->required();
  add_output_options(*table, table_output);

  auto* verify = app.add_subcommand("verify", "Scan a double inequality over a grid");
  verify->add_option("--theorem", theorem, "3.1 ... 3.6, or 3.7 for the corollary")->required();
  verify->add_option("--p", p, "Parameter p")->required();
  auto* verify_end = verify->add_option("--endpoint", endpoint, "Right end of the interval");
  int verify_n = 1000;
  verify->add_option("--n", verify_n, "Grid points (>= 10)")->capture_default_str();
  verify->add_flag("--force", force, "Allow p below the theorem's threshold (non-certifying)");
  add_output_options(*verify, output);

  auto* consts = app.add_subcommand("constants", "Print the best exponent coefficients");
  consts->add_option("--theorem", theorem, "3.1 ... 3.6")->required();
  consts->add_option("--p", p, "Parameter p")->required();
  auto* consts_end = consts->add_option("--endpoint", endpoint, "Right end of the interval");
  consts->add_flag("--force", force, "Allow p below the theorem's threshold");
  consts->add_flag("--sharpness", with_sharpness, "Also print the endpoint-limit ladder");
  add_output_options(*consts, output);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const OutputOptions& active = table->parsed() ? table_output : output;
  std::ofstream file;
  if (!active.path.empty()) {
    file.open(active.path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open " << active.path << " for writing\n";
      return kUsage;
    }
  }
  std::ostream& sink = active.path.empty() ? out : file;

  try {
    if (pi->parsed()) return cmd_pi(p, check, output, sink);
    if (eval->parsed()) return cmd_eval(fn, p, x, output, sink);
    if (table->parsed()) return cmd_table(fn, p, from, to, n, table_output, sink, err);
    if (verify->parsed()) {
      return cmd_verify(theorem, p, endpoint_of(verify_end, endpoint), verify_n, force, output, sink);
    }
    if (consts->parsed()) {
      return cmd_constants(theorem, p, endpoint_of(consts_end, endpoint), force, with_sharpness,
                           output, sink);
    }
  } catch (const ParamError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const EndpointError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what();
    if (eval->parsed()) {
      if (const auto id = parse_fn(fn)) err << " (domain of " << fn << ": " << fn_domain(*id) << ")";
    }
    err << '\n';
    return kDomain;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kConvergence;
  } catch (const BracketError& e) {
    err << "error: " << e.what() << '\n';
    return kConvergence;
  }
  return kUsage;
}

}  // namespace ptrig::cli
