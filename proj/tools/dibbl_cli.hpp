#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification failures,
// 2 usage or parse errors, 3 math-domain errors.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dibbl/corpus.hpp"
#include "dibbl/dibbl.hpp"
#include "dibbl_bundled_corpus.hpp"

namespace dibbl::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kMath = 3 };

struct Options {
  std::string unit = "rad";
  std::string format;
  std::string var = "x";

  std::string expression;
  std::string at;
  std::string from, to, step;
  bool estimate_A = false;
  std::string corpus_path;
};

class UsageError : public Error {
public:
  using Error::Error;
};

inline ParsedReal require_real(const std::string &text, const char *flag) {
  if (text.empty())
    throw UsageError(std::string("missing ") + flag);
  auto v = parse_real(text);
  if (!v)
    throw UsageError(std::string("invalid number for ") + flag + ": '" + text + "'");
  return *v;
}

inline AngleUnit require_unit(const std::string &text) {
  auto u = parse_unit(text);
  if (!u)
    throw UsageError("unknown unit '" + text + "' (use rad, deg or grad)");
  return *u;
}

inline void check_format(const std::string &format, std::initializer_list<const char *> allowed) {
  for (const char *a : allowed)
    if (format == a)
      return;
  throw UsageError("unsupported --format '" + format + "'");
}

inline int cmd_eval(const Options &o, std::ostream &out) {
  const auto unit = require_unit(o.unit);
  const auto x = require_real(o.at, "--at");
  const double value = eval_numeric(parse(o.expression), o.var, x.value, unit);
  if (o.format == "json")
    out << nlohmann::ordered_json{{"x", x.value}, {"value", value}}.dump() << '\n';
  else
    out << format_significant(value, 12) << '\n';
  return kOk;
}

inline int cmd_deriv(const Options &o, std::ostream &out) {
  const auto unit = require_unit(o.unit);
  const auto x = require_real(o.at, "--at");
  const double slope = derivative_at(parse(o.expression), o.var, x.value, unit);
  if (o.format == "json")
    out << nlohmann::ordered_json{{"x", x.value}, {"slope", slope}}.dump() << '\n';
  else
    out << format_significant(slope, 12) << '\n';
  return kOk;
}

inline int cmd_tangent(const Options &o, std::ostream &out) {
  const auto unit = require_unit(o.unit);
  const auto x = require_real(o.at, "--at");
  const Expr e = parse(o.expression);
  std::string a_text, b_text;
  double a = 0.0, b = 0.0;
  // Units only matter for trigonometry, which never takes the exact path.
  std::optional<ExactTangentLine> exact;
  if (x.exact)
    exact = tangent_line_exact(e, o.var, *x.exact);
  if (exact) {
    a = exact->intercept.to_double();
    b = exact->slope.to_double();
    a_text = exact->intercept.str();
    b_text = exact->slope.str();
  } else {
    const TangentLine line = tangent_line(e, o.var, x.value, unit);
    a = line.intercept;
    b = line.slope;
    a_text = format_significant(a, 12);
    b_text = format_significant(b, 12);
  }
  if (o.format == "json") {
    nlohmann::ordered_json j{{"intercept", a}, {"slope", b}};
    if (exact) {
      j["intercept_exact"] = a_text;
      j["slope_exact"] = b_text;
    }
    out << j.dump() << '\n';
  } else {
    out << a_text << ' ' << b_text << '\n';
  }
  return kOk;
}

inline int cmd_table(const Options &o, std::ostream &out) {
  const auto unit = require_unit(o.unit);
  const double from = require_real(o.from, "--from").value;
  const double to = require_real(o.to, "--to").value;
  const double step = require_real(o.step, "--step").value;
  if (!(step > 0.0))
    throw UsageError("--step must be positive");
  if (!(from < to))
    throw UsageError("--from must be less than --to");
  const double span = (to - from) / step;
  if (!std::isfinite(span) || span > 1e7)
    throw UsageError("table would have too many rows");
  const auto last = static_cast<long long>(std::floor(span + 1e-9));
  const Expr e = parse(o.expression);

  struct Row {
    double x, value, slope;
  };
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(last) + 1);
  for (long long i = 0; i <= last; ++i) {
    const double x = from + static_cast<double>(i) * step;
    const Dual<double> y = eval_dual(e, o.var, Dual<double>::variable(x), unit);
    rows.push_back({x, y.real, y.dibbl});
  }

  if (o.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : rows)
      arr.push_back({{"x", r.x}, {"value", r.value}, {"slope", r.slope}});
    out << arr.dump(2) << '\n';
  } else {
    out << "x,value,slope\n";
    for (const auto &r : rows)
      out << format_shortest(r.x) << ',' << format_shortest(r.value) << ','
          << format_shortest(r.slope) << '\n';
  }
  return kOk;
}

inline int cmd_units(const Options &o, std::ostream &out) {
  const auto unit = require_unit(o.unit);
  if (!o.estimate_A) {
    out << "A(" << unit_name(unit) << ") = " << format_significant(unit_scale(unit), 12) << '\n';
    return kOk;
  }
  const double step = require_real(o.step, "--step").value;
  if (step == 0.0)
    throw UsageError("--step must be nonzero");
  const double a = estimate_A(unit, step);
  if (o.format == "json")
    out << nlohmann::ordered_json{{"unit", unit_name(unit)}, {"step", step}, {"estimate", a}}.dump()
        << '\n';
  else
    out << format_precision(a, 6) << '\n';
  return kOk;
}

inline int cmd_verify(const Options &o, std::ostream &out) {
  std::string text;
  if (o.corpus_path.empty()) {
    text = std::string(kBundledCorpus);
  } else {
    std::ifstream in(o.corpus_path, std::ios::binary);
    if (!in)
      throw UsageError("cannot open corpus '" + o.corpus_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const auto reports = run_corpus(load_corpus(text));
  const auto summary = summarize(reports);
  if (o.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : reports) {
      nlohmann::ordered_json j{{"id", r.id}, {"status", status_name(r.status)}};
      if (r.status == CaseStatus::error) {
        j["message"] = r.message;
      } else {
        j["actual"] = r.actual;
        j["expected"] = r.expected;
        j["delta"] = r.delta;
      }
      arr.push_back(j);
    }
    nlohmann::ordered_json doc{{"cases", arr},
                               {"passed", summary.passed},
                               {"failed", summary.failed},
                               {"errors", summary.errors}};
    out << doc.dump(2) << '\n';
  } else {
    for (const auto &r : reports)
      write_report_line(out, r);
    out << (summary.all_passed() ? "OK" : "FAILED") << ": " << summary.passed << " passed, "
        << summary.failed << " failed, " << summary.errors << " errors\n";
  }
  return summary.all_passed() ? kOk : kVerifyFailed;
}

/// Runs the CLI with explicit streams so tests can drive it in-process.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Forward-mode calculus with nilpotent dual numbers", "dibbl"};
  app.require_subcommand(1);
  Options o;

  app.add_option("--unit", o.unit, "Angle unit for trigonometry: rad, deg or grad")
      ->capture_default_str();
  app.add_option("--format", o.format, "Output format: csv|json for table, text|json otherwise");
  app.add_option("--var", o.var, "Name of the independent variable")->capture_default_str();

  auto *eval = app.add_subcommand("eval", "Evaluate an expression at a point");
  eval->add_option("expression", o.expression)->required();
  eval->add_option("--at", o.at, "Point")->required();

  auto *deriv = app.add_subcommand("deriv", "Slope of an expression at a point");
  deriv->add_option("expression", o.expression)->required();
  deriv->add_option("--at", o.at, "Point")->required();

  auto *tangent = app.add_subcommand("tangent", "Tangent line a + b x at a point");
  tangent->add_option("expression", o.expression)->required();
  tangent->add_option("--at", o.at, "Point of tangency")->required();

  auto *table = app.add_subcommand("table", "Sample value and slope over a range");
  table->add_option("expression", o.expression)->required();
  table->add_option("--from", o.from)->required();
  table->add_option("--to", o.to)->required();
  table->add_option("--step", o.step)->required();

  auto *units = app.add_subcommand("units", "Angle-unit constant A");
  units->add_flag("--estimate-A", o.estimate_A, "Estimate A from the secant of sin at 0");
  units->add_option("--step", o.step, "Secant step in the chosen unit");

  auto *verify = app.add_subcommand("verify", "Run the exercise corpus");
  verify->add_option("corpus", o.corpus_path, "Corpus JSON file (default: bundled)");

  for (auto *sub : {eval, deriv, tangent, table, units, verify})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const bool is_table = app.got_subcommand(table);
    if (o.format.empty())
      o.format = is_table ? "csv" : "text";
    if (is_table)
      check_format(o.format, {"csv", "json"});
    else
      check_format(o.format, {"text", "json"});

    if (app.got_subcommand(eval)) return cmd_eval(o, out);
    if (app.got_subcommand(deriv)) return cmd_deriv(o, out);
    if (app.got_subcommand(tangent)) return cmd_tangent(o, out);
    if (is_table) return cmd_table(o, out);
    if (app.got_subcommand(units)) return cmd_units(o, out);
    if (app.got_subcommand(verify)) return cmd_verify(o, out);
  } catch (const MathError &e) {
    err << "math error: " << e.what() << '\n';
    return kMath;
  } catch (const ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

} // namespace dibbl::cli
