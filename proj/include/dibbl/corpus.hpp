#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "angle_unit.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "format.hpp"
#include "parse.hpp"
#include "slope_engine.hpp"

namespace dibbl {

/// The corpus file itself is unusable (not JSON, not an array).
class CorpusError : public Error {
public:
  using Error::Error;
};

/// One case is unusable; the runner reports it and moves on.
class CaseError : public Error {
public:
  using Error::Error;
};

enum class CaseKind { eval, derivative, tangent, vertex, estimate_A, residual, roots };

inline std::optional<CaseKind> parse_case_kind(std::string_view s) {
  if (s == "eval") return CaseKind::eval;
  if (s == "derivative") return CaseKind::derivative;
  if (s == "tangent") return CaseKind::tangent;
  if (s == "vertex") return CaseKind::vertex;
  if (s == "estimate_A") return CaseKind::estimate_A;
  if (s == "residual") return CaseKind::residual;
  if (s == "roots") return CaseKind::roots;
  return std::nullopt;
}

/// One checkpoint of the verification corpus.
///
/// `points` holds the evaluation point (eval, derivative, tangent, residual),
/// the step (estimate_A) or the polynomial coefficients (vertex: p0, p1, p2;
/// roots: a, b, c). `parameters` are named constants substituted into the
/// expression before evaluation.
struct ExerciseCase {
  std::string id;
  CaseKind kind = CaseKind::eval;
  std::string expression;
  std::string variable = "x";
  std::vector<double> points;
  AngleUnit unit = AngleUnit::radians;
  std::vector<double> expected;
  double tolerance = 0.0;
  std::string provenance;
  std::map<std::string, Number> parameters;
};

enum class CaseStatus { pass, fail, error };

constexpr std::string_view status_name(CaseStatus s) {
  switch (s) {
  case CaseStatus::pass: return "PASS";
  case CaseStatus::fail: return "FAIL";
  case CaseStatus::error: return "ERROR";
  }
  return "ERROR";
}

struct CaseReport {
  std::string id;
  CaseStatus status = CaseStatus::error;
  std::vector<double> actual;
  std::vector<double> expected;
  double delta = 0.0; // largest componentwise |actual - expected|
  std::string message;
};

namespace detail {

inline Number json_number(const nlohmann::json &j, const char *what) {
  if (j.is_number_integer())
    return Rational(j.get<std::int64_t>());
  if (j.is_number())
    return j.get<double>();
  if (j.is_string()) {
    auto text = j.get<std::string>();
    if (auto r = parse_real(text)) {
      if (r->exact)
        return *r->exact;
      return r->value;
    }
  }
  throw CaseError(std::string("field '") + what + "' must be a number or a rational string");
}

inline std::vector<double> json_reals(const nlohmann::json &j, const char *what) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto &item : j)
      out.push_back(to_double(json_number(item, what)));
  } else {
    out.push_back(to_double(json_number(j, what)));
  }
  return out;
}

inline void require_arity(const ExerciseCase &c, std::size_t points, std::size_t expected_min,
                          std::size_t expected_max) {
  if (c.points.size() != points)
    throw CaseError("kind needs " + std::to_string(points) + " point value(s), got " +
                    std::to_string(c.points.size()));
  if (c.expected.size() < expected_min || c.expected.size() > expected_max)
    throw CaseError("wrong number of expected values: " + std::to_string(c.expected.size()));
}

inline Expr case_expression(const ExerciseCase &c) {
  if (c.expression.empty())
    throw CaseError("kind needs an expression");
  Expr e = parse(c.expression);
  for (const auto &[name, value] : c.parameters)
    e = substitute(e, name, value);
  return e;
}

} // namespace detail

/// Reads one case. Unknown fields are ignored; `variable` defaults to x and
/// `unit` to radians.
inline ExerciseCase case_from_json(const nlohmann::json &j) {
  if (!j.is_object())
    throw CaseError("case is not an object");
  ExerciseCase c;
  c.id = j.value("id", std::string{});
  if (c.id.empty())
    throw CaseError("case has no id");
  auto kind = parse_case_kind(j.value("kind", std::string{}));
  if (!kind)
    throw CaseError("unknown kind '" + j.value("kind", std::string{}) + "'");
  c.kind = *kind;
  c.expression = j.value("expression", std::string{});
  c.variable = j.value("variable", std::string("x"));
  if (j.contains("unit")) {
    auto u = parse_unit(j.at("unit").get<std::string>());
    if (!u)
      throw CaseError("unknown unit '" + j.at("unit").get<std::string>() + "'");
    c.unit = *u;
  }
  if (j.contains("point"))
    c.points = detail::json_reals(j.at("point"), "point");
  else if (j.contains("points"))
    c.points = detail::json_reals(j.at("points"), "points");
  if (!j.contains("expected"))
    throw CaseError("case has no expected value");
  c.expected = detail::json_reals(j.at("expected"), "expected");
  c.tolerance = j.value("tolerance", 0.0);
  if (!(c.tolerance > 0.0))
    throw CaseError("tolerance must be positive");
  c.provenance = j.value("provenance", std::string{});
  if (j.contains("parameters")) {
    const auto &params = j.at("parameters");
    if (!params.is_object())
      throw CaseError("parameters must be an object");
    for (const auto &[name, value] : params.items())
      c.parameters[name] = detail::json_number(value, "parameters");
  }
  return c;
}

inline nlohmann::json case_to_json(const ExerciseCase &c) {
  static constexpr std::string_view kinds[] = {"eval",       "derivative", "tangent", "vertex",
                                               "estimate_A", "residual",   "roots"};
  nlohmann::ordered_json j;
  j["id"] = c.id;
  j["kind"] = kinds[static_cast<int>(c.kind)];
  if (!c.expression.empty())
    j["expression"] = c.expression;
  j["variable"] = c.variable;
  j["points"] = c.points;
  j["unit"] = unit_name(c.unit);
  j["expected"] = c.expected;
  j["tolerance"] = c.tolerance;
  j["provenance"] = c.provenance;
  if (!c.parameters.empty()) {
    nlohmann::ordered_json p;
    for (const auto &[name, value] : c.parameters)
      p[name] = to_double(value);
    j["parameters"] = p;
  }
  return j;
}

/// Computes the quantity a case checks, without comparing.
inline std::vector<double> evaluate_case(const ExerciseCase &c) {
  using detail::require_arity;
  switch (c.kind) {
  case CaseKind::eval:
    require_arity(c, 1, 1, 1);
    return {eval_numeric(detail::case_expression(c), c.variable, c.points[0], c.unit)};
  case CaseKind::derivative:
    require_arity(c, 1, 1, 1);
    return {derivative_at(detail::case_expression(c), c.variable, c.points[0], c.unit)};
  case CaseKind::tangent: {
    require_arity(c, 1, 2, 2);
    auto line = tangent_line(detail::case_expression(c), c.variable, c.points[0], c.unit);
    return {line.intercept, line.slope};
  }
  case CaseKind::vertex: {
    require_arity(c, 3, 1, 2);
    auto v = quadratic_vertex(c.points[0], c.points[1], c.points[2]);
    if (c.expected.size() == 1)
      return {v.value};
    return {v.t_m, v.value};
  }
  case CaseKind::estimate_A:
    require_arity(c, 1, 1, 1);
    return {estimate_A(c.unit, c.points[0])};
  case CaseKind::residual: {
    require_arity(c, 1, 2, 2);
    auto r = pythagorean_residual(c.points[0], c.unit);
    return {r.value, r.dibbl};
  }
  case CaseKind::roots: {
    require_arity(c, 3, 1, 2);
    auto r = quadratic_roots(c.points[0], c.points[1], c.points[2]);
    if (r.roots.empty())
      throw DomainError("quadratic has no real roots");
    if (c.expected.size() == 1)
      return {r.roots.back()}; // the larger root
    if (r.roots.size() == 1)
      return {r.roots[0], r.roots[0]};
    return r.roots;
  }
  }
  throw CaseError("unhandled kind");
}

inline CaseReport run_case(const ExerciseCase &c) {
  CaseReport report;
  report.id = c.id;
  report.expected = c.expected;
  try {
    report.actual = evaluate_case(c);
  } catch (const Error &e) {
    report.status = CaseStatus::error;
    report.message = e.what();
    return report;
  }
  bool ok = report.actual.size() == report.expected.size();
  for (std::size_t i = 0; ok && i < report.actual.size(); ++i) {
    const double d = std::abs(report.actual[i] - report.expected[i]);
    report.delta = std::max(report.delta, d);
    if (!(d <= c.tolerance))
      ok = false;
  }
  report.status = ok ? CaseStatus::pass : CaseStatus::fail;
  return report;
}

/// A case that failed to load; the runner turns it into an error report.
struct CaseSlot {
  std::optional<ExerciseCase> exercise;
  std::string id;
  std::string load_error;
};

inline std::vector<CaseSlot> load_corpus(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw CorpusError(std::string("corpus is not valid JSON: ") + e.what());
  }
  if (!doc.is_array())
    throw CorpusError("corpus must be a JSON array of cases");
  std::vector<CaseSlot> slots;
  std::size_t index = 0;
  for (const auto &item : doc) {
    CaseSlot slot;
    slot.id = "#" + std::to_string(index++);
    if (item.is_object() && item.contains("id") && item.at("id").is_string())
      slot.id = item.at("id").get<std::string>();
    try {
      slot.exercise = case_from_json(item);
    } catch (const Error &e) {
      slot.load_error = e.what();
    } catch (const nlohmann::json::exception &e) {
      slot.load_error = e.what();
    }
    slots.push_back(std::move(slot));
  }
  return slots;
}

/// Reports in corpus order.
inline std::vector<CaseReport> run_corpus(const std::vector<CaseSlot> &slots) {
  std::vector<CaseReport> reports;
  reports.reserve(slots.size());
  for (const auto &slot : slots) {
    if (slot.exercise) {
      reports.push_back(run_case(*slot.exercise));
    } else {
      CaseReport r;
      r.id = slot.id;
      r.status = CaseStatus::error;
      r.message = slot.load_error;
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

inline std::string join_reals(const std::vector<double> &v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      out += ',';
    out += format_significant(v[i], 12);
  }
  return out;
}

inline void write_report_line(std::ostream &os, const CaseReport &r) {
  os << status_name(r.status) << ' ' << r.id;
  if (r.status == CaseStatus::error) {
    os << " error=\"" << r.message << "\"\n";
    return;
  }
  os << " actual=" << join_reals(r.actual) << " expected=" << join_reals(r.expected)
     << " delta=" << format_significant(r.delta, 3) << '\n';
}

struct CorpusSummary {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t errors = 0;
  bool all_passed() const { return failed == 0 && errors == 0; }
};

inline CorpusSummary summarize(const std::vector<CaseReport> &reports) {
  CorpusSummary s;
  for (const auto &r : reports) {
    switch (r.status) {
    case CaseStatus::pass: ++s.passed; break;
    case CaseStatus::fail: ++s.failed; break;
    case CaseStatus::error: ++s.errors; break;
    }
  }
  return s;
}

} // namespace dibbl
