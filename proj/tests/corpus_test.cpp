#include <gtest/gtest.h>

#include <sstream>

#include "dibbl/corpus.hpp"
#include "dibbl_bundled_corpus.hpp"

using namespace dibbl;
using nlohmann::json;

namespace {

std::string report_text(std::string_view corpus) {
  std::ostringstream out;
  for (const auto &r : run_corpus(load_corpus(corpus)))
    write_report_line(out, r);
  return out.str();
}

const ExerciseCase &find_case(const std::vector<CaseSlot> &slots, std::string_view id) {
  for (const auto &s : slots)
    if (s.id == id && s.exercise)
      return *s.exercise;
  throw std::runtime_error("missing case " + std::string(id));
}

} // namespace

TEST(CaseFromJson, Defaults) {
  auto c = case_from_json(json::parse(
      R"({"id":"a","kind":"derivative","expression":"x^4","point":3,"expected":108,"tolerance":1e-9,"extra":true})"));
  EXPECT_EQ(c.variable, "x");
  EXPECT_EQ(c.unit, AngleUnit::radians);
  EXPECT_EQ(c.points, std::vector<double>{3});
  EXPECT_EQ(c.expected, std::vector<double>{108});
}

TEST(CaseFromJson, RationalStrings) {
  auto c = case_from_json(json::parse(
      R"({"id":"t","kind":"tangent","expression":"(1/7)x^5","point":"2","expected":["-128/7","80/7"],"tolerance":1e-12})"));
  ASSERT_EQ(c.expected.size(), 2u);
  EXPECT_DOUBLE_EQ(c.expected[0], -128.0 / 7.0);
  EXPECT_EQ(run_case(c).status, CaseStatus::pass);
}

TEST(CaseFromJson, Rejections) {
  EXPECT_THROW(case_from_json(json::parse(R"({"kind":"eval","expected":1,"tolerance":1})")),
               CaseError);
  EXPECT_THROW(case_from_json(json::parse(R"({"id":"a","kind":"bogus","expected":1,"tolerance":1})")),
               CaseError);
  EXPECT_THROW(case_from_json(json::parse(R"({"id":"a","kind":"eval","expected":1,"tolerance":0})")),
               CaseError);
  EXPECT_THROW(
      case_from_json(json::parse(R"({"id":"a","kind":"eval","expected":1,"tolerance":1,"unit":"turn"})")),
      CaseError);
}

TEST(CaseJson, RoundTrip) {
  const auto slots = load_corpus(cli::kBundledCorpus);
  for (const auto &s : slots) {
    ASSERT_TRUE(s.exercise) << s.id;
    auto again = case_from_json(case_to_json(*s.exercise));
    EXPECT_EQ(again.id, s.exercise->id);
    EXPECT_EQ(again.points, s.exercise->points);
    EXPECT_EQ(again.expected, s.exercise->expected);
    EXPECT_EQ(run_case(again).status, run_case(*s.exercise).status);
  }
}

TEST(RunCorpus, BadCaseDoesNotStopTheRun) {
  const char *text = R"([
    {"id":"good","kind":"derivative","expression":"x^4","point":3,"expected":108,"tolerance":1e-9},
    {"id":"broken","kind":"eval","expression":"x +","point":1,"expected":0,"tolerance":1},
    {"id":"div0","kind":"eval","expression":"1/x","point":0,"expected":0,"tolerance":1},
    {"kind":"eval"},
    {"id":"wrong","kind":"eval","expression":"x","point":1,"expected":2,"tolerance":0.5}
  ])";
  auto reports = run_corpus(load_corpus(text));
  ASSERT_EQ(reports.size(), 5u);
  EXPECT_EQ(reports[0].status, CaseStatus::pass);
  EXPECT_EQ(reports[1].status, CaseStatus::error);
  EXPECT_EQ(reports[2].status, CaseStatus::error);
  EXPECT_EQ(reports[3].status, CaseStatus::error);
  EXPECT_EQ(reports[3].id, "#3");
  EXPECT_EQ(reports[4].status, CaseStatus::fail);
  EXPECT_DOUBLE_EQ(reports[4].delta, 1.0);
  auto s = summarize(reports);
  EXPECT_EQ(s.passed, 1u);
  EXPECT_EQ(s.failed, 1u);
  EXPECT_EQ(s.errors, 3u);
  EXPECT_FALSE(s.all_passed());
}

TEST(LoadCorpus, MalformedDocument) {
  EXPECT_THROW(load_corpus("{not json"), CorpusError);
  EXPECT_THROW(load_corpus(R"({"id":"a"})"), CorpusError);
  EXPECT_TRUE(load_corpus("[]").empty());
}

TEST(BundledCorpus, AllCasesPass) {
  const auto reports = run_corpus(load_corpus(cli::kBundledCorpus));
  EXPECT_GE(reports.size(), 20u);
  for (const auto &r : reports)
    EXPECT_EQ(r.status, CaseStatus::pass) << r.id << " " << r.message;
}

TEST(BundledCorpus, FlagpoleIgnoresCircumference) {
  const auto slots = load_corpus(cli::kBundledCorpus);
  ExerciseCase c = find_case(slots, "ex3.3b");
  const double base = evaluate_case(c).at(0);
  EXPECT_NEAR(base, 120.0, 1.0);
  c.parameters["w"] = Rational(24);
  EXPECT_EQ(evaluate_case(c).at(0), base);
}

TEST(BundledCorpus, ReportIsDeterministic) {
  const std::string first = report_text(cli::kBundledCorpus);
  EXPECT_EQ(first, report_text(cli::kBundledCorpus));
  EXPECT_NE(first.find("PASS ex2.1 "), std::string::npos);
}

TEST(ReportLine, Format) {
  CaseReport r;
  r.id = "z";
  r.status = CaseStatus::pass;
  r.actual = {108};
  r.expected = {108};
  std::ostringstream out;
  write_report_line(out, r);
  EXPECT_EQ(out.str(), "PASS z actual=108 expected=108 delta=0\n");

  r.status = CaseStatus::error;
  r.message = "boom";
  std::ostringstream err;
  write_report_line(err, r);
  EXPECT_EQ(err.str(), "ERROR z error=\"boom\"\n");
}
