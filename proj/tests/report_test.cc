#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "mtpp/csv.h"
#include "mtpp/errors.h"
#include "mtpp/report.h"

namespace mtpp {
namespace {

TEST(GeometricMean, Examples) {
  EXPECT_DOUBLE_EQ(geometric_mean(std::vector<double>{1, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(geometric_mean(std::vector<double>{0.5, 2}), 1.0);
  EXPECT_DOUBLE_EQ(geometric_mean(std::vector<double>{0.25, 4, 1}), 1.0);
  EXPECT_DOUBLE_EQ(geometric_mean(std::vector<double>{0.7}), 0.7);
}

TEST(GeometricMean, StableForManyValues) {
  std::vector<double> values;
  for (int i = 0; i < 10000; ++i) values.push_back(i % 2 == 0 ? 1e-200 : 1e200);
  EXPECT_NEAR(geometric_mean(values), 1.0, 1e-9);
}

TEST(GeometricMean, NamesOffendingEntry) {
  const std::vector<double> values = {1.0, 0.0};
  const std::vector<std::string> names = {"a", "graph_b"};
  try {
    geometric_mean(values, names);
    FAIL() << "expected an error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("graph_b"), std::string::npos);
  }
  EXPECT_THROW(geometric_mean(std::vector<double>{}), PreconditionError);
  EXPECT_THROW(geometric_mean(std::vector<double>{-1}), PreconditionError);
  EXPECT_THROW(geometric_mean(std::vector<double>{INFINITY}), PreconditionError);
}

TEST(Csv, ParseQuotesAndLineEndings) {
  const auto rows = ParseCsv("a,\"b,c\",\"say \"\"hi\"\"\"\r\n\r\nx,,\"multi\nline\"\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].fields, (std::vector<std::string>{"a", "b,c", "say \"hi\""}));
  EXPECT_EQ(rows[0].line, 1);
  EXPECT_EQ(rows[1].fields, (std::vector<std::string>{"x", "", "multi\nline"}));
  EXPECT_EQ(rows[1].line, 3);
  EXPECT_THROW(ParseCsv("\"open\n"), ParseError);
  EXPECT_THROW(ParseCsv("\"a\"b\n"), ParseError);
}

TEST(Csv, LineRoundTrip) {
  const std::vector<std::string> fields = {"plain", "with,comma", "q\"uote", "new\nline", ""};
  const std::string line = CsvLine(fields);
  EXPECT_EQ(line, "plain,\"with,comma\",\"q\"\"uote\",\"new\nline\",\n");
  const auto rows = ParseCsv(line);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].fields, fields);
}

BoundCertificate Cert(const std::string& graph, int k, BoundMethod m, double v) {
  BoundCertificate c;
  c.graph = graph;
  c.k = k;
  c.method = m;
  c.value = v;
  c.source = BoundSource::kOracle;
  return c;
}

ReportInput SampleInput() {
  ReportInput in;
  in.solutions = {{"a_brkga.json", "a", 2, "brkga-100", 10.0},
                  {"a_random.json", "a", 2, "random-1", 12.0},
                  {"b_brkga.json", "b", 2, "brkga-100", 4.0},
                  {"b_random.json", "b", 2, "random-1", 4.0}};
  in.bounds = {Cert("a", 2, BoundMethod::kSimple, 5.0),
               Cert("a", 2, BoundMethod::kExact, 10.0),
               Cert("b", 2, BoundMethod::kSimple, 2.0),
               Cert("b", 2, BoundMethod::kBottleneck, 4.0),
               Cert("b", 2, BoundMethod::kExact, 4.0)};
  return in;
}

const ReportCell* Find(const std::vector<ReportCell>& cells, const std::string& row, int k) {
  for (const ReportCell& c : cells) {
    if (c.row == row && c.k == k) return &c;
  }
  return nullptr;
}

TEST(BuildReport, RatiosAndBest) {
  const ExperimentReport r = build_report(SampleInput());
  const BestSolution& best_b = r.best.at({"b", 2});
  EXPECT_EQ(best_b.value, 4.0);
  EXPECT_EQ(best_b.file, "b_brkga.json");
  EXPECT_EQ(r.best.at({"a", 2}).algo, "brkga-100");

  const ReportCell* simple = Find(r.lower_bounds, "simple", 2);
  ASSERT_NE(simple, nullptr);
  EXPECT_DOUBLE_EQ(simple->geomean, std::sqrt(0.5 * 0.5));
  EXPECT_EQ(simple->instances, 2);
  const ReportCell* bottleneck = Find(r.lower_bounds, "bottleneck", 2);
  ASSERT_NE(bottleneck, nullptr);
  EXPECT_EQ(bottleneck->instances, 1);
  EXPECT_DOUBLE_EQ(bottleneck->geomean, 1.0);
  EXPECT_DOUBLE_EQ(Find(r.lower_bounds, "exact", 2)->geomean, 1.0);
  EXPECT_DOUBLE_EQ(Find(r.lower_bounds, "best-available", 2)->geomean, 1.0);
  EXPECT_EQ(r.lower_bounds.back().row, "best-available");

  const ReportCell* random = Find(r.approximation, "random-1", 2);
  ASSERT_NE(random, nullptr);
  EXPECT_DOUBLE_EQ(random->geomean, std::sqrt(12.0 / 5.0 * 4.0 / 2.0));
  EXPECT_DOUBLE_EQ(Find(r.approximation, "brkga-100", 2)->geomean, std::sqrt(2.0 * 2.0));
  EXPECT_TRUE(r.missing.empty());
}

TEST(BuildReport, CertifiedRatiosNeverExceedOne) {
  const ExperimentReport r = build_report(SampleInput());
  for (const ReportCell& c : r.lower_bounds) EXPECT_LE(c.geomean, 1.0 + 1e-9) << c.row;
}

TEST(BuildReport, BestAvailableDominates) {
  ReportInput in;
  for (int i = 0; i < 6; ++i) {
    const std::string g = "g" + std::to_string(i);
    in.solutions.push_back({g + ".json", g, 3, "brkga-100", 10.0 + i});
    in.bounds.push_back(Cert(g, 3, BoundMethod::kSimple, 3.0 + i % 3));
    in.bounds.push_back(Cert(g, 3, BoundMethod::kBottleneck, 4.0 + (i * 7) % 5));
    in.bounds.push_back(Cert(g, 3, BoundMethod::kBottleneckGuess, 5.0 + (i * 3) % 4));
  }
  const ExperimentReport r = build_report(in);
  const double best = Find(r.lower_bounds, "best-available", 3)->geomean;
  for (const ReportCell& c : r.lower_bounds) EXPECT_LE(c.geomean, best + 1e-12) << c.row;
}

TEST(BuildReport, MissingPairsAreRecorded) {
  ReportInput in = SampleInput();
  in.bounds.push_back(Cert("orphan", 2, BoundMethod::kSimple, 1.0));
  in.solutions.push_back({"c.json", "c", 4, "mla", 3.0});
  in.solutions.push_back({"a_brkga_again.json", "a", 2, "brkga-100", 11.0});
  const ExperimentReport r = build_report(in);
  ASSERT_EQ(r.missing.size(), 3u);
  EXPECT_EQ(Find(r.approximation, "brkga-100", 2)->instances, 2);
  EXPECT_EQ(Find(r.lower_bounds, "simple", 2)->instances, 2);
}

TEST(BuildReport, ExplicitSimpleBounds) {
  ReportInput in;
  in.solutions = {{"x.json", "x", 2, "mla", 6.0}};
  in.simple_bounds[{"x", 2}] = 3.0;
  const ExperimentReport r = build_report(in);
  EXPECT_DOUBLE_EQ(Find(r.approximation, "mla", 2)->geomean, 2.0);
  EXPECT_TRUE(r.lower_bounds.empty());
}

TEST(ReportOutput, CsvAndText) {
  const ExperimentReport r = build_report(SampleInput());
  const std::string csv = ReportCsv(r);
  EXPECT_EQ(csv.rfind("table,row,k,geomean,instances\n", 0), 0u);
  EXPECT_NE(csv.find("lower-bound,simple,2,0.5,2\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("approximation,brkga-100,2,2,2\n"), std::string::npos) << csv;
  EXPECT_EQ(csv, ReportCsv(build_report(SampleInput())));

  const std::string best = BestSolutionsCsv(r);
  EXPECT_EQ(best.rfind("graph,k,best_value,algo,file\n", 0), 0u);
  EXPECT_NE(best.find("b,2,4,brkga-100,b_brkga.json\n"), std::string::npos) << best;

  const std::string text = ReportText(r);
  EXPECT_NE(text.find("0.5000"), std::string::npos) << text;
  EXPECT_NE(text.find("best-available"), std::string::npos) << text;
}

TEST(SolutionJson, ParsesAndRejects) {
  const SolutionRecord r = ParseSolutionJson(
      R"({"graph": "g", "k": 4, "algo": "mla", "value": 2.5, "order": [0], "seed": 1})", "f.json");
  EXPECT_EQ(r.graph, "g");
  EXPECT_EQ(r.k, 4);
  EXPECT_EQ(r.algo, "mla");
  EXPECT_EQ(r.value, 2.5);
  EXPECT_EQ(r.file, "f.json");
  EXPECT_THROW(ParseSolutionJson(R"({"graph": "g"})", "f.json"), ParseError);
  EXPECT_THROW(ParseSolutionJson("not json", "f.json"), ParseError);
}

}  // namespace
}  // namespace mtpp
