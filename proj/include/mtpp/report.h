#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mtpp/bounds.h"

namespace mtpp {

// exp(mean(log v)). Throws PreconditionError on an empty input or a value
// that is not positive and finite; the message names the offending entry
// using `names` when given (same length as `values`).
double geometric_mean(std::span<const double> values, std::span<const std::string> names = {});

// One solution file written by the partition command.
struct SolutionRecord {
  std::string file;
  std::string graph;
  int k = 1;
  std::string algo;
  double value = 0.0;
};

// Throws ParseError on malformed JSON or missing fields.
SolutionRecord ParseSolutionJson(const std::string& text, const std::string& file);

using InstanceKey = std::pair<std::string, int>;  // (graph, k)

struct ReportInput {
  std::vector<SolutionRecord> solutions;
  std::vector<BoundCertificate> bounds;
  // Simple lower bound L per instance for the approximation table. Entries
  // are added from simple certificates in `bounds` when absent.
  std::map<InstanceKey, double> simple_bounds;
};

struct ReportCell {
  std::string row;  // bound method, "best-available", or heuristic name
  int k = 0;
  double geomean = 0.0;
  int instances = 0;
};

struct BestSolution {
  double value = 0.0;
  std::string file;
  std::string algo;
};

struct ExperimentReport {
  // Geometric mean over instances of bound / best solution value.
  std::vector<ReportCell> lower_bounds;
  // Geometric mean over instances of solution value / L.
  std::vector<ReportCell> approximation;
  std::map<InstanceKey, BestSolution> best;
  // Human-readable reasons for excluded (instance, method) pairs.
  std::vector<std::string> missing;
};

// Rows are sorted by method order (simple, bottleneck, bottleneck-guess,
// exact, best-available) or heuristic name, then k.
ExperimentReport build_report(const ReportInput& input);

// Long format: table,row,k,geomean,instances.
std::string ReportCsv(const ExperimentReport& report);
// graph,k,best_value,algo,file.
std::string BestSolutionsCsv(const ExperimentReport& report);
// Aligned tables with one row per method and one column per k.
std::string ReportText(const ExperimentReport& report);

}  // namespace mtpp
