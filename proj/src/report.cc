#include "mtpp/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mtpp/csv.h"
#include "mtpp/errors.h"

namespace mtpp {

double geometric_mean(std::span<const double> values, std::span<const std::string> names) {
  if (values.empty()) throw PreconditionError("geometric_mean of no values");
  double log_sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      const std::string who = i < names.size() ? names[i] : "entry " + std::to_string(i);
      throw PreconditionError("geometric_mean: value " + std::to_string(values[i]) + " for " +
                              who + " is not positive");
    }
    log_sum += std::log(values[i]);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

SolutionRecord ParseSolutionJson(const std::string& text, const std::string& file) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    SolutionRecord r;
    r.file = file;
    r.graph = j.at("graph").get<std::string>();
    r.k = j.at("k").get<int>();
    r.algo = j.at("algo").get<std::string>();
    r.value = j.at("value").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("solution " + file + ": " + e.what());
  }
}

namespace {

std::string InstanceName(const InstanceKey& key) {
  return key.first + " (k=" + std::to_string(key.second) + ")";
}

std::string FormatRatio(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", x);
  return buffer;
}

std::string FormatExact(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

struct Samples {
  std::vector<double> values;
  std::vector<std::string> names;
};

void AppendCells(const std::map<std::pair<std::string, int>, Samples>& groups,
                 std::vector<ReportCell>& out) {
  for (const auto& [key, samples] : groups) {
    out.push_back({key.first, key.second, geometric_mean(samples.values, samples.names),
                   static_cast<int>(samples.values.size())});
  }
}

int MethodRank(const std::string& row) {
  static const std::vector<std::string> order = {"simple", "bottleneck", "bottleneck-guess",
                                                 "exact", "best-available"};
  const auto it = std::find(order.begin(), order.end(), row);
  return static_cast<int>(it - order.begin());
}

}  // namespace

ExperimentReport build_report(const ReportInput& input) {
  ExperimentReport report;
  for (const SolutionRecord& s : input.solutions) {
    const InstanceKey key{s.graph, s.k};
    auto it = report.best.find(key);
    if (it == report.best.end() || s.value < it->second.value ||
        (s.value == it->second.value && s.file < it->second.file)) {
      report.best[key] = {s.value, s.file, s.algo};
    }
  }

  std::map<InstanceKey, std::map<BoundMethod, double>> bounds;
  std::map<InstanceKey, double> simple = input.simple_bounds;
  for (const BoundCertificate& c : input.bounds) {
    const InstanceKey key{c.graph, c.k};
    double& slot = bounds[key].try_emplace(c.method, c.value).first->second;
    slot = std::max(slot, c.value);
    if (c.method == BoundMethod::kSimple) simple.try_emplace(key, c.value);
  }

  std::map<std::pair<std::string, int>, Samples> lower;
  for (const auto& [key, methods] : bounds) {
    const auto best = report.best.find(key);
    if (best == report.best.end()) {
      report.missing.push_back("no solution for " + InstanceName(key) + "; bounds excluded");
      continue;
    }
    double strongest = 0.0;
    for (const auto& [method, value] : methods) {
      Samples& s = lower[{BoundMethodName(method), key.second}];
      s.values.push_back(value / best->second.value);
      s.names.push_back(InstanceName(key) + " method " + BoundMethodName(method));
      strongest = std::max(strongest, value);
    }
    Samples& s = lower[{"best-available", key.second}];
    s.values.push_back(strongest / best->second.value);
    s.names.push_back(InstanceName(key) + " best-available");
  }
  AppendCells(lower, report.lower_bounds);
  std::stable_sort(report.lower_bounds.begin(), report.lower_bounds.end(),
                   [](const ReportCell& a, const ReportCell& b) {
                     return std::pair(MethodRank(a.row), a.k) < std::pair(MethodRank(b.row), b.k);
                   });

  std::map<std::pair<std::string, int>, Samples> approx;
  std::set<std::pair<InstanceKey, std::string>> seen;
  for (const SolutionRecord& s : input.solutions) {
    const InstanceKey key{s.graph, s.k};
    const auto L = simple.find(key);
    if (L == simple.end()) {
      report.missing.push_back("no simple bound for " + InstanceName(key) + "; " + s.file +
                               " excluded from the approximation table");
      continue;
    }
    if (!seen.insert({key, s.algo}).second) {
      report.missing.push_back("duplicate " + s.algo + " solution for " + InstanceName(key) +
                               "; " + s.file + " ignored");
      continue;
    }
    Samples& sm = approx[{s.algo, s.k}];
    sm.values.push_back(s.value / L->second);
    sm.names.push_back(InstanceName(key) + " " + s.algo + " (" + s.file + ")");
  }
  AppendCells(approx, report.approximation);
  return report;
}

std::string ReportCsv(const ExperimentReport& report) {
  std::string out = CsvLine({"table", "row", "k", "geomean", "instances"});
  auto emit = [&](const char* table, const std::vector<ReportCell>& cells) {
    for (const ReportCell& c : cells) {
      out += CsvLine({table, c.row, std::to_string(c.k), FormatExact(c.geomean),
                      std::to_string(c.instances)});
    }
  };
  emit("lower-bound", report.lower_bounds);
  emit("approximation", report.approximation);
  return out;
}

std::string BestSolutionsCsv(const ExperimentReport& report) {
  std::string out = CsvLine({"graph", "k", "best_value", "algo", "file"});
  for (const auto& [key, best] : report.best) {
    out += CsvLine({key.first, std::to_string(key.second), FormatExact(best.value), best.algo,
                    best.file});
  }
  return out;
}

namespace {

std::string RenderTable(const std::string& title, const std::string& corner,
                        const std::vector<ReportCell>& cells) {
  std::vector<std::string> rows;
  std::set<int> ks;
  std::map<std::pair<std::string, int>, double> value;
  for (const ReportCell& c : cells) {
    if (std::find(rows.begin(), rows.end(), c.row) == rows.end()) rows.push_back(c.row);
    ks.insert(c.k);
    value[{c.row, c.k}] = c.geomean;
  }
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header = {corner};
  for (int k : ks) header.push_back("k=" + std::to_string(k));
  grid.push_back(header);
  for (const std::string& r : rows) {
    std::vector<std::string> line = {r};
    for (int k : ks) {
      const auto it = value.find({r, k});
      line.push_back(it == value.end() ? "-" : FormatRatio(it->second));
    }
    grid.push_back(line);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : grid) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::ostringstream out;
  out << title << "\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t c = 0; c < grid[i].size(); ++c) {
      const std::string& cell = grid[i][c];
      if (c == 0) {
        out << cell << std::string(width[c] - cell.size(), ' ');
      } else {
        out << "  " << std::string(width[c] - cell.size(), ' ') << cell;
      }
    }
    out << "\n";
    if (i == 0) {
      std::size_t total = width[0];
      for (std::size_t c = 1; c < width.size(); ++c) total += 2 + width[c];
      out << std::string(total, '-') << "\n";
    }
  }
  return out.str();
}

}  // namespace

std::string ReportText(const ExperimentReport& report) {
  std::string out;
  out += RenderTable("Lower bound / best solution (geometric mean)", "method",
                     report.lower_bounds);
  out += "\n";
  out += RenderTable("Solution / L (geometric mean)", "algorithm", report.approximation);
  if (!report.missing.empty()) {
    out += "\nExcluded: " + std::to_string(report.missing.size()) + "\n";
    for (const std::string& m : report.missing) out += "  " + m + "\n";
  }
  return out;
}

}  // namespace mtpp
