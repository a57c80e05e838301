#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mtpp/graph.h"
#include "mtpp/slicer.h"

namespace mtpp {

struct BrkgaParams {
  int population_size = 100;
  int generations = 100;
  double elite_fraction = 0.2;
  double mutant_fraction = 0.1;
  double elite_inherit_prob = 0.7;
  std::uint64_t seed = 0;
  int workers = 1;  // fitness evaluations per generation may run concurrently

  void RequireValid() const;
  int num_elites() const;
  int num_mutants() const;

  // "brkga-N" naming: population and generations both sqrt(N), so
  // brkga-100 is 10 x 10 and brkga-10000 is 100 x 100.
  static BrkgaParams ForBudget(std::int64_t budget, std::uint64_t seed);
};

// Applies `key = value` lines (blank lines and '#' comments ignored) on top of
// `base`. Keys: population_size, generations, elite_fraction,
// mutant_fraction, elite_inherit_prob, seed, workers. Throws ParseError on an
// unknown key or malformed value.
BrkgaParams ParseBrkgaConfig(const std::string& text, BrkgaParams base = {});
BrkgaParams ReadBrkgaConfig(const std::filesystem::path& path, BrkgaParams base = {});

struct SearchResult {
  double best_value = 0.0;  // MTPP objective of the reported partition
  TopologicalOrder best_order;
  Segmentation best_cuts;
  std::int64_t evaluations = 0;
  // Best search objective after the initial population and after each
  // generation (per sample for random search). For MTPP-driven searches this
  // is the MTPP value; for MLA searches it is the arrangement cost h.
  std::vector<double> history;
  double best_search_objective = 0.0;
};

// Best of T sort-and-slice decodes of i.i.d. U(0,1) priority vectors.
// Sample t always comes from RNG stream (seed, t).
SearchResult random_search(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                           std::int64_t samples, std::uint64_t seed, int workers = 1);

// Biased random-key GA over node priorities with the sort-and-slice decoder.
SearchResult brkga_run(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                       const BrkgaParams& params);

// Linear-arrangement cost of a topological order: sum over edges (u, v) of
// w(u, v) * (pos(v) - pos(u)), with w = 1 or w = size_out(u) / bandwidth.
double mla_objective(const ComputationGraph& g, const PlatformConfig& cfg,
                     const TopologicalOrder& order, bool weighted);

// BRKGA minimizing the arrangement cost; the best arrangement found is then
// sliced optimally to report an MTPP value.
SearchResult mla_search(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                        const BrkgaParams& params, bool weighted);

// Generic BRKGA driver, exposed for testing the evolution rules directly.
struct BrkgaTrace {
  std::vector<double> best_chromosome;
  double best_fitness = 0.0;
  std::vector<double> history;
  std::int64_t evaluations = 0;
  // Fitness of each elite slot in each generation (sorted ascending).
  std::vector<std::vector<double>> elite_fitness;
};
using FitnessFn = std::function<double(std::span<const double>)>;
BrkgaTrace RunBrkga(int num_genes, const BrkgaParams& params, const FitnessFn& fitness);

}  // namespace mtpp
