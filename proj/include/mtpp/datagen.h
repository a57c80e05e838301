#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mtpp/graph.h"
#include "mtpp/topological_order.h"

namespace mtpp {

enum class BaseModel { kErdosRenyi, kBarabasiAlbert, kWattsStrogatz, kLayered };

const char* BaseModelName(BaseModel model);
// Accepted names: erdos-renyi, barabasi-albert, watts-strogatz, layered.
// Throws PreconditionError listing them.
BaseModel ParseBaseModel(std::string_view text);

struct GenParams {
  BaseModel model = BaseModel::kErdosRenyi;
  int n_lo = 50;
  int n_hi = 200;
  double er_edge_prob = -1.0;  // negative: 2 ln(n) / n
  int ba_attach = 2;
  int ws_degree = 4;           // even
  double ws_rewire = 0.3;
  double layered_edge_prob = 0.3;
  double tensor_mean = 50.0;
  double tensor_std = 10.0;
  double work_noise_std = 0.1;
  std::uint64_t seed = 0;

  void RequireValid() const;
};

// Synthetic graph in the style of the REGAL benchmark: an undirected base
// graph oriented along a random permutation (the layered model is oriented
// by layer), tensor sizes ~ N(mean, std) clamped to >= 1, and node work equal
// to its input and output tensor sizes plus r times the total tensor size,
// r ~ N(0, work_noise_std), clamped to >= 0. Parameters are zero; bandwidth
// is 1 and memory unlimited.
ComputationGraph generate_regal_like(const GenParams& p, std::string name = "");

struct WeightRanges {
  int work_lo = 1;
  int work_hi = 10;
  int param_lo = 0;
  int param_hi = 0;
  int size_lo = 0;
  int size_hi = 10;
};

// Each pair of nodes is joined with probability edge_prob, oriented along a
// random permutation; integer weights drawn uniformly from the ranges.
// Requires n <= 16.
ComputationGraph generate_small_random_dag(int n, double edge_prob, const WeightRanges& weights,
                                           std::uint64_t seed);

// Nodes 0..k-1 have work 1 - eps, nodes k..2k-1 have work eps. With
// `with_edge`, node 0 feeds node k through a tensor of size 10k. The
// adversarial order lists the heavy nodes, then the light ones in reverse.
struct HardInstance {
  ComputationGraph graph;
  TopologicalOrder adversarial_order;
};
HardInstance make_hard_instance(int k, double eps, bool with_edge);

struct BatchEntry {
  std::string file;
  NodeIndex n = 0;
  std::int64_t m = 0;
  std::uint64_t seed = 0;
};

// Writes {prefix}_{i}.json for i in [0, count) with seed p.seed + i, plus
// manifest.csv (file,n,m,seed). Output does not depend on `jobs`.
std::vector<BatchEntry> generate_batch(const GenParams& p, int count,
                                       const std::filesystem::path& out_dir,
                                       const std::string& prefix, int jobs = 1);

}  // namespace mtpp
