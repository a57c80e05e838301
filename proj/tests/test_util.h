#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mtpp/graph.h"
#include "mtpp/topological_order.h"

namespace mtpp::testing {

struct NodeWeights {
  double work = 0.0;
  double size_param = 0.0;
  double size_out = 0.0;
};

ComputationGraph MakeGraph(const std::vector<NodeWeights>& nodes, const std::vector<Edge>& edges,
                           std::string name = "g");

// a -> b -> c ... with the given works and tensor sizes.
ComputationGraph Chain(const std::vector<double>& works, const std::vector<double>& sizes);

// Calls visit(order) for every topological order of g.
void ForEachTopologicalOrder(const ComputationGraph& g,
                             const std::function<void(const std::vector<NodeIndex>&)>& visit);

// Min over all segmentations of `order` into at most k contiguous blocks of
// the max block_cost, by listing every cut set.
double BruteForceSlice(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                       const TopologicalOrder& order);

// Min mtpp_objective over all k^n assignments with an acyclic quotient.
double BruteForceOpt(const ComputationGraph& g, const PlatformConfig& cfg, int k);

// Three-superblock relaxation values computed from graph-core block_cost
// over all 3^n assignments whose edges never go backwards: the bottleneck
// bound and, per j in 1..k, the guess bound LB_j. Overflow is dropped.
struct ThreeBlockOracle {
  double bottleneck = 0.0;
  std::vector<double> per_guess;
};
ThreeBlockOracle BruteForceThreeBlock(const ComputationGraph& g, const PlatformConfig& cfg, int k);

// Random small DAG with integer weights; at most `max_n` nodes.
ComputationGraph RandomSmallDag(std::uint64_t seed, int min_n, int max_n);

// Random DAG of any size: edge (i, j), i < j, present with probability p;
// integer works in [0, 9], sizes in [0, 6], params in [0, 3].
ComputationGraph RandomDag(std::uint64_t seed, int n, double p);

// Topological order from Kahn's algorithm with random priorities.
TopologicalOrder RandomOrder(const ComputationGraph& g, std::uint64_t seed);

}  // namespace mtpp::testing
