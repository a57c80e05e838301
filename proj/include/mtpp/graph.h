#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mtpp {

// Index of an op in ComputationGraph::nodes(). String ids are for I/O only.
using NodeIndex = std::int32_t;

struct NodeSpec {
  std::string id;
  double work = 0.0;        // running time
  double size_param = 0.0;  // bytes of model parameters
  double size_out = 0.0;    // bytes of the single output tensor
};

struct Edge {
  NodeIndex producer = 0;
  NodeIndex consumer = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct GraphViolation {
  enum class Rule {
    kIndexOutOfRange,
    kSelfLoop,
    kDuplicateEdge,
    kCycle,
    kInvalidWeight,
  };
  Rule rule;
  std::string message;
};

const char* RuleName(GraphViolation::Rule rule);

// Immutable computation DAG. Every node produces exactly one output tensor; all
// out-edges of a node carry that same tensor.
//
// Construction never throws on structural problems: the violations are
// recorded and reported by validate_graph(). Algorithms that need a DAG throw
// PreconditionError when handed an invalid graph.
class ComputationGraph {
 public:
  ComputationGraph() = default;
  ComputationGraph(std::string name, std::vector<NodeSpec> nodes,
                   std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  NodeIndex num_nodes() const { return static_cast<NodeIndex>(nodes_.size()); }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }
  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  const NodeSpec& node(NodeIndex v) const { return nodes_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Consumers of v's tensor / producers feeding v. Only in-range, non-loop
  // edges are indexed; duplicates are collapsed.
  std::span<const NodeIndex> successors(NodeIndex v) const {
    return {succ_.data() + succ_offset_[v], succ_.data() + succ_offset_[v + 1]};
  }
  std::span<const NodeIndex> predecessors(NodeIndex v) const {
    return {pred_.data() + pred_offset_[v], pred_.data() + pred_offset_[v + 1]};
  }

  bool is_valid() const { return violations_.empty(); }
  const std::vector<GraphViolation>& violations() const { return violations_; }

  // Throws PreconditionError listing the violations if the graph is not a
  // valid DAG.
  void RequireValid() const;

  double total_work() const { return total_work_; }
  double total_size_out() const { return total_size_out_; }
  double max_work() const { return max_work_; }

  // Number of nodes whose tensor has at least one consumer.
  NodeIndex num_producers() const { return num_producers_; }

 private:
  std::string name_;
  std::vector<NodeSpec> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> succ_offset_;
  std::vector<NodeIndex> succ_;
  std::vector<std::int64_t> pred_offset_;
  std::vector<NodeIndex> pred_;
  std::vector<GraphViolation> violations_;
  double total_work_ = 0.0;
  double total_size_out_ = 0.0;
  double max_work_ = 0.0;
  NodeIndex num_producers_ = 0;
};

// Maps an ordered set of ops to the activation memory they need at peak.
using PeakModel = std::function<double(std::span<const NodeIndex>)>;

struct PlatformConfig {
  double bandwidth = 1.0;  // bytes per time unit; size/bandwidth is in work units
  double memory = std::numeric_limits<double>::infinity();  // fast memory per block
  PeakModel peak_model;  // empty means peak(S) = 0

  double Peak(std::span<const NodeIndex> ops) const {
    return peak_model ? peak_model(ops) : 0.0;
  }
  bool has_peak_model() const { return static_cast<bool>(peak_model); }
  void RequireValid() const;
};

// Assignment of every node to a block in [1, k]. Blocks may be empty.
struct Partition {
  int k = 1;
  std::vector<int> block;  // block[v] in [1, k]

  static Partition SingleBlock(const ComputationGraph& g, int k = 1);
  void RequireValidFor(const ComputationGraph& g) const;
  std::vector<NodeIndex> Members(int b) const;
};

struct BlockCostBreakdown {
  double input_io = 0.0;
  double work = 0.0;
  double overflow = 0.0;
  double output_io = 0.0;
  double total = 0.0;
};

std::vector<GraphViolation> validate_graph(const ComputationGraph& g);

// (1/B) * sum of size_out(v) over producers v in S that feed some node of T.
// Each producer counts once no matter how many of its consumers lie in T.
double io_cost(const ComputationGraph& g, const PlatformConfig& cfg,
               std::span<const NodeIndex> S, std::span<const NodeIndex> T);

double overflow_cost(const ComputationGraph& g, const PlatformConfig& cfg,
                     std::span<const NodeIndex> S);

// Cost of running the ops S as one pipeline stage.
BlockCostBreakdown block_cost(const ComputationGraph& g, const PlatformConfig& cfg,
                              std::span<const NodeIndex> S);

bool quotient_is_acyclic(const ComputationGraph& g, const Partition& p);

// Per-block costs computed tensor by tensor in O(n + m): each cut tensor is
// charged once as output of its producer's block and once as input of every
// other block holding one of its consumers. Result index b-1 is block b.
std::vector<BlockCostBreakdown> partition_block_costs(const ComputationGraph& g,
                                                      const PlatformConfig& cfg,
                                                      const Partition& p);

// Bottleneck block cost. Throws InfeasiblePartitionError on a cyclic quotient.
double mtpp_objective(const ComputationGraph& g, const PlatformConfig& cfg,
                      const Partition& p);

}  // namespace mtpp
