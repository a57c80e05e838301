#include "mtpp/graph.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

#include "mtpp/errors.h"

namespace mtpp {

const char* RuleName(GraphViolation::Rule rule) {
  switch (rule) {
    case GraphViolation::Rule::kIndexOutOfRange:
      return "index-out-of-range";
    case GraphViolation::Rule::kSelfLoop:
      return "self-loop";
    case GraphViolation::Rule::kDuplicateEdge:
      return "duplicate-edge";
    case GraphViolation::Rule::kCycle:
      return "cycle";
    case GraphViolation::Rule::kInvalidWeight:
      return "invalid-weight";
  }
  return "unknown";
}

namespace {

bool IsValidWeight(double w) { return std::isfinite(w) && w >= 0.0; }

void BuildCsr(NodeIndex n, const std::vector<std::pair<NodeIndex, NodeIndex>>& arcs,
              std::vector<std::int64_t>& offset, std::vector<NodeIndex>& target) {
  offset.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [from, to] : arcs) ++offset[from + 1];
  for (NodeIndex v = 0; v < n; ++v) offset[v + 1] += offset[v];
  target.resize(arcs.size());
  std::vector<std::int64_t> fill(offset.begin(), offset.end() - 1);
  for (const auto& [from, to] : arcs) target[fill[from]++] = to;
}

}  // namespace

ComputationGraph::ComputationGraph(std::string name, std::vector<NodeSpec> nodes,
                                   std::vector<Edge> edges)
    : name_(std::move(name)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const NodeIndex n = num_nodes();
  for (NodeIndex v = 0; v < n; ++v) {
    const NodeSpec& spec = nodes_[v];
    if (!IsValidWeight(spec.work) || !IsValidWeight(spec.size_param) ||
        !IsValidWeight(spec.size_out)) {
      violations_.push_back({GraphViolation::Rule::kInvalidWeight,
                             "node " + std::to_string(v) + " ('" + spec.id +
                                 "') has a negative or non-finite weight"});
    }
    total_work_ += spec.work;
    total_size_out_ += spec.size_out;
    max_work_ = std::max(max_work_, spec.work);
  }

  std::set<Edge> seen;
  std::vector<std::pair<NodeIndex, NodeIndex>> forward;
  std::vector<std::pair<NodeIndex, NodeIndex>> backward;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    const std::string label = "edge " + std::to_string(i) + " (" +
                              std::to_string(e.producer) + "," +
                              std::to_string(e.consumer) + ")";
    if (e.producer < 0 || e.producer >= n || e.consumer < 0 || e.consumer >= n) {
      violations_.push_back({GraphViolation::Rule::kIndexOutOfRange,
                             label + " references a node outside [0," +
                                 std::to_string(n) + ")"});
      continue;
    }
    if (e.producer == e.consumer) {
      violations_.push_back({GraphViolation::Rule::kSelfLoop, label + " is a self-loop"});
      continue;
    }
    if (!seen.insert(e).second) {
      violations_.push_back({GraphViolation::Rule::kDuplicateEdge, label + " is a duplicate"});
      continue;
    }
    forward.emplace_back(e.producer, e.consumer);
    backward.emplace_back(e.consumer, e.producer);
  }
  BuildCsr(n, forward, succ_offset_, succ_);
  BuildCsr(n, backward, pred_offset_, pred_);
  for (NodeIndex v = 0; v < n; ++v) {
    if (!successors(v).empty()) ++num_producers_;
  }

  // Kahn's algorithm: whatever is never emitted lies on or behind a cycle.
  std::vector<std::int64_t> indegree(n);
  std::vector<NodeIndex> ready;
  for (NodeIndex v = 0; v < n; ++v) {
    indegree[v] = static_cast<std::int64_t>(predecessors(v).size());
    if (indegree[v] == 0) ready.push_back(v);
  }
  NodeIndex emitted = 0;
  while (!ready.empty()) {
    const NodeIndex u = ready.back();
    ready.pop_back();
    ++emitted;
    for (NodeIndex w : successors(u)) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  if (emitted < n) {
    std::ostringstream os;
    os << "graph has a directed cycle through nodes {";
    bool first = true;
    for (NodeIndex v = 0; v < n; ++v) {
      if (indegree[v] > 0) {
        os << (first ? "" : ",") << v;
        first = false;
      }
    }
    os << "}";
    violations_.push_back({GraphViolation::Rule::kCycle, os.str()});
  }
}

void ComputationGraph::RequireValid() const {
  if (is_valid()) return;
  std::string message = "invalid computation graph '" + name_ + "':";
  for (const GraphViolation& v : violations_) message += " [" + v.message + "]";
  throw PreconditionError(message);
}

void PlatformConfig::RequireValid() const {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw PreconditionError("bandwidth must be positive and finite");
  }
  if (std::isnan(memory) || memory < 0.0) {
    throw PreconditionError("memory must be nonnegative");
  }
}

Partition Partition::SingleBlock(const ComputationGraph& g, int k) {
  return Partition{k, std::vector<int>(g.num_nodes(), 1)};
}

void Partition::RequireValidFor(const ComputationGraph& g) const {
  if (k < 1) throw PreconditionError("partition k must be >= 1");
  if (static_cast<NodeIndex>(block.size()) != g.num_nodes()) {
    throw PreconditionError("partition assigns " + std::to_string(block.size()) +
                            " nodes but the graph has " +
                            std::to_string(g.num_nodes()));
  }
  for (std::size_t v = 0; v < block.size(); ++v) {
    if (block[v] < 1 || block[v] > k) {
      throw PreconditionError("node " + std::to_string(v) + " assigned to block " +
                              std::to_string(block[v]) + " outside [1," +
                              std::to_string(k) + "]");
    }
  }
}

std::vector<NodeIndex> Partition::Members(int b) const {
  std::vector<NodeIndex> members;
  for (std::size_t v = 0; v < block.size(); ++v) {
    if (block[v] == b) members.push_back(static_cast<NodeIndex>(v));
  }
  return members;
}

std::vector<GraphViolation> validate_graph(const ComputationGraph& g) {
  return g.violations();
}

namespace {

std::vector<char> Membership(NodeIndex n, std::span<const NodeIndex> set) {
  std::vector<char> mask(n, 0);
  for (NodeIndex v : set) {
    if (v < 0 || v >= n) {
      throw PreconditionError("node index " + std::to_string(v) + " out of range");
    }
    mask[v] = 1;
  }
  return mask;
}

double IoBetween(const ComputationGraph& g, const PlatformConfig& cfg,
                 const std::vector<char>& in_s, const std::vector<char>& in_t) {
  double bytes = 0.0;
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
    if (!in_s[u]) continue;
    for (NodeIndex w : g.successors(u)) {
      if (in_t[w]) {
        bytes += g.node(u).size_out;
        break;
      }
    }
  }
  return bytes / cfg.bandwidth;
}

double Overflow(const PlatformConfig& cfg, double param_bytes,
                std::span<const NodeIndex> ordered_ops) {
  const double excess = param_bytes + cfg.Peak(ordered_ops) - cfg.memory;
  return std::max(excess, 0.0) / cfg.bandwidth;
}

}  // namespace

double io_cost(const ComputationGraph& g, const PlatformConfig& cfg,
               std::span<const NodeIndex> S, std::span<const NodeIndex> T) {
  g.RequireValid();
  cfg.RequireValid();
  const auto in_s = Membership(g.num_nodes(), S);
  const auto in_t = Membership(g.num_nodes(), T);
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
    if (in_s[v] && in_t[v]) {
      throw PreconditionError("io_cost: S and T overlap at node " + std::to_string(v));
    }
  }
  return IoBetween(g, cfg, in_s, in_t);
}

double overflow_cost(const ComputationGraph& g, const PlatformConfig& cfg,
                     std::span<const NodeIndex> S) {
  cfg.RequireValid();
  const auto mask = Membership(g.num_nodes(), S);
  std::vector<NodeIndex> ordered;
  double params = 0.0;
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
    if (mask[v]) {
      ordered.push_back(v);
      params += g.node(v).size_param;
    }
  }
  if (ordered.empty()) return 0.0;
  return Overflow(cfg, params, ordered);
}

BlockCostBreakdown block_cost(const ComputationGraph& g, const PlatformConfig& cfg,
                              std::span<const NodeIndex> S) {
  g.RequireValid();
  cfg.RequireValid();
  const NodeIndex n = g.num_nodes();
  const auto in_s = Membership(n, S);
  std::vector<char> outside(n);
  for (NodeIndex v = 0; v < n; ++v) outside[v] = !in_s[v];

  BlockCostBreakdown cost;
  cost.input_io = IoBetween(g, cfg, outside, in_s);
  for (NodeIndex v = 0; v < n; ++v) {
    if (in_s[v]) cost.work += g.node(v).work;
  }
  cost.overflow = overflow_cost(g, cfg, S);
  cost.output_io = IoBetween(g, cfg, in_s, outside);
  cost.total = cost.input_io + cost.work + cost.overflow + cost.output_io;
  return cost;
}

namespace {

bool QuotientAcyclic(const ComputationGraph& g, const Partition& p) {
  const int k = p.k;
  std::vector<std::vector<char>> arc(k + 1, std::vector<char>(k + 1, 0));
  std::vector<int> indegree(k + 1, 0);
  for (const Edge& e : g.edges()) {
    const int a = p.block[e.producer];
    const int b = p.block[e.consumer];
    if (a != b && !arc[a][b]) {
      arc[a][b] = 1;
      ++indegree[b];
    }
  }
  std::vector<int> ready;
  for (int b = 1; b <= k; ++b) {
    if (indegree[b] == 0) ready.push_back(b);
  }
  int emitted = 0;
  while (!ready.empty()) {
    const int a = ready.back();
    ready.pop_back();
    ++emitted;
    for (int b = 1; b <= k; ++b) {
      if (arc[a][b] && --indegree[b] == 0) ready.push_back(b);
    }
  }
  return emitted == k;
}

}  // namespace

bool quotient_is_acyclic(const ComputationGraph& g, const Partition& p) {
  g.RequireValid();
  p.RequireValidFor(g);
  return QuotientAcyclic(g, p);
}

std::vector<BlockCostBreakdown> partition_block_costs(const ComputationGraph& g,
                                                      const PlatformConfig& cfg,
                                                      const Partition& p) {
  g.RequireValid();
  cfg.RequireValid();
  p.RequireValidFor(g);
  const int k = p.k;
  std::vector<BlockCostBreakdown> costs(k);
  std::vector<double> params(k, 0.0);
  std::vector<std::vector<NodeIndex>> members(k);
  std::vector<int> stamp(k + 1, -1);

  for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
    const int home = p.block[u];
    const NodeSpec& spec = g.node(u);
    costs[home - 1].work += spec.work;
    params[home - 1] += spec.size_param;
    members[home - 1].push_back(u);

    const double tensor = spec.size_out / cfg.bandwidth;
    bool leaves_home = false;
    for (NodeIndex w : g.successors(u)) {
      const int b = p.block[w];
      if (b == home || stamp[b] == u) continue;
      stamp[b] = u;
      costs[b - 1].input_io += tensor;
      leaves_home = true;
    }
    if (leaves_home) costs[home - 1].output_io += tensor;
  }
  for (int b = 0; b < k; ++b) {
    if (!members[b].empty()) costs[b].overflow = Overflow(cfg, params[b], members[b]);
    costs[b].total =
        costs[b].input_io + costs[b].work + costs[b].overflow + costs[b].output_io;
  }
  return costs;
}

double mtpp_objective(const ComputationGraph& g, const PlatformConfig& cfg,
                      const Partition& p) {
  g.RequireValid();
  p.RequireValidFor(g);
  if (!QuotientAcyclic(g, p)) {
    throw InfeasiblePartitionError("partition of '" + g.name() +
                                   "' has a cyclic quotient graph");
  }
  double worst = 0.0;
  for (const BlockCostBreakdown& c : partition_block_costs(g, cfg, p)) {
    worst = std::max(worst, c.total);
  }
  return worst;
}

}  // namespace mtpp
