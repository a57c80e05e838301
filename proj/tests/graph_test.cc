#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "mtpp/errors.h"
#include "mtpp/graph.h"
#include "mtpp/graph_io.h"
#include "test_util.h"

namespace mtpp {
namespace {

using testing::Chain;
using testing::MakeGraph;
using testing::RandomSmallDag;

bool HasRule(const std::vector<GraphViolation>& violations, GraphViolation::Rule rule) {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const GraphViolation& v) { return v.rule == rule; });
}

TEST(ValidateGraph, SingleNodeIsValid) {
  const ComputationGraph g = MakeGraph({{1, 0, 0}}, {});
  EXPECT_TRUE(validate_graph(g).empty());
}

TEST(ValidateGraph, TwoCycleReported) {
  const ComputationGraph g = MakeGraph({{1, 0, 1}, {1, 0, 1}}, {{0, 1}, {1, 0}});
  const auto violations = validate_graph(g);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].rule, GraphViolation::Rule::kCycle);
}

TEST(ValidateGraph, IndexOutOfRangeReported) {
  const ComputationGraph g = MakeGraph({{1, 0, 0}, {1, 0, 0}}, {{0, 5}});
  const auto violations = validate_graph(g);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].rule, GraphViolation::Rule::kIndexOutOfRange);
  EXPECT_NE(violations[0].message.find("edge 0"), std::string::npos);
}

TEST(ValidateGraph, SelfLoopDuplicateAndWeight) {
  const ComputationGraph g =
      MakeGraph({{1, 0, 0}, {-1, 0, 0}, {1, 0, std::nan("")}}, {{0, 0}, {0, 1}, {0, 1}});
  const auto violations = validate_graph(g);
  EXPECT_TRUE(HasRule(violations, GraphViolation::Rule::kSelfLoop));
  EXPECT_TRUE(HasRule(violations, GraphViolation::Rule::kDuplicateEdge));
  EXPECT_TRUE(HasRule(violations, GraphViolation::Rule::kInvalidWeight));
  EXPECT_THROW(g.RequireValid(), PreconditionError);
}

// Two producers a, b; a feeds v and w, b feeds v.
ComputationGraph SharedTensorGraph() {
  return MakeGraph({{1, 0, 1}, {1, 0, 1}, {1, 0, 0}, {1, 0, 0}}, {{0, 2}, {0, 3}, {1, 2}});
}

TEST(IoCost, SharedTensorCountedOnce) {
  const ComputationGraph g = SharedTensorGraph();
  const std::vector<NodeIndex> S = {0, 1};
  const std::vector<NodeIndex> T = {2, 3};
  EXPECT_DOUBLE_EQ(io_cost(g, PlatformConfig{}, S, T), 2.0);
}

TEST(IoCost, EmptySetsCostNothing) {
  const ComputationGraph g = SharedTensorGraph();
  const std::vector<NodeIndex> S = {0, 1};
  const std::vector<NodeIndex> none;
  EXPECT_EQ(io_cost(g, PlatformConfig{}, S, none), 0.0);
  EXPECT_EQ(io_cost(g, PlatformConfig{}, none, S), 0.0);
}

TEST(IoCost, NoDirectEdgeMeansNoCost) {
  const ComputationGraph g = Chain({1, 1, 1}, {5, 5, 5});
  PlatformConfig cfg;
  cfg.bandwidth = 2.0;
  const std::vector<NodeIndex> S = {0};
  const std::vector<NodeIndex> T = {2};
  EXPECT_EQ(io_cost(g, cfg, S, T), 0.0);
}

TEST(IoCost, OverlapRejected) {
  const ComputationGraph g = SharedTensorGraph();
  const std::vector<NodeIndex> S = {0, 2};
  const std::vector<NodeIndex> T = {2, 3};
  EXPECT_THROW(io_cost(g, PlatformConfig{}, S, T), PreconditionError);
}

TEST(IoCost, BoundedByProducedBytes) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const ComputationGraph g = RandomSmallDag(seed, 2, 9);
    std::vector<NodeIndex> S, T;
    double produced = 0.0;
    for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
      if ((v + seed) % 2 == 0) {
        S.push_back(v);
        produced += g.node(v).size_out;
      } else {
        T.push_back(v);
      }
    }
    EXPECT_LE(io_cost(g, PlatformConfig{}, S, T), produced);
  }
}

TEST(OverflowCost, Examples) {
  PlatformConfig cfg;
  cfg.memory = 100;
  const ComputationGraph small = MakeGraph({{0, 10, 0}}, {});
  const std::vector<NodeIndex> all = {0};
  EXPECT_EQ(overflow_cost(small, cfg, all), 0.0);

  cfg.bandwidth = 10;
  const ComputationGraph big = MakeGraph({{0, 150, 0}}, {});
  EXPECT_DOUBLE_EQ(overflow_cost(big, cfg, all), 5.0);
  EXPECT_EQ(overflow_cost(big, cfg, std::vector<NodeIndex>{}), 0.0);
}

TEST(OverflowCost, PeakModelIsConsulted) {
  PlatformConfig cfg;
  cfg.memory = 10;
  cfg.peak_model = [](std::span<const NodeIndex> ops) { return 4.0 * ops.size(); };
  const ComputationGraph g = MakeGraph({{0, 3, 0}, {0, 3, 0}}, {});
  const std::vector<NodeIndex> both = {0, 1};
  EXPECT_DOUBLE_EQ(overflow_cost(g, cfg, both), 6.0 + 8.0 - 10.0);
}

TEST(BlockCost, WholeGraphIsTotalWork) {
  const ComputationGraph g = SharedTensorGraph();
  const std::vector<NodeIndex> all = {0, 1, 2, 3};
  const BlockCostBreakdown c = block_cost(g, PlatformConfig{}, all);
  EXPECT_EQ(c.total, 4.0);
  EXPECT_EQ(c.input_io + c.output_io + c.overflow, 0.0);
  EXPECT_EQ(block_cost(g, PlatformConfig{}, std::vector<NodeIndex>{}).total, 0.0);
}

TEST(BlockCost, PathByHand) {
  const ComputationGraph g = MakeGraph({{1, 0, 4}, {2, 0, 6}}, {{0, 1}});
  PlatformConfig cfg;
  cfg.bandwidth = 2;
  const BlockCostBreakdown c = block_cost(g, cfg, std::vector<NodeIndex>{0});
  EXPECT_EQ(c.input_io, 0.0);
  EXPECT_EQ(c.work, 1.0);
  EXPECT_EQ(c.output_io, 2.0);
  EXPECT_EQ(c.total, 3.0);
}

TEST(QuotientIsAcyclic, Examples) {
  const ComputationGraph chain = Chain({1, 1, 1}, {1, 1, 1});
  EXPECT_TRUE(quotient_is_acyclic(chain, Partition::SingleBlock(chain)));
  EXPECT_FALSE(quotient_is_acyclic(chain, Partition{2, {1, 2, 1}}));
  EXPECT_TRUE(quotient_is_acyclic(chain, Partition{3, {1, 2, 3}}));

  const ComputationGraph g =
      MakeGraph({{1, 0, 1}, {1, 0, 1}, {1, 0, 1}, {1, 0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  // P2 = {1, 3}, P3 = {2}: 1 -> 2 and 2 -> 3 run both ways.
  EXPECT_FALSE(quotient_is_acyclic(g, Partition{3, {1, 2, 3, 2}}));
}

TEST(MtppObjective, Examples) {
  const ComputationGraph g = SharedTensorGraph();
  EXPECT_EQ(mtpp_objective(g, PlatformConfig{}, Partition::SingleBlock(g, 3)), 4.0);

  const ComputationGraph chain = Chain({1, 1, 1}, {0, 0, 0});
  EXPECT_EQ(mtpp_objective(chain, PlatformConfig{}, Partition{3, {1, 2, 3}}), 1.0);
  EXPECT_THROW(mtpp_objective(chain, PlatformConfig{}, Partition{2, {1, 2, 1}}),
               InfeasiblePartitionError);
}

TEST(MtppObjective, HardInstancePairing) {
  const double eps = 0.1;
  const ComputationGraph g = MakeGraph(
      {{1 - eps, 0, 20}, {1 - eps, 0, 0}, {eps, 0, 0}, {eps, 0, 0}}, {{0, 2}});
  EXPECT_NEAR(mtpp_objective(g, PlatformConfig{}, Partition{2, {1, 2, 1, 2}}), 1.0, 1e-12);
}

TEST(PartitionBlockCosts, MatchesBlockCostAndConservesWork) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const ComputationGraph g = RandomSmallDag(seed, 1, 9);
    PlatformConfig cfg;
    cfg.bandwidth = 1.0 + static_cast<double>(seed % 3);
    cfg.memory = 3.0;
    const int k = 1 + static_cast<int>(seed % 4);
    Partition p{k, std::vector<int>(g.num_nodes())};
    for (NodeIndex v = 0; v < g.num_nodes(); ++v) p.block[v] = 1 + (v * 7 + seed) % k;
    const auto costs = partition_block_costs(g, cfg, p);
    double work = 0.0;
    for (int b = 1; b <= k; ++b) {
      const auto members = p.Members(b);
      const BlockCostBreakdown expected = block_cost(g, cfg, members);
      const BlockCostBreakdown& got = costs[b - 1];
      EXPECT_NEAR(got.input_io, expected.input_io, 1e-12);
      EXPECT_NEAR(got.output_io, expected.output_io, 1e-12);
      EXPECT_NEAR(got.overflow, expected.overflow, 1e-12);
      EXPECT_NEAR(got.total, got.input_io + got.work + got.overflow + got.output_io,
                  1e-12 * std::max(1.0, got.total));
      work += got.work;
    }
    EXPECT_NEAR(work, g.total_work(), 1e-9);
  }
}

// Each cut tensor is charged once as output of its home block and once as
// input of every other block holding a consumer.
TEST(PartitionBlockCosts, PerTensorChargesAddUp) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const ComputationGraph g = RandomSmallDag(seed, 2, 9);
    const int k = 3;
    Partition p{k, std::vector<int>(g.num_nodes())};
    for (NodeIndex v = 0; v < g.num_nodes(); ++v) p.block[v] = 1 + (v + seed) % k;
    double expected = 0.0;
    for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
      std::vector<int> blocks;
      for (NodeIndex w : g.successors(u)) {
        if (p.block[w] != p.block[u]) blocks.push_back(p.block[w]);
      }
      std::sort(blocks.begin(), blocks.end());
      blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
      if (!blocks.empty()) expected += g.node(u).size_out * (1.0 + blocks.size());
    }
    double charged = 0.0;
    for (const auto& c : partition_block_costs(g, PlatformConfig{}, p)) {
      charged += c.input_io + c.output_io;
    }
    EXPECT_NEAR(charged, expected, 1e-9);
  }
}

TEST(MtppObjective, InvariantUnderQuotientTopologicalRelabel) {
  const ComputationGraph g =
      MakeGraph({{2, 0, 1}, {3, 0, 2}, {1, 0, 3}, {4, 0, 0}}, {{0, 2}, {1, 3}});
  // Blocks {0, 2} and {1, 3} are independent, so either numbering is valid.
  const double a = mtpp_objective(g, PlatformConfig{}, Partition{2, {1, 2, 1, 2}});
  const double b = mtpp_objective(g, PlatformConfig{}, Partition{2, {2, 1, 2, 1}});
  EXPECT_EQ(a, b);
}

TEST(GraphJson, RoundTripAndDefaults) {
  const ComputationGraph g = SharedTensorGraph();
  PlatformConfig cfg;
  cfg.bandwidth = 2.5;
  cfg.memory = 64;
  const std::string text = GraphToJson(g, cfg);
  const GraphDocument doc = ParseGraphJson(text);
  EXPECT_EQ(GraphToJson(doc.graph, doc.platform), text);
  EXPECT_EQ(doc.platform.bandwidth, 2.5);
  EXPECT_EQ(doc.platform.memory, 64);

  const GraphDocument minimal = ParseGraphJson(
      R"({"name": "m", "nodes": [{"work": 1, "size_param": 0, "size_out": 2}], "edges": []})");
  EXPECT_EQ(minimal.platform.bandwidth, 1.0);
  EXPECT_TRUE(std::isinf(minimal.platform.memory));
  EXPECT_EQ(minimal.graph.node(0).id, "0");
}

TEST(GraphJson, RejectsBadInput) {
  EXPECT_THROW(ParseGraphJson("{"), ParseError);
  EXPECT_THROW(ParseGraphJson(R"({"nodes": [], "extra": 1})"), ParseError);
  EXPECT_THROW(
      ParseGraphJson(R"({"nodes": [{"work": 1, "size_param": 0, "size_out": 0, "x": 1}]})"),
      ParseError);
  EXPECT_THROW(ParseGraphJson(R"({"nodes": [{"work": 1, "size_param": 0, "size_out": 0},
                                            {"work": 1, "size_param": 0, "size_out": 0}],
                                  "edges": [[0, 1], [1, 0]]})"),
               ParseError);
}

}  // namespace
}  // namespace mtpp
