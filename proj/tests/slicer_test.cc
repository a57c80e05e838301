#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mtpp/bounds.h"
#include "mtpp/datagen.h"
#include "mtpp/errors.h"
#include "mtpp/rng.h"
#include "mtpp/slicer.h"
#include "test_util.h"

namespace mtpp {
namespace {

using testing::BruteForceSlice;
using testing::Chain;
using testing::ForEachTopologicalOrder;
using testing::MakeGraph;
using testing::RandomDag;
using testing::RandomOrder;
using testing::RandomSmallDag;

std::vector<NodeIndex> Perm(const TopologicalOrder& order) { return order.perm(); }

TEST(Kahn, ChainHasOneOrder) {
  const ComputationGraph g = Chain({1, 1, 1}, {1, 1, 0});
  for (const std::vector<double>& x :
       {std::vector<double>{0.1, 0.5, 0.9}, std::vector<double>{0.9, 0.1, 0.0}}) {
    EXPECT_EQ(Perm(kahn_with_priorities(g, x)), (std::vector<NodeIndex>{0, 1, 2}));
  }
}

TEST(Kahn, IsolatedNodesByPriority) {
  const ComputationGraph g = MakeGraph({{1, 0, 0}, {1, 0, 0}}, {});
  EXPECT_EQ(Perm(kahn_with_priorities(g, std::vector<double>{0.1, 0.9})),
            (std::vector<NodeIndex>{1, 0}));
}

TEST(Kahn, EqualPrioritiesGoToSmallerIndex) {
  const ComputationGraph g = MakeGraph({{1, 0, 0}, {1, 0, 0}, {1, 0, 0}}, {});
  EXPECT_EQ(Perm(kahn_with_priorities(g, std::vector<double>{0.5, 0.5, 0.5})),
            (std::vector<NodeIndex>{0, 1, 2}));
}

TEST(Kahn, AntichainSortsByDescendingPriority) {
  const ComputationGraph g = MakeGraph({{1, 0, 0}, {1, 0, 0}, {1, 0, 0}, {1, 0, 0}, {1, 0, 0}}, {});
  CounterRng rng(9, 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(5);
    for (double& v : x) v = rng.Uniform();
    std::vector<NodeIndex> expected(5);
    std::iota(expected.begin(), expected.end(), 0);
    std::stable_sort(expected.begin(), expected.end(),
                     [&](NodeIndex a, NodeIndex b) { return x[a] > x[b]; });
    EXPECT_EQ(Perm(kahn_with_priorities(g, x)), expected);
  }
}

TEST(Kahn, InvariantUnderMonotoneTransform) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ComputationGraph g = RandomDag(seed, 15, 0.2);
    CounterRng rng(seed, 1);
    std::vector<double> x(15), y(15), z(15);
    for (int i = 0; i < 15; ++i) {
      x[i] = rng.Uniform();
      y[i] = std::exp(3.0 * x[i]) - 7.0;
      z[i] = x[i] * x[i] * x[i] + 2.0 * x[i];
    }
    const auto a = kahn_with_priorities(g, x);
    EXPECT_EQ(a, kahn_with_priorities(g, y));
    EXPECT_EQ(a, kahn_with_priorities(g, z));
  }
}

TEST(Kahn, RejectsBadInput) {
  const ComputationGraph cyclic = MakeGraph({{1, 0, 1}, {1, 0, 1}}, {{0, 1}, {1, 0}});
  EXPECT_THROW(kahn_with_priorities(cyclic, std::vector<double>{0, 0}), PreconditionError);
  const ComputationGraph g = MakeGraph({{1, 0, 0}, {1, 0, 0}}, {});
  EXPECT_THROW(kahn_with_priorities(g, std::vector<double>{0}), PreconditionError);
  EXPECT_THROW(kahn_with_priorities(g, std::vector<double>{0, NAN}), PreconditionError);
}

TEST(SliceGraph, SingleBlockIsWholeCost) {
  const ComputationGraph g = RandomDag(4, 10, 0.3);
  const TopologicalOrder order = RandomOrder(g, 4);
  const Segmentation s = slice_graph(g, PlatformConfig{}, 1, order);
  EXPECT_TRUE(s.cut_points.empty());
  EXPECT_EQ(s.value, block_cost(g, PlatformConfig{}, order.perm()).total);
}

TEST(SliceGraph, ThreeChainByHand) {
  const ComputationGraph g = Chain({1, 2, 3}, {0, 0, 0});
  const TopologicalOrder order = TopologicalOrder::FromPermutation(g, {0, 1, 2});
  const Segmentation s = slice_graph(g, PlatformConfig{}, 2, order);
  EXPECT_EQ(s.value, 3.0);
  EXPECT_EQ(s.cut_points, (std::vector<int>{2}));
}

TEST(SliceGraph, TieBreakFewestBlocksThenSmallestCuts) {
  // Works (3, 1, 1, 1): one cut after position 1 already reaches 3.
  const ComputationGraph g = Chain({3, 1, 1, 1}, {0, 0, 0, 0});
  const TopologicalOrder order = TopologicalOrder::FromPermutation(g, {0, 1, 2, 3});
  const Segmentation s = slice_graph(g, PlatformConfig{}, 4, order);
  EXPECT_EQ(s.value, 3.0);
  EXPECT_EQ(s.cut_points, (std::vector<int>{1}));

  // Five equal works with k = 3: value 2 needs two cuts; {1, 3} is smallest.
  const ComputationGraph flat = Chain({1, 1, 1, 1, 1}, {0, 0, 0, 0, 0});
  const Segmentation t = slice_graph(flat, PlatformConfig{}, 3,
                                     TopologicalOrder::FromPermutation(flat, {0, 1, 2, 3, 4}));
  EXPECT_EQ(t.value, 2.0);
  EXPECT_EQ(t.cut_points, (std::vector<int>{1, 3}));
}

TEST(SliceGraph, HardInstanceAdversarialOrder) {
  const HardInstance h = make_hard_instance(2, 0.1, true);
  EXPECT_EQ(Perm(h.adversarial_order), (std::vector<NodeIndex>{0, 1, 3, 2}));
  const Segmentation s = slice_graph(h.graph, PlatformConfig{}, 2, h.adversarial_order);
  EXPECT_NEAR(s.value, 2.0, 1e-12);
  EXPECT_NEAR(solve_small_exact(h.graph, PlatformConfig{}, 2).opt, 1.0, 1e-12);
}

TEST(SliceGraph, MatchesSegmentationEnumeration) {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const ComputationGraph g = RandomSmallDag(seed, 1, 12);
    const TopologicalOrder order = RandomOrder(g, seed);
    PlatformConfig cfg;
    cfg.bandwidth = 1.0 + static_cast<double>(seed % 2);
    for (int k = 1; k <= 4; ++k) {
      const Segmentation s = slice_graph(g, cfg, k, order);
      ASSERT_EQ(s.value, BruteForceSlice(g, cfg, k, order)) << "seed " << seed << " k " << k;
      ASSERT_LE(s.num_blocks(), k);
      // The cuts achieve the reported value.
      double worst = 0.0;
      int start = 1;
      std::vector<int> ends = s.cut_points;
      ends.push_back(g.num_nodes());
      for (int end : ends) {
        ASSERT_LT(start - 1, end);
        worst = std::max(worst, block_cost(g, cfg, order.slice(start, end)).total);
        start = end + 1;
      }
      ASSERT_NEAR(worst, s.value, 1e-9 * std::max(1.0, worst));
    }
  }
}

TEST(SliceGraph, NonIncreasingInK) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const ComputationGraph g = RandomDag(seed, 30, 0.15);
    const TopologicalOrder order = RandomOrder(g, seed);
    const auto costs = SegmentCostStructure::InitFast(g, PlatformConfig{}, order);
    const auto values = slice_values_up_to(costs, 10);
    for (int k = 1; k <= 10; ++k) {
      EXPECT_EQ(values[k - 1], slice_graph(costs, k).value);
      if (k > 1) {
        EXPECT_LE(values[k - 1], values[k - 2]);
      }
    }
  }
}

TEST(SliceGraph, RejectsBadK) {
  const ComputationGraph g = Chain({1, 1}, {0, 0});
  EXPECT_THROW(slice_graph(g, PlatformConfig{}, 0, TopologicalOrder::FromPermutation(g, {0, 1})),
               PreconditionError);
}

TEST(SliceGraph, BestOrderReachesOpt) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const ComputationGraph g = RandomSmallDag(seed + 500, 1, 7);
    for (int k = 2; k <= 3; ++k) {
      double best = 1e300;
      ForEachTopologicalOrder(g, [&](const std::vector<NodeIndex>& perm) {
        best = std::min(best, slice_graph(g, PlatformConfig{}, k,
                                          TopologicalOrder::FromPermutation(g, perm))
                                  .value);
      });
      const double opt = solve_small_exact(g, PlatformConfig{}, k).opt;
      ASSERT_NEAR(best, opt, 1e-9 * std::max(1.0, opt)) << "seed " << seed << " k " << k;
    }
  }
}

// Priorities k - block(v) plus any within-block jitter keep every block
// contiguous, so the decoded order slices back to the optimum.
TEST(Decode, BlockPrioritiesRecoverOpt) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const ComputationGraph g = RandomSmallDag(seed + 900, 6, 6);
    const int k = 2 + static_cast<int>(seed % 2);
    const ExactSolution exact = solve_small_exact(g, PlatformConfig{}, k);
    CounterRng rng(seed, 2);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> x(g.num_nodes());
      for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
        const double jitter = trial == 0 ? 0.0 : 0.999 * rng.Uniform();
        x[v] = (k - exact.witness.block[v] + jitter) / (k + 1.0);
      }
      const auto [order, seg] = decode(g, PlatformConfig{}, k, x);
      for (int i = 2; i <= g.num_nodes(); ++i) {
        ASSERT_LE(exact.witness.block[order.node_at(i - 1)], exact.witness.block[order.node_at(i)]);
      }
      ASSERT_NEAR(seg.value, exact.opt, 1e-9 * std::max(1.0, exact.opt));
      ASSERT_EQ(decode_value(g, PlatformConfig{}, k, x), seg.value);
    }
  }
}

TEST(Decode, SingleNodeAndDeterminism) {
  const ComputationGraph one = MakeGraph({{4, 0, 3}}, {});
  EXPECT_EQ(decode(one, PlatformConfig{}, 3, std::vector<double>{0.3}).second.value, 4.0);

  const ComputationGraph g = RandomDag(12, 25, 0.2);
  CounterRng rng(12, 0);
  std::vector<double> x(25);
  for (double& v : x) v = rng.Uniform();
  const auto a = decode(g, PlatformConfig{}, 4, x);
  const auto b = decode(g, PlatformConfig{}, 4, x);
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
  EXPECT_EQ(decode_value(g, PlatformConfig{}, 4, x), a.second.value);
}

TEST(SegmentationToPartition, BlocksFollowOrder) {
  const ComputationGraph g = Chain({1, 2, 3, 4}, {1, 1, 1, 0});
  const TopologicalOrder order = TopologicalOrder::FromPermutation(g, {0, 1, 2, 3});
  const Segmentation s = slice_graph(g, PlatformConfig{}, 3, order);
  const Partition p = SegmentationToPartition(order, s, 3);
  EXPECT_EQ(p.k, 3);
  EXPECT_TRUE(quotient_is_acyclic(g, p));
  EXPECT_EQ(mtpp_objective(g, PlatformConfig{}, p), s.value);
}

}  // namespace
}  // namespace mtpp
