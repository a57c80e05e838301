#include "mtpp/datagen.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

#include "mtpp/csv.h"
#include "mtpp/errors.h"
#include "mtpp/graph_io.h"
#include "mtpp/rng.h"

namespace mtpp {

namespace {

constexpr BaseModel kModels[] = {BaseModel::kErdosRenyi, BaseModel::kBarabasiAlbert,
                                 BaseModel::kWattsStrogatz, BaseModel::kLayered};

// Independent RNG streams of one generated graph.
enum Stream : std::uint64_t { kSize, kBase, kOrientation, kTensors, kNoise, kWeights };

using UndirectedEdges = std::set<std::pair<NodeIndex, NodeIndex>>;

void AddUndirected(UndirectedEdges& edges, NodeIndex a, NodeIndex b) {
  if (a == b) return;
  edges.emplace(std::min(a, b), std::max(a, b));
}

UndirectedEdges ErdosRenyi(int n, double p, CounterRng& rng) {
  UndirectedEdges edges;
  for (NodeIndex a = 0; a < n; ++a) {
    for (NodeIndex b = a + 1; b < n; ++b) {
      if (rng.Uniform() < p) edges.emplace(a, b);
    }
  }
  return edges;
}

// Preferential attachment seeded with a clique on attach + 1 nodes.
UndirectedEdges BarabasiAlbert(int n, int attach, CounterRng& rng) {
  UndirectedEdges edges;
  std::vector<NodeIndex> endpoints;  // each node repeated once per incident edge
  const int seed_size = std::min(n, attach + 1);
  for (NodeIndex a = 0; a < seed_size; ++a) {
    for (NodeIndex b = a + 1; b < seed_size; ++b) {
      edges.emplace(a, b);
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }
  for (NodeIndex v = seed_size; v < n; ++v) {
    std::set<NodeIndex> targets;
    while (static_cast<int>(targets.size()) < std::min<int>(attach, v)) {
      const auto pick = rng.UniformInt(0, static_cast<std::int64_t>(endpoints.size()) - 1);
      targets.insert(endpoints[pick]);
    }
    for (NodeIndex t : targets) {
      edges.emplace(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return edges;
}

// Ring lattice with `degree` neighbours per node; each lattice edge is
// rewired to a uniform new endpoint with probability `rewire`.
UndirectedEdges WattsStrogatz(int n, int degree, double rewire, CounterRng& rng) {
  UndirectedEdges edges;
  const int half = std::min(degree / 2, (n - 1) / 2);
  for (NodeIndex a = 0; a < n; ++a) {
    for (int d = 1; d <= half; ++d) AddUndirected(edges, a, (a + d) % n);
  }
  if (n < 3) return edges;
  for (int d = 1; d <= half; ++d) {
    for (NodeIndex a = 0; a < n; ++a) {
      if (rng.Uniform() >= rewire) continue;
      const NodeIndex b = (a + d) % n;
      const std::pair<NodeIndex, NodeIndex> old{std::min(a, b), std::max(a, b)};
      if (!edges.contains(old)) continue;
      // Skip nodes already adjacent to everything.
      int degree_a = 0;
      for (const auto& e : edges) degree_a += (e.first == a || e.second == a);
      if (degree_a >= n - 1) continue;
      NodeIndex c;
      do {
        c = static_cast<NodeIndex>(rng.UniformInt(0, n - 1));
      } while (c == a || edges.contains({std::min(a, c), std::max(a, c)}));
      edges.erase(old);
      edges.emplace(std::min(a, c), std::max(a, c));
    }
  }
  return edges;
}

// Nodes split into about sqrt(n) consecutive layers; every node past the
// first layer gets one random parent in the previous layer, and every other
// pair of adjacent-layer nodes is joined with probability p.
std::vector<Edge> Layered(int n, double p, CounterRng& rng) {
  const int layers = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)))));
  std::vector<int> start(layers + 1);
  for (int l = 0; l <= layers; ++l) start[l] = static_cast<int>(static_cast<std::int64_t>(n) * l / layers);
  std::vector<Edge> edges;
  for (int l = 1; l < layers; ++l) {
    for (NodeIndex v = start[l]; v < start[l + 1]; ++v) {
      const auto parent = static_cast<NodeIndex>(rng.UniformInt(start[l - 1], start[l] - 1));
      for (NodeIndex u = start[l - 1]; u < start[l]; ++u) {
        if (u == parent || rng.Uniform() < p) edges.push_back({u, v});
      }
    }
  }
  return edges;
}

std::vector<NodeIndex> RandomPermutation(int n, CounterRng& rng) {
  std::vector<NodeIndex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.UniformInt(0, i)]);
  }
  return perm;
}

// Orients each pair from the endpoint ranked earlier in a random permutation.
std::vector<Edge> Orient(const UndirectedEdges& undirected, int n, CounterRng& rng) {
  const std::vector<NodeIndex> perm = RandomPermutation(n, rng);
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[perm[i]] = i;
  std::vector<Edge> edges;
  edges.reserve(undirected.size());
  for (const auto& [a, b] : undirected) {
    edges.push_back(rank[a] < rank[b] ? Edge{a, b} : Edge{b, a});
  }
  return edges;
}

std::string NodeId(NodeIndex v) { return "n" + std::to_string(v); }

}  // namespace

const char* BaseModelName(BaseModel model) {
  switch (model) {
    case BaseModel::kErdosRenyi:
      return "erdos-renyi";
    case BaseModel::kBarabasiAlbert:
      return "barabasi-albert";
    case BaseModel::kWattsStrogatz:
      return "watts-strogatz";
    case BaseModel::kLayered:
      return "layered";
  }
  return "?";
}

BaseModel ParseBaseModel(std::string_view text) {
  for (BaseModel m : kModels) {
    if (text == BaseModelName(m)) return m;
  }
  throw PreconditionError("unknown model '" + std::string(text) +
                          "'; valid models: erdos-renyi, barabasi-albert, watts-strogatz, layered");
}

void GenParams::RequireValid() const {
  if (n_lo < 1 || n_hi < n_lo) {
    throw PreconditionError("node range must satisfy 1 <= lo <= hi");
  }
  if (tensor_std < 0.0 || work_noise_std < 0.0) {
    throw PreconditionError("standard deviations must be >= 0");
  }
  if (er_edge_prob > 1.0 || !(ws_rewire >= 0.0 && ws_rewire <= 1.0) ||
      !(layered_edge_prob >= 0.0 && layered_edge_prob <= 1.0)) {
    throw PreconditionError("probabilities must lie in [0, 1]");
  }
  if (ba_attach < 1) throw PreconditionError("barabasi-albert attachment must be >= 1");
  if (ws_degree < 2 || ws_degree % 2 != 0) {
    throw PreconditionError("watts-strogatz degree must be even and >= 2");
  }
}

ComputationGraph generate_regal_like(const GenParams& p, std::string name) {
  p.RequireValid();
  CounterRng size_rng(p.seed, kSize);
  const int n = static_cast<int>(size_rng.UniformInt(p.n_lo, p.n_hi));

  CounterRng base_rng(p.seed, kBase);
  CounterRng orient_rng(p.seed, kOrientation);
  std::vector<Edge> edges;
  switch (p.model) {
    case BaseModel::kErdosRenyi: {
      const double prob = p.er_edge_prob >= 0.0
                              ? p.er_edge_prob
                              : std::min(1.0, n > 1 ? 2.0 * std::log(n) / n : 0.0);
      edges = Orient(ErdosRenyi(n, prob, base_rng), n, orient_rng);
      break;
    }
    case BaseModel::kBarabasiAlbert:
      edges = Orient(BarabasiAlbert(n, p.ba_attach, base_rng), n, orient_rng);
      break;
    case BaseModel::kWattsStrogatz:
      edges = Orient(WattsStrogatz(n, p.ws_degree, p.ws_rewire, base_rng), n, orient_rng);
      break;
    case BaseModel::kLayered:
      edges = Layered(n, p.layered_edge_prob, base_rng);
      break;
  }

  CounterRng tensor_rng(p.seed, kTensors);
  std::vector<NodeSpec> nodes(n);
  double total = 0.0;
  for (NodeIndex v = 0; v < n; ++v) {
    nodes[v].id = NodeId(v);
    nodes[v].size_out = std::max(1.0, tensor_rng.Normal(p.tensor_mean, p.tensor_std));
    total += nodes[v].size_out;
  }
  std::vector<std::vector<NodeIndex>> producers(n);
  for (const Edge& e : edges) producers[e.consumer].push_back(e.producer);
  CounterRng noise_rng(p.seed, kNoise);
  for (NodeIndex v = 0; v < n; ++v) {
    std::sort(producers[v].begin(), producers[v].end());
    producers[v].erase(std::unique(producers[v].begin(), producers[v].end()), producers[v].end());
    double io = nodes[v].size_out;
    for (NodeIndex u : producers[v]) io += nodes[u].size_out;
    const double r = noise_rng.Normal(0.0, p.work_noise_std);
    nodes[v].work = std::max(0.0, io + r * total);
  }
  if (name.empty()) {
    name = std::string("regal_") + BaseModelName(p.model) + "_" + std::to_string(p.seed);
  }
  return ComputationGraph(std::move(name), std::move(nodes), std::move(edges));
}

ComputationGraph generate_small_random_dag(int n, double edge_prob, const WeightRanges& w,
                                           std::uint64_t seed) {
  if (n < 0 || n > 16) throw PreconditionError("generate_small_random_dag: n must be in [0, 16]");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw PreconditionError("generate_small_random_dag: edge_prob must lie in [0, 1]");
  }
  if (w.work_lo > w.work_hi || w.param_lo > w.param_hi || w.size_lo > w.size_hi ||
      w.work_lo < 0 || w.param_lo < 0 || w.size_lo < 0) {
    throw PreconditionError("generate_small_random_dag: invalid weight range");
  }
  CounterRng base_rng(seed, kBase);
  CounterRng orient_rng(seed, kOrientation);
  UndirectedEdges undirected;
  for (NodeIndex a = 0; a < n; ++a) {
    for (NodeIndex b = a + 1; b < n; ++b) {
      if (base_rng.Uniform() < edge_prob) undirected.emplace(a, b);
    }
  }
  std::vector<Edge> edges = Orient(undirected, n, orient_rng);
  CounterRng weight_rng(seed, kWeights);
  std::vector<NodeSpec> nodes(n);
  for (NodeIndex v = 0; v < n; ++v) {
    nodes[v].id = NodeId(v);
    nodes[v].work = static_cast<double>(weight_rng.UniformInt(w.work_lo, w.work_hi));
    nodes[v].size_param = static_cast<double>(weight_rng.UniformInt(w.param_lo, w.param_hi));
    nodes[v].size_out = static_cast<double>(weight_rng.UniformInt(w.size_lo, w.size_hi));
  }
  return ComputationGraph("dag_" + std::to_string(seed), std::move(nodes), std::move(edges));
}

HardInstance make_hard_instance(int k, double eps, bool with_edge) {
  if (k < 1) throw PreconditionError("make_hard_instance: k must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("make_hard_instance: eps must lie in (0, 1)");
  std::vector<NodeSpec> nodes(2 * k);
  for (int i = 0; i < 2 * k; ++i) {
    nodes[i].id = NodeId(i);
    nodes[i].work = i < k ? 1.0 - eps : eps;
  }
  std::vector<Edge> edges;
  if (with_edge) {
    nodes[0].size_out = 10.0 * k;
    edges.push_back({0, k});
  }
  std::string name = "hard_k" + std::to_string(k) + (with_edge ? "" : "_noedge");
  ComputationGraph g(std::move(name), std::move(nodes), std::move(edges));
  std::vector<NodeIndex> perm;
  for (int i = 0; i < k; ++i) perm.push_back(i);
  for (int i = 2 * k - 1; i >= k; --i) perm.push_back(i);
  TopologicalOrder order = TopologicalOrder::FromPermutation(g, perm);
  return {std::move(g), std::move(order)};
}

std::vector<BatchEntry> generate_batch(const GenParams& p, int count,
                                       const std::filesystem::path& out_dir,
                                       const std::string& prefix, int jobs) {
  p.RequireValid();
  if (count < 0) throw PreconditionError("count must be >= 0");
  if (jobs < 1) throw PreconditionError("jobs must be >= 1");
  std::filesystem::create_directories(out_dir);

  std::vector<BatchEntry> entries(count);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        GenParams q = p;
        q.seed = p.seed + static_cast<std::uint64_t>(i);
        const std::string file = prefix + "_" + std::to_string(i) + ".json";
        const ComputationGraph g = generate_regal_like(q, prefix + "_" + std::to_string(i));
        WriteGraphFile(out_dir / file, g, PlatformConfig{});
        entries[i] = {file, g.num_nodes(), g.num_edges(), q.seed};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> threads;
    for (int t = 1; t < std::min(jobs, count); ++t) threads.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::string manifest = CsvLine({"file", "n", "m", "seed"});
  for (const BatchEntry& e : entries) {
    manifest += CsvLine({e.file, std::to_string(e.n), std::to_string(e.m), std::to_string(e.seed)});
  }
  WriteTextFile(out_dir / "manifest.csv", manifest);
  return entries;
}

}  // namespace mtpp
