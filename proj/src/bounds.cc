#include "mtpp/bounds.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <queue>

#include "json.hpp"
#include "mtpp/csv.h"
#include "mtpp/errors.h"
#include "mtpp/graph_io.h"

namespace mtpp {

namespace {

constexpr std::array<BoundMethod, 4> kMethods = {BoundMethod::kSimple, BoundMethod::kBottleneck,
                                                 BoundMethod::kBottleneckGuess, BoundMethod::kExact};
constexpr std::array<BoundSource, 3> kSources = {BoundSource::kOracle, BoundSource::kExternalSolver,
                                                 BoundSource::kFormula};

}  // namespace

const char* BoundMethodName(BoundMethod method) {
  switch (method) {
    case BoundMethod::kSimple:
      return "simple";
    case BoundMethod::kBottleneck:
      return "bottleneck";
    case BoundMethod::kBottleneckGuess:
      return "bottleneck-guess";
    case BoundMethod::kExact:
      return "exact";
  }
  return "?";
}

BoundMethod ParseBoundMethod(std::string_view text) {
  for (BoundMethod m : kMethods) {
    if (text == BoundMethodName(m)) return m;
  }
  throw ParseError("unknown bound method '" + std::string(text) +
                   "' (expected simple, bottleneck, bottleneck-guess or exact)");
}

const char* BoundSourceName(BoundSource source) {
  switch (source) {
    case BoundSource::kOracle:
      return "oracle";
    case BoundSource::kExternalSolver:
      return "external-solver";
    case BoundSource::kFormula:
      return "formula";
  }
  return "?";
}

BoundSource ParseBoundSource(std::string_view text) {
  for (BoundSource s : kSources) {
    if (text == BoundSourceName(s)) return s;
  }
  throw ParseError("unknown bound source '" + std::string(text) +
                   "' (expected oracle, external-solver or formula)");
}

double simple_lower_bound(const ComputationGraph& g, int k) {
  if (k < 1) throw PreconditionError("simple_lower_bound: k must be >= 1");
  return std::max(g.max_work(), g.total_work() / k);
}

BoundCertificate simple_certificate(const ComputationGraph& g, int k) {
  BoundCertificate c;
  c.method = BoundMethod::kSimple;
  c.value = simple_lower_bound(g, k);
  c.k = k;
  c.graph = g.name();
  c.source = BoundSource::kFormula;
  return c;
}

// ---------------------------------------------------------------------------
// MIP construction

namespace {

std::string ModelName(const ComputationGraph& g, const std::string& suffix) {
  return g.name().empty() ? suffix : g.name() + "_" + suffix;
}

// Shared variables and row families of the block-assignment models with
// `blocks` blocks. Cost variables exist only for blocks listed in `costed`.
class BlockModelBuilder {
 public:
  BlockModelBuilder(const ComputationGraph& g, const PlatformConfig& cfg, int blocks,
                    std::vector<int> costed, std::string name)
      : g_(g), cfg_(cfg), blocks_(blocks), costed_(std::move(costed)), model_(std::move(name)) {
    const NodeIndex n = g.num_nodes();
    y_.assign(static_cast<std::size_t>(n) * std::max(blocks - 1, 0), -1);
    for (NodeIndex v = 0; v < n; ++v) {
      for (int b = 1; b < blocks; ++b) {
        y_[Slot(v, b)] = model_.AddVariable(VarName("y", v, b), VarKind::kBinary, 0.0, 1.0);
      }
    }
    c_.assign(static_cast<std::size_t>(n) * (blocks + 1), -1);
    for (NodeIndex u = 0; u < n; ++u) {
      if (g.successors(u).empty()) continue;
      for (int b : costed_) {
        c_[static_cast<std::size_t>(u) * (blocks + 1) + b] =
            model_.AddVariable(VarName("c", u, b), VarKind::kContinuous);
      }
    }
    block_.assign(blocks + 1, -1);
    for (int b : costed_) {
      block_[b] = model_.AddVariable("block_" + std::to_string(b), VarKind::kContinuous);
    }
  }

  MipModel& model() { return model_; }
  int block_var(int b) const { return block_[b]; }
  int y_var(NodeIndex v, int b) const { return y_[Slot(v, b)]; }

  // y_vb with the constants y_v0 = 0 and y_v(blocks) = 1 substituted.
  LinearExpr Y(NodeIndex v, int b) const {
    if (b <= 0) return 0.0;
    if (b >= blocks_) return 1.0;
    return LinearExpr::Var(y_[Slot(v, b)]);
  }
  LinearExpr X(NodeIndex v, int b) const { return Y(v, b) - Y(v, b - 1); }
  LinearExpr C(NodeIndex u, int b) const {
    return LinearExpr::Var(c_[static_cast<std::size_t>(u) * (blocks_ + 1) + b]);
  }

  void AddBlockDefinitions() {
    for (int b : costed_) {
      LinearExpr cost;
      for (NodeIndex v = 0; v < g_.num_nodes(); ++v) cost += g_.node(v).work * X(v, b);
      for (NodeIndex u = 0; u < g_.num_nodes(); ++u) {
        if (g_.successors(u).empty()) continue;
        cost += (g_.node(u).size_out / cfg_.bandwidth) * C(u, b);
      }
      model_.AddConstraint("block_def_b" + std::to_string(b), LinearExpr::Var(block_[b]),
                           Sense::kEqual, cost);
    }
  }

  void AddDagRows() {
    const auto& edges = g_.edges();
    for (int b = 1; b < blocks_; ++b) {
      for (std::size_t e = 0; e < edges.size(); ++e) {
        model_.AddConstraint(EdgeRowName("dag", e, b), Y(edges[e].producer, b),
                             Sense::kGreaterEqual, Y(edges[e].consumer, b));
      }
    }
  }

  void AddCutRows() {
    const auto& edges = g_.edges();
    for (int b : costed_) {
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [u, v] = edges[e];
        model_.AddConstraint(EdgeRowName("cut_in", e, b), C(u, b), Sense::kGreaterEqual,
                             Y(u, b - 1) + X(v, b) - 1.0);
      }
    }
    for (int b : costed_) {
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [u, v] = edges[e];
        model_.AddConstraint(EdgeRowName("cut_out", e, b), C(u, b), Sense::kGreaterEqual,
                             X(u, b) - Y(v, b));
      }
    }
  }

  void AddMonotonicity() {
    for (NodeIndex v = 0; v < g_.num_nodes(); ++v) {
      for (int b = 2; b < blocks_; ++b) {
        model_.AddConstraint(VarName("mono", v, b), Y(v, b), Sense::kGreaterEqual, Y(v, b - 1));
      }
    }
  }

  // Work of the middle superblock must reach L.
  void AddWorkFloor(double L) {
    LinearExpr work;
    for (NodeIndex v = 0; v < g_.num_nodes(); ++v) work += g_.node(v).work * X(v, 2);
    model_.AddConstraint("work_floor", work, Sense::kGreaterEqual, L);
  }

 private:
  std::size_t Slot(NodeIndex v, int b) const {
    return static_cast<std::size_t>(v) * (blocks_ - 1) + (b - 1);
  }
  static std::string VarName(const char* prefix, NodeIndex v, int b) {
    return std::string(prefix) + "_v" + std::to_string(v) + "_b" + std::to_string(b);
  }
  static std::string EdgeRowName(const char* prefix, std::size_t e, int b) {
    return std::string(prefix) + "_e" + std::to_string(e) + "_b" + std::to_string(b);
  }

  const ComputationGraph& g_;
  const PlatformConfig& cfg_;
  int blocks_;
  std::vector<int> costed_;
  MipModel model_;
  std::vector<int> y_;
  std::vector<int> c_;
  std::vector<int> block_;
};

void RequireModelInputs(const ComputationGraph& g, const PlatformConfig& cfg, int k) {
  g.RequireValid();
  cfg.RequireValid();
  if (k < 1) throw PreconditionError("k must be >= 1, got " + std::to_string(k));
}

}  // namespace

MipModel build_exact_mip(const ComputationGraph& g, const PlatformConfig& cfg, int k) {
  RequireModelInputs(g, cfg, k);
  std::vector<int> all(k);
  for (int b = 1; b <= k; ++b) all[b - 1] = b;
  BlockModelBuilder builder(g, cfg, k, all, ModelName(g, "exact_k" + std::to_string(k)));
  MipModel& model = builder.model();
  const int bottleneck = model.AddVariable("bottleneck", VarKind::kContinuous);
  for (int b = 1; b <= k; ++b) {
    model.AddConstraint("bottleneck_b" + std::to_string(b), LinearExpr::Var(bottleneck),
                        Sense::kGreaterEqual, LinearExpr::Var(builder.block_var(b)));
  }
  builder.AddBlockDefinitions();
  builder.AddDagRows();
  builder.AddCutRows();
  builder.AddMonotonicity();
  model.SetObjective(LinearExpr::Var(bottleneck));
  return std::move(model);
}

MipModel build_bottleneck_mip(const ComputationGraph& g, const PlatformConfig& cfg, int k) {
  RequireModelInputs(g, cfg, k);
  BlockModelBuilder builder(g, cfg, 3, {2}, ModelName(g, "bottleneck_k" + std::to_string(k)));
  MipModel& model = builder.model();
  builder.AddBlockDefinitions();
  builder.AddDagRows();
  builder.AddCutRows();
  builder.AddMonotonicity();
  builder.AddWorkFloor(simple_lower_bound(g, k));
  model.SetObjective(LinearExpr::Var(builder.block_var(2)));
  return std::move(model);
}

MipModel build_guess_mip(const ComputationGraph& g, const PlatformConfig& cfg, int k, int j) {
  RequireModelInputs(g, cfg, k);
  if (j < 1 || j > k) {
    throw PreconditionError("guess index j=" + std::to_string(j) + " outside [1, " +
                            std::to_string(k) + "]");
  }
  BlockModelBuilder builder(
      g, cfg, 3, {1, 2, 3},
      ModelName(g, "guess_k" + std::to_string(k) + "_j" + std::to_string(j)));
  MipModel& model = builder.model();
  const int bottleneck = model.AddVariable("bottleneck", VarKind::kContinuous);
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
    if (j == 1) model.FixVariable(builder.y_var(v, 1), 0.0);
    if (j == k) model.FixVariable(builder.y_var(v, 2), 1.0);
  }
  const LinearExpr z = LinearExpr::Var(bottleneck);
  model.AddConstraint("bottleneck_b2", z, Sense::kGreaterEqual,
                      LinearExpr::Var(builder.block_var(2)));
  if (j > 1) {
    model.AddConstraint("average_b1", static_cast<double>(j - 1) * z, Sense::kGreaterEqual,
                        LinearExpr::Var(builder.block_var(1)));
  }
  if (j < k) {
    model.AddConstraint("average_b3", static_cast<double>(k - j) * z, Sense::kGreaterEqual,
                        LinearExpr::Var(builder.block_var(3)));
  }
  builder.AddBlockDefinitions();
  builder.AddDagRows();
  builder.AddCutRows();
  builder.AddMonotonicity();
  builder.AddWorkFloor(simple_lower_bound(g, k));
  model.SetObjective(z);
  return std::move(model);
}

// ---------------------------------------------------------------------------
// Oracles

namespace {

void RequireGuard(const char* what, int base, NodeIndex n, double guard) {
  const double log_space = static_cast<double>(n) * std::log(static_cast<double>(base));
  if (log_space > std::log(guard) + 1e-12) {
    throw InstanceTooLargeError(std::string(what) + ": search space " + std::to_string(base) +
                                "^" + std::to_string(n) + " exceeds the guard of " +
                                std::to_string(static_cast<std::int64_t>(guard)) +
                                " assignments");
  }
}

std::vector<NodeIndex> TopologicalSequence(const ComputationGraph& g) {
  const NodeIndex n = g.num_nodes();
  std::vector<int> indegree(n);
  for (NodeIndex v = 0; v < n; ++v) indegree[v] = static_cast<int>(g.predecessors(v).size());
  std::priority_queue<NodeIndex, std::vector<NodeIndex>, std::greater<>> ready;
  for (NodeIndex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<NodeIndex> seq;
  seq.reserve(n);
  while (!ready.empty()) {
    const NodeIndex v = ready.top();
    ready.pop();
    seq.push_back(v);
    for (NodeIndex w : g.successors(v)) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  return seq;
}

// Renumbers the used blocks of an acyclic-quotient labeling 1..c in
// topological order of the quotient (smallest old label first on ties).
Partition NumberBlocksTopologically(const ComputationGraph& g, const std::vector<int>& label,
                                    int k) {
  int c = 0;
  for (int b : label) c = std::max(c, b);
  std::vector<std::vector<int>> out(c + 1);
  std::vector<int> indegree(c + 1, 0);
  for (const Edge& e : g.edges()) {
    const int a = label[e.producer];
    const int b = label[e.consumer];
    if (a != b) {
      out[a].push_back(b);
      ++indegree[b];
    }
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int b = 1; b <= c; ++b) {
    if (indegree[b] == 0) ready.push(b);
  }
  std::vector<int> renumber(c + 1, 0);
  int next = 1;
  while (!ready.empty()) {
    const int b = ready.top();
    ready.pop();
    renumber[b] = next++;
    for (int d : out[b]) {
      if (--indegree[d] == 0) ready.push(d);
    }
  }
  Partition p;
  p.k = k;
  p.block.resize(label.size());
  for (std::size_t v = 0; v < label.size(); ++v) p.block[v] = renumber[label[v]];
  return p;
}

// Branch and bound over set partitions in restricted-growth form along a
// topological sequence. Partial block costs (work plus tensors already known
// to be cut) never decrease as more nodes are placed, so they bound every
// completion from below.
class ExactSearch {
 public:
  ExactSearch(const ComputationGraph& g, const PlatformConfig& cfg, int k)
      : g_(g),
        cfg_(cfg),
        k_(k),
        max_blocks_(std::min<int>(k, g.num_nodes())),
        seq_(TopologicalSequence(g)),
        label_(g.num_nodes(), 0),
        charged_out_(g.num_nodes(), 0),
        charged_in_(static_cast<std::size_t>(g.num_nodes()) * (max_blocks_ + 1), 0),
        cost_(g.num_nodes() + 1, std::vector<double>(max_blocks_ + 1, 0.0)),
        floor_(simple_lower_bound(g, k)) {}

  ExactSolution Run() {
    Dfs(0, 0);
    return {best_, NumberBlocksTopologically(g_, best_label_, k_)};
  }

 private:
  void Dfs(int depth, int used) {
    if (done_) return;
    if (depth == static_cast<int>(seq_.size())) {
      Leaf();
      return;
    }
    const NodeIndex x = seq_[depth];
    const double s_unit = 1.0 / cfg_.bandwidth;
    const int top = std::min(used + 1, max_blocks_);
    for (int b = top; b >= 1 && !done_; --b) {
      std::vector<double>& cost = cost_[depth + 1];
      cost = cost_[depth];
      cost[b] += g_.node(x).work;
      std::vector<std::size_t> set_in;
      std::vector<NodeIndex> set_out;
      for (NodeIndex u : g_.predecessors(x)) {
        const int a = label_[u];
        if (a == b) continue;
        const double io = g_.node(u).size_out * s_unit;
        if (!charged_out_[u]) {
          charged_out_[u] = 1;
          set_out.push_back(u);
          cost[a] += io;
        }
        const std::size_t slot = static_cast<std::size_t>(u) * (max_blocks_ + 1) + b;
        if (!charged_in_[slot]) {
          charged_in_[slot] = 1;
          set_in.push_back(slot);
          cost[b] += io;
        }
      }
      double lower = floor_;
      for (int d = 1; d <= std::max(used, b); ++d) lower = std::max(lower, cost[d]);
      if (lower < best_) {
        label_[x] = b;
        Dfs(depth + 1, std::max(used, b));
        label_[x] = 0;
      }
      for (NodeIndex u : set_out) charged_out_[u] = 0;
      for (std::size_t slot : set_in) charged_in_[slot] = 0;
    }
  }

  void Leaf() {
    Partition p;
    p.k = k_;
    p.block = label_;
    if (!quotient_is_acyclic(g_, p)) return;
    double value = 0.0;
    for (const BlockCostBreakdown& c : partition_block_costs(g_, cfg_, p)) {
      value = std::max(value, c.total);
    }
    if (value < best_) {
      best_ = value;
      best_label_ = label_;
      if (best_ <= floor_ * (1.0 + 1e-12)) done_ = true;
    }
  }

  const ComputationGraph& g_;
  const PlatformConfig& cfg_;
  int k_;
  int max_blocks_;
  std::vector<NodeIndex> seq_;
  std::vector<int> label_;
  std::vector<char> charged_out_;
  std::vector<char> charged_in_;
  std::vector<std::vector<double>> cost_;
  double floor_;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<int> best_label_;
  bool done_ = false;
};

struct ThreeBlockCosts {
  std::array<double, 4> cost{};  // index 1..3
  double middle_work = 0.0;
  bool used_first = false;
  bool used_last = false;
};

ThreeBlockCosts EvaluateThreeBlocks(const ComputationGraph& g, const PlatformConfig& cfg,
                                    const std::vector<int>& label) {
  ThreeBlockCosts r;
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
    const int a = label[v];
    r.cost[a] += g.node(v).work;
    if (a == 1) r.used_first = true;
    if (a == 3) r.used_last = true;
    if (a == 2) r.middle_work += g.node(v).work;
    unsigned mask = 0;
    for (NodeIndex w : g.successors(v)) mask |= 1u << label[w];
    mask &= ~(1u << a);
    if (mask == 0) continue;
    const double io = g.node(v).size_out / cfg.bandwidth;
    r.cost[a] += io;
    for (int b = 1; b <= 3; ++b) {
      if (mask & (1u << b)) r.cost[b] += io;
    }
  }
  return r;
}

// Calls visit(label) for every assignment to superblocks 1..3 in which every
// edge goes to the same or a later superblock.
template <typename Visit>
void ForEachMonotoneAssignment(const ComputationGraph& g, Visit&& visit) {
  const std::vector<NodeIndex> seq = TopologicalSequence(g);
  std::vector<int> label(g.num_nodes(), 0);
  std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
    if (depth == seq.size()) {
      visit(label);
      return;
    }
    const NodeIndex x = seq[depth];
    int lo = 1;
    for (NodeIndex u : g.predecessors(x)) lo = std::max(lo, label[u]);
    for (int b = lo; b <= 3; ++b) {
      label[x] = b;
      dfs(depth + 1);
    }
    label[x] = 0;
  };
  dfs(0);
}

bool MeetsFloor(double work, double L) { return work >= L - 1e-12 * std::max(1.0, L); }

BoundCertificate OracleCertificate(const ComputationGraph& g, BoundMethod method, int k,
                                   double value) {
  BoundCertificate c;
  c.method = method;
  c.value = value;
  c.k = k;
  c.graph = g.name();
  c.source = BoundSource::kOracle;
  c.status = "optimal";
  return c;
}

}  // namespace

ExactSolution solve_small_exact(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                                double guard) {
  RequireModelInputs(g, cfg, k);
  RequireGuard("solve_small_exact", k, g.num_nodes(), guard);
  if (g.num_nodes() == 0) return {0.0, Partition{k, {}}};
  return ExactSearch(g, cfg, k).Run();
}

BoundCertificate exact_certificate(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                                   double guard) {
  return OracleCertificate(g, BoundMethod::kExact, k, solve_small_exact(g, cfg, k, guard).opt);
}

BoundCertificate solve_bottleneck_oracle(const ComputationGraph& g, const PlatformConfig& cfg,
                                         int k, double guard) {
  RequireModelInputs(g, cfg, k);
  RequireGuard("solve_bottleneck_oracle", 3, g.num_nodes(), guard);
  const double L = simple_lower_bound(g, k);
  double best = std::numeric_limits<double>::infinity();
  ForEachMonotoneAssignment(g, [&](const std::vector<int>& label) {
    const ThreeBlockCosts r = EvaluateThreeBlocks(g, cfg, label);
    if (MeetsFloor(r.middle_work, L)) best = std::min(best, r.cost[2]);
  });
  if (g.num_nodes() == 0) best = 0.0;
  return OracleCertificate(g, BoundMethod::kBottleneck, k, best);
}

BoundCertificate solve_guess_oracle(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                                    double guard) {
  RequireModelInputs(g, cfg, k);
  RequireGuard("solve_guess_oracle", 3, g.num_nodes(), guard);
  const double L = simple_lower_bound(g, k);
  std::vector<double> per_j(k, std::numeric_limits<double>::infinity());
  ForEachMonotoneAssignment(g, [&](const std::vector<int>& label) {
    const ThreeBlockCosts r = EvaluateThreeBlocks(g, cfg, label);
    if (!MeetsFloor(r.middle_work, L)) return;
    for (int j = 1; j <= k; ++j) {
      if (j == 1 && r.used_first) continue;
      if (j == k && r.used_last) continue;
      double value = r.cost[2];
      if (j > 1) value = std::max(value, r.cost[1] / (j - 1));
      if (j < k) value = std::max(value, r.cost[3] / (k - j));
      per_j[j - 1] = std::min(per_j[j - 1], value);
    }
  });
  if (g.num_nodes() == 0) std::fill(per_j.begin(), per_j.end(), 0.0);
  BoundCertificate c = OracleCertificate(g, BoundMethod::kBottleneckGuess, k,
                                         *std::min_element(per_j.begin(), per_j.end()));
  c.per_guess = std::move(per_j);
  return c;
}

// ---------------------------------------------------------------------------
// Certificate I/O

namespace {

const std::vector<std::string> kBoundsHeader = {"graph", "k", "method", "bound", "status"};

std::string FormatExact(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

}  // namespace

BoundsImport ParseBoundsCsv(const std::string& text) {
  const std::vector<CsvRecord> records = ParseCsv(text);
  BoundsImport result;
  if (records.empty()) return result;
  if (records.front().fields != kBoundsHeader) {
    throw ParseError("bounds CSV line " + std::to_string(records.front().line) +
                     ": expected header graph,k,method,bound,status");
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    const CsvRecord& rec = records[i];
    auto reject = [&](std::string reason) { result.rejected.push_back({rec.line, std::move(reason)}); };
    if (rec.fields.size() != kBoundsHeader.size()) {
      reject("expected 5 fields, found " + std::to_string(rec.fields.size()));
      continue;
    }
    BoundCertificate c;
    c.graph = rec.fields[0];
    c.method = ParseBoundMethod(rec.fields[2]);
    c.source = BoundSource::kExternalSolver;
    c.status = rec.fields[4];

    const std::string& k_text = rec.fields[1];
    const auto [k_end, k_err] = std::from_chars(k_text.data(), k_text.data() + k_text.size(), c.k);
    if (k_err != std::errc() || k_end != k_text.data() + k_text.size() || c.k < 1) {
      reject("invalid k '" + k_text + "'");
      continue;
    }
    const std::string& v_text = rec.fields[3];
    const auto [v_end, v_err] =
        std::from_chars(v_text.data(), v_text.data() + v_text.size(), c.value);
    if (v_err != std::errc() || v_end != v_text.data() + v_text.size() || !std::isfinite(c.value)) {
      reject("invalid bound '" + v_text + "'");
      continue;
    }
    if (c.value < 0.0) {
      reject("negative bound " + v_text);
      continue;
    }
    result.certificates.push_back(std::move(c));
  }
  return result;
}

BoundsImport import_external_bounds(const std::filesystem::path& path) {
  return ParseBoundsCsv(ReadTextFile(path));
}

std::string BoundsToCsv(std::span<const BoundCertificate> certificates) {
  std::string out = CsvLine(kBoundsHeader);
  for (const BoundCertificate& c : certificates) {
    out += CsvLine({c.graph, std::to_string(c.k), BoundMethodName(c.method), FormatExact(c.value),
                    c.status});
  }
  return out;
}

std::string CertificateToJson(const BoundCertificate& c) {
  nlohmann::ordered_json j;
  j["graph"] = c.graph;
  j["k"] = c.k;
  j["method"] = BoundMethodName(c.method);
  j["value"] = c.value;
  j["source"] = BoundSourceName(c.source);
  j["status"] = c.status;
  if (!c.per_guess.empty()) j["per_guess"] = c.per_guess;
  return j.dump(2) + "\n";
}

BoundCertificate CertificateFromJson(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    BoundCertificate c;
    c.graph = j.at("graph").get<std::string>();
    c.k = j.at("k").get<int>();
    c.method = ParseBoundMethod(j.at("method").get<std::string>());
    c.value = j.at("value").get<double>();
    c.source = ParseBoundSource(j.at("source").get<std::string>());
    c.status = j.value("status", std::string());
    if (j.contains("per_guess")) c.per_guess = j.at("per_guess").get<std::vector<double>>();
    if (c.k < 1 || !(c.value >= 0.0)) throw ParseError("certificate has k < 1 or negative value");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate JSON: ") + e.what());
  }
}

}  // namespace mtpp
