#include "mtpp/search.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "mtpp/errors.h"
#include "mtpp/graph_io.h"
#include "mtpp/rng.h"

namespace mtpp {

void BrkgaParams::RequireValid() const {
  if (population_size < 2) throw PreconditionError("BRKGA population_size must be >= 2");
  if (generations < 0) throw PreconditionError("BRKGA generations must be >= 0");
  if (!(elite_fraction > 0.0 && elite_fraction < 1.0)) {
    throw PreconditionError("BRKGA elite_fraction must be in (0, 1)");
  }
  if (!(mutant_fraction > 0.0 && mutant_fraction < 1.0)) {
    throw PreconditionError("BRKGA mutant_fraction must be in (0, 1)");
  }
  if (!(elite_fraction + mutant_fraction < 1.0)) {
    throw PreconditionError("BRKGA elite_fraction + mutant_fraction must be < 1");
  }
  if (!(elite_inherit_prob > 0.5 && elite_inherit_prob < 1.0)) {
    throw PreconditionError("BRKGA elite_inherit_prob must be in (0.5, 1)");
  }
  if (workers < 1) throw PreconditionError("BRKGA workers must be >= 1");
}

int BrkgaParams::num_elites() const {
  const int elites = static_cast<int>(elite_fraction * population_size);
  return std::clamp(elites, 1, population_size - 1);
}

int BrkgaParams::num_mutants() const {
  const int mutants = static_cast<int>(mutant_fraction * population_size);
  return std::min(mutants, population_size - num_elites());
}

BrkgaParams BrkgaParams::ForBudget(std::int64_t budget, std::uint64_t seed) {
  if (budget < 1) throw PreconditionError("search budget must be >= 1");
  BrkgaParams params;
  const auto side = static_cast<int>(std::llround(std::sqrt(static_cast<double>(budget))));
  params.population_size = std::max(2, side);
  params.generations = static_cast<int>(std::max<std::int64_t>(
      0, std::llround(static_cast<double>(budget) / params.population_size)));
  params.seed = seed;
  return params;
}

namespace {

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& value, int line) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const std::from_chars_result result = std::from_chars(first, last, out);
  if (result.ec != std::errc() || result.ptr != last) {
    throw ParseError("config line " + std::to_string(line) + ": bad value '" + value +
                     "' for " + key);
  }
  return out;
}

}  // namespace

BrkgaParams ParseBrkgaConfig(const std::string& text, BrkgaParams base) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = Trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(line) + ": expected key = value");
    }
    const std::string key = Trim(content.substr(0, eq));
    const std::string value = Trim(content.substr(eq + 1));
    if (key == "population_size") {
      base.population_size = ParseNumber<int>(key, value, line);
    } else if (key == "generations") {
      base.generations = ParseNumber<int>(key, value, line);
    } else if (key == "elite_fraction") {
      base.elite_fraction = ParseNumber<double>(key, value, line);
    } else if (key == "mutant_fraction") {
      base.mutant_fraction = ParseNumber<double>(key, value, line);
    } else if (key == "elite_inherit_prob") {
      base.elite_inherit_prob = ParseNumber<double>(key, value, line);
    } else if (key == "seed") {
      base.seed = ParseNumber<std::uint64_t>(key, value, line);
    } else if (key == "workers") {
      base.workers = ParseNumber<int>(key, value, line);
    } else {
      throw ParseError("config line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  return base;
}

BrkgaParams ReadBrkgaConfig(const std::filesystem::path& path, BrkgaParams base) {
  return ParseBrkgaConfig(ReadTextFile(path), base);
}

namespace {

using Chromosome = std::vector<double>;

void FillUniform(CounterRng& rng, Chromosome& genes) {
  for (double& x : genes) x = rng.Uniform();
}

// Evaluates fitness[i] for every i flagged in `todo`. Each slot is written by
// exactly one worker, so the result does not depend on the worker count.
void EvaluateAll(const std::vector<Chromosome>& population, const std::vector<char>& todo,
                 std::vector<double>& fitness, const FitnessFn& fn, int workers) {
  const int size = static_cast<int>(population.size());
  auto run = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      if (todo[i]) fitness[i] = fn(population[i]);
    }
  };
  if (workers <= 1 || size < 2) {
    run(0, size);
    return;
  }
  const int chunks = std::min(workers, size);
  std::vector<std::jthread> threads;
  threads.reserve(chunks);
  for (int c = 0; c < chunks; ++c) {
    threads.emplace_back(run, size * c / chunks, size * (c + 1) / chunks);
  }
}

}  // namespace

BrkgaTrace RunBrkga(int num_genes, const BrkgaParams& params, const FitnessFn& fitness) {
  params.RequireValid();
  const int pop = params.population_size;
  const int elites = params.num_elites();
  const int mutants = params.num_mutants();
  const auto stream = [&](int generation, int slot) {
    return CounterRng(params.seed, static_cast<std::uint64_t>(generation) * pop + slot);
  };

  std::vector<Chromosome> population(pop, Chromosome(num_genes));
  for (int i = 0; i < pop; ++i) {
    CounterRng rng = stream(0, i);
    FillUniform(rng, population[i]);
  }
  std::vector<double> scores(pop, 0.0);
  EvaluateAll(population, std::vector<char>(pop, 1), scores, fitness, params.workers);

  BrkgaTrace trace;
  trace.evaluations = pop;
  std::vector<int> rank(pop);
  auto sort_by_fitness = [&]() {
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(),
                     [&](int a, int b) { return scores[a] < scores[b]; });
  };
  auto record = [&]() {
    trace.history.push_back(scores[rank[0]]);
    std::vector<double> elite_scores(elites);
    for (int e = 0; e < elites; ++e) elite_scores[e] = scores[rank[e]];
    trace.elite_fitness.push_back(std::move(elite_scores));
  };
  sort_by_fitness();
  record();

  for (int generation = 1; generation <= params.generations; ++generation) {
    std::vector<Chromosome> next(pop, Chromosome(num_genes));
    std::vector<double> next_scores(pop, 0.0);
    std::vector<char> todo(pop, 1);
    // Elites survive unchanged; their fitness is already known.
    for (int e = 0; e < elites; ++e) {
      next[e] = population[rank[e]];
      next_scores[e] = scores[rank[e]];
      todo[e] = 0;
    }
    for (int slot = elites; slot < pop - mutants; ++slot) {
      CounterRng rng = stream(generation, slot);
      const Chromosome& elite = population[rank[rng.UniformInt(0, elites - 1)]];
      const Chromosome& other = population[rank[rng.UniformInt(elites, pop - 1)]];
      for (int gene = 0; gene < num_genes; ++gene) {
        next[slot][gene] =
            rng.Uniform() < params.elite_inherit_prob ? elite[gene] : other[gene];
      }
    }
    for (int slot = pop - mutants; slot < pop; ++slot) {
      CounterRng rng = stream(generation, slot);
      FillUniform(rng, next[slot]);
    }
    EvaluateAll(next, todo, next_scores, fitness, params.workers);
    trace.evaluations += pop;
    population = std::move(next);
    scores = std::move(next_scores);
    sort_by_fitness();
    record();
  }

  trace.best_chromosome = population[rank[0]];
  trace.best_fitness = scores[rank[0]];
  return trace;
}

SearchResult random_search(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                           std::int64_t samples, std::uint64_t seed, int workers) {
  g.RequireValid();
  if (samples < 1) throw PreconditionError("random_search: T must be >= 1");
  if (k < 1) throw PreconditionError("random_search: k must be >= 1");
  const NodeIndex n = g.num_nodes();
  auto sample = [&](std::int64_t t) {
    Chromosome x(n);
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    FillUniform(rng, x);
    return x;
  };

  std::vector<double> scores(samples, 0.0);
  auto run = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t t = begin; t < end; ++t) {
      scores[t] = decode_value(g, cfg, k, sample(t));
    }
  };
  if (workers <= 1 || samples < 2) {
    run(0, samples);
  } else {
    const std::int64_t chunks = std::min<std::int64_t>(workers, samples);
    std::vector<std::jthread> threads;
    for (std::int64_t c = 0; c < chunks; ++c) {
      threads.emplace_back(run, samples * c / chunks, samples * (c + 1) / chunks);
    }
  }

  SearchResult result;
  result.evaluations = samples;
  std::int64_t best = 0;
  for (std::int64_t t = 0; t < samples; ++t) {
    if (scores[t] < scores[best]) best = t;
    result.history.push_back(scores[best]);
  }
  auto [order, seg] = decode(g, cfg, k, sample(best));
  result.best_value = seg.value;
  result.best_search_objective = seg.value;
  result.best_order = std::move(order);
  result.best_cuts = std::move(seg);
  return result;
}

SearchResult brkga_run(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                       const BrkgaParams& params) {
  g.RequireValid();
  if (k < 1) throw PreconditionError("brkga_run: k must be >= 1");
  const FitnessFn fitness = [&](std::span<const double> x) {
    return decode_value(g, cfg, k, x);
  };
  BrkgaTrace trace = RunBrkga(g.num_nodes(), params, fitness);
  auto [order, seg] = decode(g, cfg, k, trace.best_chromosome);
  SearchResult result;
  result.best_value = seg.value;
  result.best_search_objective = trace.best_fitness;
  result.best_order = std::move(order);
  result.best_cuts = std::move(seg);
  result.evaluations = trace.evaluations;
  result.history = std::move(trace.history);
  return result;
}

double mla_objective(const ComputationGraph& g, const PlatformConfig& cfg,
                     const TopologicalOrder& order, bool weighted) {
  g.RequireValid();
  if (order.size() != g.num_nodes()) {
    throw PreconditionError("mla_objective: order size does not match the graph");
  }
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    const int span = order.position_of(e.consumer) - order.position_of(e.producer);
    if (span <= 0) throw PreconditionError("mla_objective: order is not topological");
    const double w = weighted ? g.node(e.producer).size_out / cfg.bandwidth : 1.0;
    total += w * span;
  }
  return total;
}

SearchResult mla_search(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                        const BrkgaParams& params, bool weighted) {
  g.RequireValid();
  if (k < 1) throw PreconditionError("mla_search: k must be >= 1");
  const FitnessFn fitness = [&](std::span<const double> x) {
    return mla_objective(g, cfg, kahn_with_priorities(g, x), weighted);
  };
  BrkgaTrace trace = RunBrkga(g.num_nodes(), params, fitness);
  TopologicalOrder order = kahn_with_priorities(g, trace.best_chromosome);
  Segmentation seg = slice_graph(g, cfg, k, order);
  SearchResult result;
  result.best_value = seg.value;
  result.best_search_objective = trace.best_fitness;
  result.best_order = std::move(order);
  result.best_cuts = std::move(seg);
  result.evaluations = trace.evaluations;
  result.history = std::move(trace.history);
  return result;
}

}  // namespace mtpp
