#include "mtpp/cli.h"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "mtpp/bounds.h"
#include "mtpp/datagen.h"
#include "mtpp/errors.h"
#include "mtpp/graph_io.h"
#include "mtpp/mip.h"
#include "mtpp/report.h"
#include "mtpp/search.h"

namespace mtpp::cli {

namespace fs = std::filesystem;

namespace {

struct GenerateArgs {
  std::string model = "erdos-renyi";
  int count = 1;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string prefix = "graph";
  int jobs = 1;
  int n_min = 50;
  int n_max = 200;
};

struct PartitionArgs {
  std::string graph;
  int k = 1;
  std::string algo;
  std::int64_t budget = 10000;
  std::uint64_t seed = 0;
  std::string config;
  std::string out;
  int jobs = 1;
  std::optional<int> population;
  std::optional<int> generations;
  std::optional<double> elite_fraction;
  std::optional<double> mutant_fraction;
  std::optional<double> inherit_prob;
};

struct BoundArgs {
  std::string graph;
  int k = 1;
  std::string method;
  std::string mode = "oracle";
  std::string out;
  double guard = kDefaultOracleGuard;
};

struct ReportArgs {
  std::vector<std::string> solutions;
  std::vector<std::string> certificates;
  std::vector<std::string> bounds;
  std::vector<std::string> graphs;
  std::string out_dir;
};

// Files named directly plus every *.json (or *.csv) directly inside named
// directories, sorted.
std::vector<fs::path> ExpandInputs(const std::vector<std::string>& inputs,
                                   const std::string& extension) {
  std::vector<fs::path> files;
  for (const std::string& input : inputs) {
    const fs::path p(input);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == extension) {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  return files;
}

int RunGenerate(const GenerateArgs& a, std::ostream& out) {
  GenParams p;
  p.model = ParseBaseModel(a.model);
  p.seed = a.seed;
  p.n_lo = a.n_min;
  p.n_hi = a.n_max;
  const std::vector<BatchEntry> entries = generate_batch(p, a.count, a.out_dir, a.prefix, a.jobs);
  out << "wrote " << entries.size() << " graphs and manifest.csv to " << a.out_dir << "\n";
  return kExitOk;
}

std::string AlgoLabel(const PartitionArgs& a) {
  if (a.algo == "random" || a.algo == "brkga") return a.algo + "-" + std::to_string(a.budget);
  return a.algo;
}

int RunPartition(const PartitionArgs& a, std::ostream& out) {
  const GraphDocument doc = ReadGraphFile(a.graph);
  BrkgaParams params = BrkgaParams::ForBudget(a.budget, a.seed);
  params.workers = a.jobs;
  if (!a.config.empty()) params = ReadBrkgaConfig(a.config, params);
  if (a.population) params.population_size = *a.population;
  if (a.generations) params.generations = *a.generations;
  if (a.elite_fraction) params.elite_fraction = *a.elite_fraction;
  if (a.mutant_fraction) params.mutant_fraction = *a.mutant_fraction;
  if (a.inherit_prob) params.elite_inherit_prob = *a.inherit_prob;

  SearchResult result;
  std::uint64_t seed = params.seed;
  if (a.algo == "random") {
    seed = a.seed;
    result = random_search(doc.graph, doc.platform, a.k, a.budget, a.seed, a.jobs);
  } else if (a.algo == "brkga") {
    result = brkga_run(doc.graph, doc.platform, a.k, params);
  } else {
    result = mla_search(doc.graph, doc.platform, a.k, params, a.algo == "mla-weighted");
  }

  nlohmann::ordered_json j;
  j["graph"] = doc.graph.name();
  j["k"] = a.k;
  j["algo"] = AlgoLabel(a);
  j["value"] = result.best_value;
  j["order"] = result.best_order.perm();
  j["cut_points"] = result.best_cuts.cut_points;
  j["evaluations"] = result.evaluations;
  j["seed"] = seed;
  const std::string text = j.dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    WriteTextFile(a.out, text);
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", result.best_value);
    out << buffer << "\n";
  }
  return kExitOk;
}

std::string DefaultModelBase(const ComputationGraph& g, const char* kind, int k) {
  const std::string name = g.name().empty() ? "graph" : g.name();
  return name + "_" + kind + "_k" + std::to_string(k);
}

int RunBound(const BoundArgs& a, std::ostream& out) {
  const GraphDocument doc = ReadGraphFile(a.graph);
  const ComputationGraph& g = doc.graph;
  const BoundMethod method = ParseBoundMethod(a.method);

  if (a.mode == "emit") {
    fs::path base = a.out;
    switch (method) {
      case BoundMethod::kSimple:
        throw PreconditionError("the simple bound is a formula; use --mode oracle");
      case BoundMethod::kExact:
        if (base.empty()) base = DefaultModelBase(g, "exact", a.k) + ".lp";
        emit_lp(build_exact_mip(g, doc.platform, a.k), base);
        out << base.string() << "\n";
        break;
      case BoundMethod::kBottleneck:
        if (base.empty()) base = DefaultModelBase(g, "bottleneck", a.k) + ".lp";
        emit_lp(build_bottleneck_mip(g, doc.platform, a.k), base);
        out << base.string() << "\n";
        break;
      case BoundMethod::kBottleneckGuess: {
        if (base.empty()) base = DefaultModelBase(g, "guess", a.k);
        if (base.extension() == ".lp") base.replace_extension();
        for (int j = 1; j <= a.k; ++j) {
          const fs::path file = base.string() + "_j" + std::to_string(j) + ".lp";
          emit_lp(build_guess_mip(g, doc.platform, a.k, j), file);
          out << file.string() << "\n";
        }
        break;
      }
    }
    return kExitOk;
  }

  BoundCertificate c;
  switch (method) {
    case BoundMethod::kSimple:
      c = simple_certificate(g, a.k);
      break;
    case BoundMethod::kBottleneck:
      c = solve_bottleneck_oracle(g, doc.platform, a.k, a.guard);
      break;
    case BoundMethod::kBottleneckGuess:
      c = solve_guess_oracle(g, doc.platform, a.k, a.guard);
      break;
    case BoundMethod::kExact:
      c = exact_certificate(g, doc.platform, a.k, a.guard);
      break;
  }
  const std::string text = CertificateToJson(c);
  if (!a.out.empty()) WriteTextFile(a.out, text);
  out << text;
  return kExitOk;
}

int RunReport(const ReportArgs& a, std::ostream& out, std::ostream& err) {
  ReportInput input;
  for (const fs::path& file : ExpandInputs(a.solutions, ".json")) {
    input.solutions.push_back(ParseSolutionJson(ReadTextFile(file), file.filename().string()));
  }
  for (const fs::path& file : ExpandInputs(a.certificates, ".json")) {
    input.bounds.push_back(CertificateFromJson(ReadTextFile(file)));
  }
  int rejected = 0;
  for (const fs::path& file : ExpandInputs(a.bounds, ".csv")) {
    BoundsImport imported = import_external_bounds(file);
    for (const RejectedRow& r : imported.rejected) {
      err << file.string() << " line " << r.line << ": " << r.reason << "\n";
      ++rejected;
    }
    input.bounds.insert(input.bounds.end(), imported.certificates.begin(),
                        imported.certificates.end());
  }
  if (!a.graphs.empty()) {
    std::map<std::string, ComputationGraph> graphs;
    for (const fs::path& file : ExpandInputs(a.graphs, ".json")) {
      GraphDocument doc = ReadGraphFile(file);
      graphs.emplace(doc.graph.name(), std::move(doc.graph));
    }
    for (const SolutionRecord& s : input.solutions) {
      const auto it = graphs.find(s.graph);
      if (it != graphs.end()) {
        input.simple_bounds.try_emplace({s.graph, s.k}, simple_lower_bound(it->second, s.k));
      }
    }
  }

  const ExperimentReport report = build_report(input);
  const std::string text = ReportText(report);
  out << text;
  if (rejected > 0) out << "Rejected bound rows: " << rejected << "\n";
  if (!a.out_dir.empty()) {
    fs::create_directories(a.out_dir);
    WriteTextFile(fs::path(a.out_dir) / "report.csv", ReportCsv(report));
    WriteTextFile(fs::path(a.out_dir) / "report.txt", text);
    WriteTextFile(fs::path(a.out_dir) / "best_solutions.csv", BestSolutionsCsv(report));
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pipeline partitioning of computation graphs (MTPP): search and lower bounds",
               "mtpp"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Write a corpus of synthetic graphs");
  generate->add_option("--model", gen.model,
                       "erdos-renyi, barabasi-albert, watts-strogatz or layered")
      ->capture_default_str();
  generate->add_option("--count", gen.count, "Number of graphs")->check(CLI::NonNegativeNumber);
  generate->add_option("--seed", gen.seed, "Seed of graph 0; graph i uses seed + i")
      ->envname("MTPP_SEED");
  generate->add_option("--out-dir", gen.out_dir, "Output directory")->required();
  generate->add_option("--prefix", gen.prefix, "File name prefix")->capture_default_str();
  generate->add_option("--jobs", gen.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  generate->add_option("--n-min", gen.n_min, "Smallest node count")->capture_default_str();
  generate->add_option("--n-max", gen.n_max, "Largest node count")->capture_default_str();

  PartitionArgs part;
  CLI::App* partition = app.add_subcommand("partition", "Search for a k-block partition");
  partition->add_option("--graph", part.graph, "Graph JSON file")->required();
  partition->add_option("--k", part.k, "Number of blocks")->required()->check(CLI::PositiveNumber);
  partition->add_option("--algo", part.algo, "random, brkga, mla or mla-weighted")
      ->required()
      ->check(CLI::IsMember({"random", "brkga", "mla", "mla-weighted"}));
  partition->add_option("--budget", part.budget, "Candidate evaluations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  partition->add_option("--seed", part.seed, "Random seed")->envname("MTPP_SEED");
  partition->add_option("--config", part.config, "BRKGA key=value config file");
  partition->add_option("--out", part.out, "Solution JSON path (default: stdout)");
  partition->add_option("--jobs", part.jobs, "Parallel fitness evaluations")
      ->check(CLI::PositiveNumber);
  partition->add_option("--population", part.population, "BRKGA population size");
  partition->add_option("--generations", part.generations, "BRKGA generations");
  partition->add_option("--elite-fraction", part.elite_fraction, "BRKGA elite fraction");
  partition->add_option("--mutant-fraction", part.mutant_fraction, "BRKGA mutant fraction");
  partition->add_option("--inherit-prob", part.inherit_prob, "BRKGA elite inheritance probability");

  BoundArgs bnd;
  CLI::App* bound = app.add_subcommand("bound", "Compute or emit a lower bound");
  bound->add_option("--graph", bnd.graph, "Graph JSON file")->required();
  bound->add_option("--k", bnd.k, "Number of blocks")->required()->check(CLI::PositiveNumber);
  bound->add_option("--method", bnd.method, "simple, bottleneck, bottleneck-guess or exact")
      ->required()
      ->check(CLI::IsMember({"simple", "bottleneck", "bottleneck-guess", "exact"}));
  bound->add_option("--mode", bnd.mode, "oracle (exhaustive) or emit (LP files)")
      ->capture_default_str()
      ->check(CLI::IsMember({"oracle", "emit"}));
  bound->add_option("--out", bnd.out,
                    "Certificate JSON (oracle) or LP path; bottleneck-guess appends _j{j}.lp");
  bound->add_option("--guard", bnd.guard, "Largest search space the oracles accept")
      ->capture_default_str();

  ReportArgs rep;
  CLI::App* report = app.add_subcommand("report", "Aggregate solutions and bounds");
  report->add_option("--solutions", rep.solutions, "Solution JSON files or directories")
      ->required();
  report->add_option("--certificates", rep.certificates,
                     "Certificate JSON files or directories");
  report->add_option("--bounds", rep.bounds, "Bounds CSV files (graph,k,method,bound,status)");
  report->add_option("--graphs", rep.graphs,
                     "Graph JSON files or directories, for L when no simple certificate exists");
  report->add_option("--out-dir", rep.out_dir,
                     "Write report.csv, report.txt and best_solutions.csv here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return RunGenerate(gen, out);
    if (partition->parsed()) return RunPartition(part, out);
    if (bound->parsed()) return RunBound(bnd, out);
    return RunReport(rep, out, err);
  } catch (const InstanceTooLargeError& e) {
    err << "error: " << e.what()
        << "; use --mode emit to write the model for an external MIP solver\n";
    return kExitTooLarge;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace mtpp::cli
