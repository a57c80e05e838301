#include "mtpp/graph_io.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mtpp/errors.h"

namespace mtpp {

using ordered_json = nlohmann::ordered_json;

namespace {

void RejectUnknownKeys(const ordered_json& object, const std::set<std::string>& allowed,
                       const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw ParseError("unknown field '" + key + "' in " + where);
    }
  }
}

double NumberField(const ordered_json& object, const char* key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end()) throw ParseError(std::string("missing field '") + key + "' in " + where);
  if (!it->is_number()) throw ParseError(std::string("field '") + key + "' in " + where + " must be a number");
  return it->get<double>();
}

}  // namespace

GraphDocument ParseGraphJson(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("graph JSON: top level must be an object");
  RejectUnknownKeys(doc, {"name", "bandwidth", "memory", "nodes", "edges"}, "graph");

  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("field 'name' must be a string");
    name = it->get<std::string>();
  }
  PlatformConfig cfg;
  if (doc.contains("bandwidth")) cfg.bandwidth = NumberField(doc, "bandwidth", "graph");
  if (doc.contains("memory")) cfg.memory = NumberField(doc, "memory", "graph");
  try {
    cfg.RequireValid();
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }

  const auto nodes_it = doc.find("nodes");
  if (nodes_it == doc.end() || !nodes_it->is_array()) {
    throw ParseError("graph JSON: 'nodes' must be an array");
  }
  std::vector<NodeSpec> nodes;
  nodes.reserve(nodes_it->size());
  for (std::size_t i = 0; i < nodes_it->size(); ++i) {
    const ordered_json& entry = (*nodes_it)[i];
    const std::string where = "node " + std::to_string(i);
    if (!entry.is_object()) throw ParseError(where + " must be an object");
    RejectUnknownKeys(entry, {"id", "work", "size_param", "size_out"}, where);
    NodeSpec spec;
    if (auto it = entry.find("id"); it != entry.end()) {
      if (!it->is_string()) throw ParseError(where + ": 'id' must be a string");
      spec.id = it->get<std::string>();
    } else {
      spec.id = std::to_string(i);
    }
    spec.work = NumberField(entry, "work", where);
    spec.size_param = NumberField(entry, "size_param", where);
    spec.size_out = NumberField(entry, "size_out", where);
    nodes.push_back(std::move(spec));
  }

  std::vector<Edge> edges;
  if (auto it = doc.find("edges"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("graph JSON: 'edges' must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const ordered_json& pair = (*it)[i];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
          !pair[1].is_number_integer()) {
        throw ParseError("edge " + std::to_string(i) +
                         " must be a [producer_idx, consumer_idx] pair of integers");
      }
      edges.push_back({pair[0].get<NodeIndex>(), pair[1].get<NodeIndex>()});
    }
  }

  ComputationGraph graph(std::move(name), std::move(nodes), std::move(edges));
  if (!graph.is_valid()) {
    std::string message = "invalid graph:";
    for (const GraphViolation& v : graph.violations()) {
      message += std::string(" [") + RuleName(v.rule) + ": " + v.message + "]";
    }
    throw ParseError(message);
  }
  return {std::move(graph), std::move(cfg)};
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

GraphDocument ReadGraphFile(const std::filesystem::path& path) {
  try {
    return ParseGraphJson(ReadTextFile(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string GraphToJson(const ComputationGraph& g, const PlatformConfig& cfg) {
  ordered_json doc;
  doc["name"] = g.name();
  doc["bandwidth"] = cfg.bandwidth;
  if (std::isfinite(cfg.memory)) doc["memory"] = cfg.memory;
  ordered_json nodes = ordered_json::array();
  for (const NodeSpec& spec : g.nodes()) {
    ordered_json entry;
    entry["id"] = spec.id;
    entry["work"] = spec.work;
    entry["size_param"] = spec.size_param;
    entry["size_out"] = spec.size_out;
    nodes.push_back(std::move(entry));
  }
  doc["nodes"] = std::move(nodes);
  ordered_json edges = ordered_json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.producer, e.consumer});
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

void WriteGraphFile(const std::filesystem::path& path, const ComputationGraph& g,
                    const PlatformConfig& cfg) {
  WriteTextFile(path, GraphToJson(g, cfg));
}

}  // namespace mtpp
