#pragma once

#include <filesystem>
#include <string>

#include "mtpp/graph.h"

namespace mtpp {

// One graph file: the DAG plus the platform it is costed on.
struct GraphDocument {
  ComputationGraph graph;
  PlatformConfig platform;
};

// Graph JSON schema:
//   {"name": str, "bandwidth": num, "memory": num,
//    "nodes": [{"id": str, "work": num, "size_param": num, "size_out": num}],
//    "edges": [[producer_idx, consumer_idx], ...]}
// Node order defines node indices. Unknown fields are rejected. "bandwidth"
// defaults to 1 and an absent "memory" means unlimited fast memory.
//
// Throws ParseError on malformed JSON, schema violations, or a graph that
// fails validate_graph().
GraphDocument ParseGraphJson(const std::string& text);
GraphDocument ReadGraphFile(const std::filesystem::path& path);

// Deterministic serialization (fixed key order, two-space indent, trailing
// newline). Infinite memory is written by omitting the field.
std::string GraphToJson(const ComputationGraph& g, const PlatformConfig& cfg);
void WriteGraphFile(const std::filesystem::path& path, const ComputationGraph& g,
                    const PlatformConfig& cfg);

// Reads a whole file; throws ParseError if it cannot be opened.
std::string ReadTextFile(const std::filesystem::path& path);
// Writes text verbatim; throws std::runtime_error on I/O failure.
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace mtpp
