#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtpp/graph.h"
#include "mtpp/mip.h"

namespace mtpp {

enum class BoundMethod { kSimple, kBottleneck, kBottleneckGuess, kExact };
enum class BoundSource { kOracle, kExternalSolver, kFormula };

const char* BoundMethodName(BoundMethod method);
// Throws ParseError listing the accepted names.
BoundMethod ParseBoundMethod(std::string_view text);
const char* BoundSourceName(BoundSource source);
BoundSource ParseBoundSource(std::string_view text);

// A proven lower bound on the MTPP optimum of one (graph, k) instance.
struct BoundCertificate {
  BoundMethod method = BoundMethod::kSimple;
  double value = 0.0;
  int k = 1;
  std::string graph;
  BoundSource source = BoundSource::kFormula;
  std::string status;             // solver status for imported bounds
  std::vector<double> per_guess;  // bottleneck-guess: LB_j for j = 1..k

  friend bool operator==(const BoundCertificate&, const BoundCertificate&) = default;
};

// L = max(max_v work(v), total work / k).
double simple_lower_bound(const ComputationGraph& g, int k);
BoundCertificate simple_certificate(const ComputationGraph& g, int k);

// Models use y_v{i}_b{b} = [node i sits in a block <= b] for b = 1..k-1
// (y for block 0 and block k are the constants 0 and 1), c_v{i}_b{b} >= 0 for
// the tensor of producer i being cut at block b, block_{b} and bottleneck.
// Node indices in names are 0-based. Overflow is not modelled.
//
// Constraint groups, in order: bottleneck >= block_b; block_b definitions;
// y_ub >= y_vb per edge; cut-input and cut-output rows per edge and block;
// y monotone in b. Rows that are constant after substituting y_v0 and y_vk
// are dropped, so the model has n(k-1) + p k + k + 1 variables (p producers)
// and 2k + m(k-1) + 2mk + n max(k-2, 0) rows.
MipModel build_exact_mip(const ComputationGraph& g, const PlatformConfig& cfg, int k);

// Three superblocks (earlier blocks, the bottleneck, later blocks); minimizes
// block_2 subject to work(superblock 2) >= simple_lower_bound(g, k). Only
// superblock 2's cost variables are kept: 2n + p + 1 variables, 4m + n + 2
// rows.
MipModel build_bottleneck_mip(const ComputationGraph& g, const PlatformConfig& cfg, int k);

// Three-superblock model guessing that the bottleneck is block j of k:
// minimizes bottleneck >= block_2, (j-1) bottleneck >= block_1 and
// (k-j) bottleneck >= block_3. Superblock 1 is forced empty for j = 1 and
// superblock 3 for j = k.
MipModel build_guess_mip(const ComputationGraph& g, const PlatformConfig& cfg, int k, int j);

inline constexpr double kDefaultOracleGuard = 1e7;

struct ExactSolution {
  double opt = 0.0;
  Partition witness;  // blocks numbered in quotient topological order
};

// Brute-force OPT over all partitions into at most k blocks with acyclic
// quotient. Enumerates each set partition once with branch and bound on
// partial block costs; stops early once a partition reaches the simple lower
// bound. Throws InstanceTooLargeError if k^n exceeds `guard`.
ExactSolution solve_small_exact(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                                double guard = kDefaultOracleGuard);

// Exhaustive optima of the bottleneck and bottleneck-guess relaxations over
// all acyclic assignments to three superblocks. Throw InstanceTooLargeError
// if 3^n exceeds `guard`.
BoundCertificate solve_bottleneck_oracle(const ComputationGraph& g, const PlatformConfig& cfg,
                                         int k, double guard = kDefaultOracleGuard);
BoundCertificate solve_guess_oracle(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                                    double guard = kDefaultOracleGuard);

BoundCertificate exact_certificate(const ComputationGraph& g, const PlatformConfig& cfg, int k,
                                   double guard = kDefaultOracleGuard);

struct RejectedRow {
  int line = 0;
  std::string reason;
};

struct BoundsImport {
  std::vector<BoundCertificate> certificates;
  std::vector<RejectedRow> rejected;
};

// CSV with header graph,k,method,bound,status. Rows with a bad k, bound or
// field count are rejected with their line number; an unknown method name
// throws ParseError. Imported certificates have source external-solver.
BoundsImport ParseBoundsCsv(const std::string& text);
BoundsImport import_external_bounds(const std::filesystem::path& path);
std::string BoundsToCsv(std::span<const BoundCertificate> certificates);

std::string CertificateToJson(const BoundCertificate& certificate);
BoundCertificate CertificateFromJson(const std::string& text);

}  // namespace mtpp
