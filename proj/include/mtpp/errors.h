#pragma once

#include <stdexcept>
#include <string>

namespace mtpp {

// A caller violated an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The partition's quotient graph has a directed cycle.
class InfeasiblePartitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive oracle refused to run because the search space exceeds its guard.
class InstanceTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file (graph JSON, bounds CSV, config).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mtpp
