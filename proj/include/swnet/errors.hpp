#ifndef SWNET_ERRORS_HPP
#define SWNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace swnet {

// Invalid arguments (bad parameters, bad nodes, malformed moves) derive from
// std::invalid_argument; failures of a well-formed request derive from
// std::runtime_error.

struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidNode : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotAnEdge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidTemperature : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidCoarseState : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SeriesTooShort : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DisconnectedGraph : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The move's removed edges are gone or its added edges already exist.
struct StaleMove : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace swnet

#endif  // SWNET_ERRORS_HPP
