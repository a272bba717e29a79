#pragma once

#include <stdexcept>
#include <string>

namespace eedp {

/// A smoothing or continuation parameter lies outside its admissible range.
class ParameterDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Vector arguments whose lengths disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A dispatch problem violates one of its structural invariants.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed problem file. `what()` carries line/field diagnostics.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver was called with an argument that breaks its precondition
/// (e.g. an infeasible starting point for the barrier method).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The brute-force oracle only handles up to two free dimensions.
class UnsupportedOracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eedp
