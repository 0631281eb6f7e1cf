#pragma once

#include <stdexcept>
#include <string>

namespace locpr {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input while reading an edge list.
struct ParseError : Error {
  using Error::Error;
};

/// Structural violation detected while building or checking a graph.
struct ValidationError : Error {
  using Error::Error;
};

/// Out-of-range oracle query (distinct from graph-construction errors).
struct QueryError : Error {
  using Error::Error;
};

/// Invalid algorithm parameter (epsilon, delta, c, ...).
struct ParamError : Error {
  using Error::Error;
};

/// Infeasible hard-instance parameters; message names the violated constraint.
struct GenError : Error {
  using Error::Error;
};

}  // namespace locpr
