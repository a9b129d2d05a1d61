#pragma once

#include <stdexcept>

namespace pcurv {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed graph or function document.
class ParseError : public Error {
  using Error::Error;
};

/// Vertex label or index not present in the graph.
class UnknownVertex : public Error {
  using Error::Error;
};

/// A function value was read at a vertex where it is not defined.
class MissingValue : public Error {
  using Error::Error;
};

/// cd_ratio was evaluated on a function whose Gamma_p vanishes at the base vertex.
class DegenerateFunction : public Error {
  using Error::Error;
};

/// The brute-force oracle refused a ball with too many free variables.
class BallTooLarge : public Error {
  using Error::Error;
};

}  // namespace pcurv
