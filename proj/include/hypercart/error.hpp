#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hypercart {

using VertexId = std::string;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text/JSON input or a structure violating the hypergraph rules
/// (loops, duplicates, non-simple hyperedge families, bad tokens).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An L2-section whose labels are not closed, or a subsection request that
/// breaks the closure condition.
class InvalidSectionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The input is well formed but outside the class an operation accepts
/// (disconnected, not conformal). Carries an optional vertex-set witness.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string precondition, const std::string& what,
                    std::vector<VertexId> witness = {})
      : Error(what), precondition_(std::move(precondition)), witness_(std::move(witness)) {}

  const std::string& precondition() const noexcept { return precondition_; }
  const std::vector<VertexId>& witness() const noexcept { return witness_; }

 private:
  std::string precondition_;
  std::vector<VertexId> witness_;
};

/// A configured size guard (clique count, exact-search size) was exceeded.
class LimitExceededError : public Error {
 public:
  using Error::Error;
};

/// A self-check failed. Seeing this means a bug, never a user mistake.
class InternalInconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypercart
