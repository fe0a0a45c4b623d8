// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperlap {

enum class ErrorKind {
  // Hypergraph construction.
  SingletonEdge,
  NonPositiveWeight,
  Disconnected,
  NodeIdOutOfRange,
  DuplicateNode,
  EmptyGraph,
  // Argument checks.
  InvalidP,
  LengthMismatch,
  FieldMismatch,
  InvalidArgument,
  // Numerical.
  ZeroDiagonal,
  MaxIterExceeded,
  SolverStall,
  NoConvergence,
  NoDescent,
  DegeneratePartition,
  EmptyCluster,
  TooLarge,
  ZeroFunction,
  DegenerateDirection,
  TooFewLabels,
  AsymmetricInput,
  SizeMismatch,
  // I/O.
  ParseError,
  EmptyDataset,
  IOError,
  SchemaVersionMismatch,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for the kinds a CLI reports as solver non-convergence (exit code 3).
bool is_convergence_failure(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace hyperlap
