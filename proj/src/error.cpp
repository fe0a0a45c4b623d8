// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hyperlap/error.hpp"

namespace hyperlap {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SingletonEdge: return "SingletonEdge";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NodeIdOutOfRange: return "NodeIdOutOfRange";
    case ErrorKind::DuplicateNode: return "DuplicateNode";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::InvalidP: return "InvalidP";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorKind::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorKind::SolverStall: return "SolverStall";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NoDescent: return "NoDescent";
    case ErrorKind::DegeneratePartition: return "DegeneratePartition";
    case ErrorKind::EmptyCluster: return "EmptyCluster";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::DegenerateDirection: return "DegenerateDirection";
    case ErrorKind::TooFewLabels: return "TooFewLabels";
    case ErrorKind::AsymmetricInput: return "AsymmetricInput";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::IOError: return "IOError";
    case ErrorKind::SchemaVersionMismatch: return "SchemaVersionMismatch";
  }
  return "Unknown";
}

bool is_convergence_failure(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MaxIterExceeded:
    case ErrorKind::SolverStall:
    case ErrorKind::NoConvergence:
    case ErrorKind::NoDescent:
    case ErrorKind::ZeroDiagonal:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace hyperlap
