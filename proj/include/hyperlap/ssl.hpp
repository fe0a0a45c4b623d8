// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

// Semi-supervised regularization: minimize S_p(ψ) + μ‖ψ − y‖².

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hyperlap/hypergraph.hpp"

namespace hyperlap {

/// Labels y ∈ {−1, 0, +1} (0 = unlabeled), μ > 0, p ≥ 1.
class SSLProblem {
 public:
  /// Throws LengthMismatch, InvalidArgument (label outside {−1,0,1} or μ ≤ 0),
  /// InvalidP, TooFewLabels (a class has no labeled node).
  SSLProblem(const Hypergraph& h, NodeFunction y, double mu, double p);

  const Hypergraph& hypergraph() const noexcept { return *h_; }
  const NodeFunction& labels() const noexcept { return y_; }
  double mu() const noexcept { return mu_; }
  double p() const noexcept { return p_; }

 private:
  const Hypergraph* h_;
  NodeFunction y_;
  double mu_;
  double p_;
};

struct SolveOptions {
  double tol = 1e-8;
  std::size_t max_iter = 10000;
  /// Keep the objective value after every sweep in SSLResult::objective_trace.
  bool record_objective = false;
  /// Halve a sweep's step until the objective does not increase. Without it
  /// every sweep is taken in full.
  bool safeguard = true;
};

struct SSLResult {
  NodeFunction psi;
  std::size_t iterations = 0;
  /// ‖J(ψ_t) − ψ_t‖_∞ of the last full sweep J.
  double final_residual = 0.0;
  double objective_value = 0.0;
  bool converged = false;
  /// ‖p Δ_pψ + 2μ(ψ − y)‖_∞ at the returned ψ.
  double stationarity_residual = 0.0;
  /// False if some iterate left [min(min y, min ψ_t), max(max y, max ψ_t)].
  bool bounds_respected = true;
  std::vector<double> objective_trace;
  /// Sweeps the safeguard shortened.
  std::size_t damped_sweeps = 0;
};

/// S_p(ψ) + μ‖ψ − y‖².
double objective(const SSLProblem& prob, std::span<const double> psi);

/// ‖p Δ_pψ + 2μ(ψ − y)‖_∞.
double stationarity_residual(const SSLProblem& prob, std::span<const double> psi);

/// One synchronous sweep
///   ψ'(v) = Σ_{u≠v} c(u,v) ψ(u) + m(v) y(v),
///   c(u,v) = −p l_p(u,v) / (p l_p(v,v) + 2μ),  m(v) = 2μ / (p l_p(v,v) + 2μ),
/// with l_p rebuilt from ψ. Throws ZeroDiagonal if a denominator is ≤ 0.
NodeFunction gauss_jacobi_step(const SSLProblem& prob, std::span<const double> psi);

/// Gauss-Jacobi iteration from ψ⁰ = y until the ∞-norm of a full sweep's
/// update falls below tol. Hitting max_iter returns the iterate with the
/// lowest objective and converged = false.
SSLResult solve(const SSLProblem& prob, const SolveOptions& opts = {});

/// ψ = β (I − α D^{-1/2} W D^{-1/2})^{-1} y, α = 1/(1+μ), β = μ/(1+μ).
/// Dense factorization for n ≤ 512 unless force_iterative, conjugate
/// gradients otherwise. Throws SolverStall, InvalidArgument (μ ≤ 0).
NodeFunction closed_form_p2(const Hypergraph& h, std::span<const double> y, double mu,
                            bool force_iterative = false);

/// Closed form for p = 2, Gauss-Jacobi otherwise.
SSLResult regularize(const SSLProblem& prob, const SolveOptions& opts = {});

struct LabeledNode {
  NodeId node;
  int label;  // −1 or +1
};

inline const std::vector<double> kDefaultMuGrid = {1.0, 10.0, 100.0, 1000.0, 10000.0};

/// μ from the grid with the smallest mean held-out error under stratified
/// `folds`-fold cross-validation; ties go to the smaller μ.
/// Throws TooFewLabels when a class has fewer than `folds` labeled nodes.
double cross_validate_mu(const Hypergraph& h, std::span<const LabeledNode> labeled, double p,
                         std::span<const double> grid = kDefaultMuGrid, std::size_t folds = 5,
                         std::uint64_t seed = 0);

/// sign(ψ(v)) with 0 mapped to +1.
std::vector<int> predict(std::span<const double> psi);

}  // namespace hyperlap
