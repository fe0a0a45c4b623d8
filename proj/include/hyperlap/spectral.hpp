// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyperlap/hypergraph.hpp"
#include "hyperlap/laplacians.hpp"

namespace hyperlap {

// ---------------------------------------------------------------------------
// Eigenpairs

struct EigenPairs {
  /// Ascending.
  std::vector<double> eigenvalues;
  /// Unit ℓ₂ norm; sign fixed so the largest-magnitude entry is positive.
  std::vector<NodeFunction> eigenvectors;
  /// max_i ‖L v_i − λ_i v_i‖₂.
  double max_residual = 0.0;
  bool dense = true;
  /// Restart cycles used by the iterative path (0 for dense).
  std::size_t restarts = 0;
};

struct EigenOptions {
  double tol = 1e-8;
  std::size_t max_restarts = 2000;
  /// Krylov basis size; 0 picks max(2k + 20, 40).
  std::size_t basis_size = 0;
  bool force_iterative = false;
  std::uint64_t seed = 0x5eed;
};

/// The k smallest eigenpairs of a symmetric PSD operator. When `degrees` is
/// non-empty, D^{1/2}𝟙 is taken as the exact null vector: the iterative path
/// deflates it and returns it as the first pair. Dense solve for n ≤ 512
/// unless forced iterative. Throws NoConvergence, InvalidArgument.
EigenPairs smallest_eigenpairs(const LinearOperator& op, std::size_t k,
                               std::span<const double> degrees, const EigenOptions& opts = {});

// ---------------------------------------------------------------------------
// Cuts

/// ∂V(A, B) = Σ_e w(e)/(δ_e−1) |e∩A| |e∩B| for the indicator in_a.
double boundary(const Hypergraph& h, std::span<const std::uint8_t> in_a);

/// Ncut(A, V∖A). Throws DegeneratePartition for A = ∅ or A = V.
double ncut(const Hypergraph& h, std::span<const NodeId> a);
double ncut_indicator(const Hypergraph& h, std::span<const std::uint8_t> in_a);

/// Σ_i ∂V(V_i, V∖V_i)/vol(V_i) over clusters 0..k−1, k = 1 + max id.
/// Throws EmptyCluster (some id unused, or fewer than two clusters),
/// SizeMismatch.
double multiclass_ncut(const Hypergraph& h, std::span<const std::uint32_t> assignment);

struct PartitionResult {
  std::vector<std::uint32_t> assignment;
  std::size_t k = 2;
  double ncut_value = 0.0;
  std::string method;
  double p = 2.0;
  /// Sweep threshold on D^{-1/2}ψ: nodes with value ≤ threshold form cluster 0.
  double threshold = 0.0;
  std::vector<double> eigenvalues;
  double eigen_residual = 0.0;
  std::uint64_t seed = 0;
  double kmeans_inertia = 0.0;
  /// Descent diagnostics for p ≠ 2.
  double rayleigh_initial = 0.0;
  double rayleigh_final = 0.0;
  std::size_t descent_iterations = 0;
  bool no_descent = false;
};

struct SweepResult {
  std::vector<std::uint32_t> assignment;
  double ncut_value = 0.0;
  double threshold = 0.0;
};

/// Best of the |V|−1 prefix splits of the nodes sorted by f (ties by id),
/// by Ncut; O(Σ_e δ_e + n log n).
SweepResult threshold_sweep(const Hypergraph& h, std::span<const double> f);

PartitionResult two_class_cut_p2(const Hypergraph& h, const EigenOptions& eig = {});

struct KMeansResult {
  std::vector<std::uint32_t> assignment;
  Eigen::MatrixXd centers;
  double inertia = 0.0;
  std::size_t iterations = 0;
};

/// k-means++ seeding and Lloyd iterations until the relative inertia change
/// drops below 1e-9; best of `restarts` by inertia. Deterministic in seed.
KMeansResult kmeans(const Eigen::MatrixXd& rows, std::size_t k, std::uint64_t seed,
                    std::size_t restarts = 10, std::size_t max_iter = 1000);

/// k-means on the rows of the n×k matrix of the k smallest eigenvectors of L.
PartitionResult multiclass_cut_p2(const Hypergraph& h, std::size_t k, std::uint64_t seed,
                                  std::size_t restarts = 10, const EigenOptions& eig = {});

/// Exact minimum of the k-way Ncut over all surjective assignments.
/// Throws TooLarge for |V| > 12.
double brute_force_min_ncut(const Hypergraph& h, std::size_t k);

// ---------------------------------------------------------------------------
// p-eigenproblem and Rayleigh quotients

/// ‖Δ_pψ − λ ξ_p(ψ)‖_∞.
double p_eigen_residual(const Hypergraph& h, std::span<const double> psi, double lambda, double p);

/// S_p(ψ) / Σ_v |ψ(v)|^p. Throws ZeroFunction.
double rayleigh(const Hypergraph& h, std::span<const double> psi, double p);

/// argmin_c Σ_v |ψ(v) − c√d(v)|^p. Bisection for p > 1, weighted median of
/// ψ/√d with weights √d for p = 1. Throws InvalidP for p < 1.
double p_mean(const Hypergraph& h, std::span<const double> psi, double p);

/// min_c Σ_v |ψ(v) − c√d(v)|^p.
double p_var(const Hypergraph& h, std::span<const double> psi, double p);

/// S_p(ψ)/var_p(ψ). Throws DegenerateDirection when ψ ∥ D^{1/2}𝟙.
double rayleigh2(const Hypergraph& h, std::span<const double> psi, double p);

/// (p/var) Δ_pψ − (S_p p/var²) ξ_p(ψ − √d c*). Requires p > 1.
NodeFunction rayleigh2_gradient(const Hypergraph& h, std::span<const double> psi, double p);

struct DescentOptions {
  double armijo = 1e-4;
  double shrink = 0.5;
  double rel_tol = 1e-9;
  std::size_t max_iter = 5000;
  std::size_t max_backtracks = 60;
};

struct DescentResult {
  NodeFunction psi;
  double initial_value = 0.0;
  double final_value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// The line search failed before any step was accepted.
  bool no_descent = false;
};

/// Gradient descent with Armijo backtracking on R_p^{(2)}, recentring by the
/// p-mean and renormalizing each step.
DescentResult minimize_rayleigh2(const Hypergraph& h, std::span<const double> psi0, double p,
                                 const DescentOptions& opts = {});

/// Descent from the p=2 second eigenvector, then an Ncut threshold sweep on
/// D^{-1/2}ψ. p = 1 is handled by continuation at p = 1.1.
PartitionResult two_class_cut_p(const Hypergraph& h, double p, const DescentOptions& opts = {},
                                const EigenOptions& eig = {});

/// p actually descended for a requested p (1 maps to 1.1).
double effective_descent_p(double p);

/// Fraction of mismatches under the best cluster↔label bijection
/// (Hungarian assignment on the confusion matrix). Throws SizeMismatch.
double error_rate(std::span<const std::uint32_t> predicted, std::span<const std::uint32_t> truth);

}  // namespace hyperlap
