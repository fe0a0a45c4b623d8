// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hyperlap/calculus.hpp"
#include "hyperlap/hypergraph.hpp"

namespace hyperlap {

/// Largest dimension for which operators are materialized as dense matrices.
inline constexpr std::size_t kDenseLimit = 512;

/// A linear map on node functions, applied matrix-free. Operators built from a
/// Hypergraph keep a reference to it; the hypergraph must outlive them.
class LinearOperator {
 public:
  using Kernel = std::function<void(std::span<const double>, std::span<double>)>;

  LinearOperator(std::size_t dim, Kernel kernel);

  std::size_t dim() const noexcept { return dim_; }

  /// Throws LengthMismatch.
  NodeFunction apply(std::span<const double> x) const;
  /// y must have dim() entries; it is overwritten.
  void apply_into(std::span<const double> x, std::span<double> y) const;

  /// Column-by-column materialization. Throws TooLarge above max_dim.
  Eigen::MatrixXd dense(std::size_t max_dim = kDenseLimit) const;

 private:
  std::size_t dim_;
  Kernel kernel_;
};

struct PairWeight {
  NodeId u;
  NodeId v;
  double weight;
};

/// ψ-dependent coefficients of L_p = D^{-1/2}(D_p − W_p)D^{-1/2}.
///
/// With a_v = ‖∇ψ(v)‖^{p−2} and ā_e the mean of a over the nodes of e:
///   w_p(u,v) = Σ_{e∋u,v} w(e)/(δ_e−1) · (a_u + a_v − ā_e)
///   d_p(v)   = Σ_{e∋v}   w(e)/(δ_e−1) · (ā_e + (δ_e−2) a_v)
/// so that d_p(v) = Σ_u w_p(u,v).
struct PLaplacianCoefficients {
  double p = 2.0;
  NodeFunction psi;
  NodeFunction node_norms;
  /// a_v.
  NodeFunction node_factor;
  /// ā_e, one per edge.
  std::vector<double> edge_mean;
  /// d_p(v).
  NodeFunction node_coeffs;

  /// w_p(u, v); zero when u == v or u, v share no edge.
  double pair_weight(const Hypergraph& h, NodeId u, NodeId v) const;
  /// Upper-triangle (u < v) entries of W_p, sorted by (u, v). O(Σ_e δ_e²).
  std::vector<PairWeight> pair_weights(const Hypergraph& h) const;
  /// (W_p x)(v) in O(Σ_e δ_e).
  NodeFunction apply_pair_weights(const Hypergraph& h, std::span<const double> x) const;
};

/// Throws InvalidP for p < 1 and LengthMismatch.
PLaplacianCoefficients p_coefficients(const Hypergraph& h, std::span<const double> psi, double p);

/// l_p(u,v) = −w_p(u,v)/√(d(u)d(v)) off the diagonal, l_p(v,v) = d_p(v)/d(v).
double l_entry(const Hypergraph& h, const PLaplacianCoefficients& c, NodeId u, NodeId v);

/// L_p frozen at the coefficients' ψ, as a linear operator.
LinearOperator p_laplacian_operator(const Hypergraph& h, const PLaplacianCoefficients& c);

/// (Δ_pψ)(v) = (1/√d(v)) (d_p(v) ψ(v)/√d(v) − Σ_u w_p(u,v) ψ(u)/√d(u)).
NodeFunction apply_p_laplacian(const Hypergraph& h, std::span<const double> psi, double p);

/// Δ_pψ = −div(‖∇ψ‖^{p−2} ∇ψ), evaluated through the field calculus.
NodeFunction apply_p_laplacian_divergence(const Hypergraph& h, std::span<const double> psi,
                                          double p);

/// L = I − D^{-1/2} W D^{-1/2} with w(u,v) = Σ_{e∋u,v} w(e)/(δ_e−1).
LinearOperator laplacian_p2(const Hypergraph& h);

/// L_Z = I − D_v^{-1/2} H W_e D_e^{-1} Hᵀ D_v^{-1/2}.
LinearOperator zhou_laplacian(const Hypergraph& h);

/// d_R(v) = Σ_u w_R(u,v) = Σ_{e∋v} w(e)(δ_e−1).
NodeFunction rodriguez_degrees(const Hypergraph& h);

/// L_R = I − D_R^{-1/2} W_R D_R^{-1/2}, w_R(u,v) = Σ_{e∋u,v} w(e), zero diagonal.
LinearOperator rodriguez_laplacian(const Hypergraph& h);

/// ψᵀ D^{-1/2}(D_{R_p} − W_{R_p}) D^{-1/2} ψ, where w_{R_p} drops the
/// 1/(δ_e−1) factor of w_p. Throws InvalidP.
double rodriguez_p_quadratic(const Hypergraph& h, std::span<const double> psi, double p);

/// Σ_e w(e) (max_{v∈e} ψ(v) − min_{v∈e} ψ(v))^p. Throws InvalidP.
double hein_regularizer(const Hypergraph& h, std::span<const double> psi, double p);

struct RandomWalk {
  /// (P x)(u) = Σ_v p(u,v) x(v), p(u,v) = w(u,v)/d(u).
  LinearOperator transition;
  /// (Pᵀ x)(v) = Σ_u p(u,v) x(u).
  LinearOperator transition_transpose;
  /// π(u) = d(u)/vol(V).
  NodeFunction stationary;
};

RandomWalk random_walk(const Hypergraph& h);

struct GraphComparison {
  double zhou06 = 0.0;
  double buhler_unnormalized = 0.0;
  double buhler_normalized = 0.0;
};

/// Reference graph p-Laplacians at node v for a dense symmetric adjacency.
///   zhou06:  ½ Σ_u w(u,v)/√d(v) (‖∇f(u)‖^{p−2} + ‖∇f(v)‖^{p−2}) (f̂(v) − f̂(u)),
///            f̂ = f/√d, ‖∇f(v)‖² = Σ_u w(u,v)(f̂(u) − f̂(v))².
///   buhler:  Σ_u w(u,v) ξ_p(f(v) − f(u)), and the same divided by d(v).
/// Throws AsymmetricInput, InvalidP, LengthMismatch, NodeIdOutOfRange.
GraphComparison graph_comparison_operators(const Eigen::MatrixXd& adjacency,
                                           std::span<const double> psi, double p, NodeId v);

/// ξ_p(x) = |x|^{p−1} sgn(x).
double xi_p(double x, double p);

}  // namespace hyperlap
