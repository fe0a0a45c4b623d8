// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

// Gradient, divergence, inner products and Dirichlet energies on a hypergraph.
//
// A function on directed edges that depends only on (edge, first node) is
// stored once per (undirected edge, anchor node) pair. The (δ_e − 1)!
// orderings sharing an anchor carry identical values, so every 1/δ_e! sum
// over directed edges becomes a 1/δ_e sum over anchors.

#pragma once

#include <span>
#include <vector>

#include "hyperlap/hypergraph.hpp"

namespace hyperlap {

/// Gradient norms are floored at this value before a negative power is taken.
inline constexpr double kNormFloor = 1e-12;

/// x^exponent with x floored at kNormFloor when exponent < 0.
double floored_pow(double x, double exponent);

/// One real value per (edge, anchor node) pair, aligned with the pin array.
class EdgeVertexField {
 public:
  EdgeVertexField() = default;
  explicit EdgeVertexField(const Hypergraph& h, double fill = 0.0)
      : values_(h.num_pins(), fill) {}
  explicit EdgeVertexField(std::vector<double> values) : values_(std::move(values)) {}

  double at(const Hypergraph& h, EdgeId e, std::uint32_t slot) const {
    return values_[h.edge_offset(e) + slot];
  }
  double& at(const Hypergraph& h, EdgeId e, std::uint32_t slot) {
    return values_[h.edge_offset(e) + slot];
  }
  /// Value at (e, v); throws InvalidArgument when v ∉ e.
  double value(const Hypergraph& h, EdgeId e, NodeId v) const;

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  /// Throws FieldMismatch unless the field has one value per pin of h.
  void check_paired(const Hypergraph& h) const;

 private:
  std::vector<double> values_;
};

struct GradientProfile {
  EdgeVertexField field;
  /// ‖∇ψ(v)‖ for every node.
  NodeFunction node_norms;
};

/// (∇ψ)(e, v) = √w(e)/√(δ_e−1) · (Σ_{u∈e} ψ(u)/√d(u) − δ_e ψ(v)/√d(v)).
EdgeVertexField gradient(const Hypergraph& h, std::span<const double> psi);

/// ‖∇ψ(v)‖ = (Σ_{e∋v} (∇ψ)(e,v)² / δ_e)^{1/2} for all nodes at once.
NodeFunction gradient_norms(const Hypergraph& h, const EdgeVertexField& grad);
NodeFunction gradient_norms(const Hypergraph& h, std::span<const double> psi);
double gradient_norm(const Hypergraph& h, std::span<const double> psi, NodeId v);

GradientProfile gradient_profile(const Hypergraph& h, std::span<const double> psi);

/// S_p(ψ) = Σ_v ‖∇ψ(v)‖^p. Throws InvalidP for p < 1.
double dirichlet_sum(const Hypergraph& h, std::span<const double> psi, double p);
double dirichlet_sum_from_norms(std::span<const double> node_norms, double p);

/// ‖∇ψ_e‖ = ((1/δ_e) Σ_{v∈e} ‖∇ψ(v)‖^p)^{1/p}, the power mean of the node
/// norms over edge e.
double edge_p_mean(const Hypergraph& h, std::span<const double> node_norms, EdgeId e, double p);

/// (1/δ_e) Σ_{v∈e} ‖∇ψ(v)‖^exponent, with the kNormFloor guard. This is the
/// per-edge average that enters the p-Laplacian coefficients (exponent p−2).
double edge_mean_of_powers(const Hypergraph& h, std::span<const double> node_norms, EdgeId e,
                           double exponent);

/// Σ_v f(v) g(v). Throws LengthMismatch.
double inner_product_nodes(std::span<const double> f, std::span<const double> g);

/// Σ_e Σ_{v∈e} f(e,v) g(e,v) / δ_e. Throws FieldMismatch.
double inner_product_edges(const Hypergraph& h, const EdgeVertexField& f,
                           const EdgeVertexField& g);

/// Adjoint of the gradient: ⟨∇ψ, φ⟩_E = −⟨ψ, div φ⟩_V.
/// div φ(v) = Σ_{e∋v} √w(e)/(√(δ_e−1)√d(v)) · (φ(e,v) − (1/δ_e) Σ_{u∈e} φ(e,u)).
NodeFunction divergence(const Hypergraph& h, const EdgeVertexField& phi);

/// D^{1/2}𝟙, the constant direction of the calculus.
NodeFunction sqrt_degree_vector(const Hypergraph& h);

}  // namespace hyperlap
