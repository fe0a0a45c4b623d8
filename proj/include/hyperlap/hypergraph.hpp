// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hyperlap {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Real-valued function on the nodes, indexed by node id.
using NodeFunction = std::vector<double>;

/// An edge incident to a node, together with the node's slot inside the edge.
struct Incidence {
  EdgeId edge;
  std::uint32_t slot;
};

/// Unvalidated hypergraph description, as produced by ingestion.
struct RawHypergraph {
  std::size_t num_nodes = 0;
  std::vector<std::vector<NodeId>> edges;
  std::vector<double> weights;
};

/// Undirected, weighted, connected hypergraph.
///
/// Edges are stored as node sets in a flat pin array (CSR layout); the
/// position of a node within its edge ("slot") addresses per-(edge, node)
/// quantities such as gradients. Parallel edges are kept distinct.
/// Immutable after construction.
class Hypergraph {
 public:
  /// Validates and builds. Throws Error with SingletonEdge, NonPositiveWeight,
  /// NodeIdOutOfRange, DuplicateNode, Disconnected or EmptyGraph.
  Hypergraph(std::size_t num_nodes, std::vector<std::vector<NodeId>> edges,
             std::vector<double> weights);

  explicit Hypergraph(RawHypergraph raw);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_edges() const noexcept { return weights_.size(); }
  /// Σ_e |e|.
  std::size_t num_pins() const noexcept { return pins_.size(); }

  std::span<const NodeId> edge(EdgeId e) const {
    return {pins_.data() + edge_offsets_[e], pins_.data() + edge_offsets_[e + 1]};
  }
  /// Offset of edge e's first slot in the flat pin array.
  std::size_t edge_offset(EdgeId e) const { return edge_offsets_[e]; }
  std::span<const NodeId> pins() const noexcept { return pins_; }

  double weight(EdgeId e) const { return weights_[e]; }
  std::span<const double> weights() const noexcept { return weights_; }

  std::span<const Incidence> incident(NodeId v) const {
    return {incidences_.data() + node_offsets_[v],
            incidences_.data() + node_offsets_[v + 1]};
  }

  /// δ(e) = |e|; checks the index.
  std::size_t edge_degree(EdgeId e) const;
  /// d(v) = Σ_{e ∋ v} w(e); checks the index.
  double node_degree(NodeId v) const;
  std::span<const double> degrees() const noexcept { return degrees_; }
  /// √d(v) for every node.
  std::span<const double> sqrt_degrees() const noexcept { return sqrt_degrees_; }

  /// Σ_{u ∈ nodes} d(u). Ids are range-checked.
  double volume(std::span<const NodeId> nodes) const;
  double total_volume() const noexcept { return total_volume_; }

  /// Edges in raw form, e.g. for serialization.
  RawHypergraph to_raw() const;

 private:
  std::size_t num_nodes_;
  std::vector<std::size_t> edge_offsets_;
  std::vector<NodeId> pins_;
  std::vector<double> weights_;
  std::vector<std::size_t> node_offsets_;
  std::vector<Incidence> incidences_;
  std::vector<double> degrees_;
  std::vector<double> sqrt_degrees_;
  double total_volume_ = 0.0;
};

/// Connected components of the node/edge incidence structure. Nodes lying in
/// no edge form singleton components. Component ids are assigned in order of
/// each component's smallest node id.
struct Components {
  std::vector<std::uint32_t> component_of;
  std::size_t count = 0;
};

/// Structural checks are skipped; only node ids must be in range.
Components connected_components(const RawHypergraph& raw);

struct ComponentExtraction {
  Hypergraph hypergraph;
  /// original_ids[new_id] = id in the input.
  std::vector<NodeId> original_ids;
  /// Number of components in the input (1 when it was already connected).
  std::size_t component_count = 1;
};

/// Sub-hypergraph induced on the largest connected component, node ids
/// remapped densely in increasing original order. Size ties go to the
/// component containing the smallest original node id. Throws EmptyGraph
/// when no edge exists.
ComponentExtraction largest_component(const RawHypergraph& raw);

}  // namespace hyperlap
