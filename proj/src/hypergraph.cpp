// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hyperlap/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hyperlap/error.hpp"

namespace hyperlap {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root wins so that roots are component minima.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
  }

 private:
  std::vector<std::size_t> parent_;
};

void check_ids(const RawHypergraph& raw) {
  for (std::size_t e = 0; e < raw.edges.size(); ++e) {
    for (NodeId v : raw.edges[e]) {
      if (v >= raw.num_nodes) {
        fail(ErrorKind::NodeIdOutOfRange, "edge " + std::to_string(e) + " references node " +
                                              std::to_string(v) + " but num_nodes is " +
                                              std::to_string(raw.num_nodes));
      }
    }
  }
}

}  // namespace

Hypergraph::Hypergraph(RawHypergraph raw)
    : Hypergraph(raw.num_nodes, std::move(raw.edges), std::move(raw.weights)) {}

Hypergraph::Hypergraph(std::size_t num_nodes, std::vector<std::vector<NodeId>> edges,
                       std::vector<double> weights)
    : num_nodes_(num_nodes), weights_(std::move(weights)) {
  if (num_nodes_ == 0 || edges.empty()) {
    fail(ErrorKind::EmptyGraph, "a hypergraph needs at least one node and one edge");
  }
  if (edges.size() != weights_.size()) {
    fail(ErrorKind::InvalidArgument, "got " + std::to_string(edges.size()) + " edges but " +
                                         std::to_string(weights_.size()) + " weights");
  }

  std::vector<NodeId> sorted;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& members = edges[e];
    if (members.size() < 2) {
      fail(ErrorKind::SingletonEdge,
           "edge " + std::to_string(e) + " has " + std::to_string(members.size()) +
               " node(s); at least 2 are required");
    }
    for (NodeId v : members) {
      if (v >= num_nodes_) {
        fail(ErrorKind::NodeIdOutOfRange, "edge " + std::to_string(e) + " references node " +
                                              std::to_string(v) + " but num_nodes is " +
                                              std::to_string(num_nodes_));
      }
    }
    sorted.assign(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail(ErrorKind::DuplicateNode, "edge " + std::to_string(e) + " lists a node twice");
    }
    if (!(weights_[e] > 0.0) || !std::isfinite(weights_[e])) {
      fail(ErrorKind::NonPositiveWeight, "edge " + std::to_string(e) + " has weight " +
                                             std::to_string(weights_[e]));
    }
  }

  edge_offsets_.reserve(edges.size() + 1);
  edge_offsets_.push_back(0);
  for (const auto& members : edges) {
    pins_.insert(pins_.end(), members.begin(), members.end());
    edge_offsets_.push_back(pins_.size());
  }

  // Node -> incident (edge, slot) lists.
  node_offsets_.assign(num_nodes_ + 1, 0);
  for (NodeId v : pins_) ++node_offsets_[v + 1];
  std::partial_sum(node_offsets_.begin(), node_offsets_.end(), node_offsets_.begin());
  incidences_.resize(pins_.size());
  std::vector<std::size_t> cursor(node_offsets_.begin(), node_offsets_.end() - 1);
  degrees_.assign(num_nodes_, 0.0);
  for (EdgeId e = 0; e < num_edges(); ++e) {
    for (std::size_t k = edge_offsets_[e]; k < edge_offsets_[e + 1]; ++k) {
      const NodeId v = pins_[k];
      incidences_[cursor[v]++] = {e, static_cast<std::uint32_t>(k - edge_offsets_[e])};
      degrees_[v] += weights_[e];
    }
  }

  const Components comps = connected_components(to_raw());
  if (comps.count > 1) {
    fail(ErrorKind::Disconnected,
         "hypergraph has " + std::to_string(comps.count) + " connected components");
  }

  sqrt_degrees_.resize(num_nodes_);
  for (std::size_t v = 0; v < num_nodes_; ++v) sqrt_degrees_[v] = std::sqrt(degrees_[v]);
  total_volume_ = std::accumulate(degrees_.begin(), degrees_.end(), 0.0);
}

std::size_t Hypergraph::edge_degree(EdgeId e) const {
  if (e >= num_edges()) {
    fail(ErrorKind::InvalidArgument, "edge index " + std::to_string(e) + " out of range");
  }
  return edge_offsets_[e + 1] - edge_offsets_[e];
}

double Hypergraph::node_degree(NodeId v) const {
  if (v >= num_nodes_) {
    fail(ErrorKind::NodeIdOutOfRange, "node " + std::to_string(v) + " out of range");
  }
  return degrees_[v];
}

double Hypergraph::volume(std::span<const NodeId> nodes) const {
  double vol = 0.0;
  for (NodeId v : nodes) vol += node_degree(v);
  return vol;
}

RawHypergraph Hypergraph::to_raw() const {
  RawHypergraph raw;
  raw.num_nodes = num_nodes_;
  raw.weights = weights_;
  raw.edges.reserve(num_edges());
  for (EdgeId e = 0; e < num_edges(); ++e) {
    const auto members = edge(e);
    raw.edges.emplace_back(members.begin(), members.end());
  }
  return raw;
}

Components connected_components(const RawHypergraph& raw) {
  check_ids(raw);
  DisjointSets sets(raw.num_nodes);
  for (const auto& members : raw.edges) {
    for (std::size_t k = 1; k < members.size(); ++k) sets.unite(members[0], members[k]);
  }
  Components out;
  out.component_of.assign(raw.num_nodes, 0);
  std::vector<std::uint32_t> id_of_root(raw.num_nodes, UINT32_MAX);
  for (std::size_t v = 0; v < raw.num_nodes; ++v) {
    const std::size_t root = sets.find(v);
    if (id_of_root[root] == UINT32_MAX) id_of_root[root] = static_cast<std::uint32_t>(out.count++);
    out.component_of[v] = id_of_root[root];
  }
  return out;
}

ComponentExtraction largest_component(const RawHypergraph& raw) {
  if (raw.num_nodes == 0 || raw.edges.empty()) {
    fail(ErrorKind::EmptyGraph, "no edges to extract a component from");
  }
  const Components comps = connected_components(raw);

  // Only components that contain an edge are candidates.
  std::vector<std::size_t> size(comps.count, 0);
  std::vector<bool> has_edge(comps.count, false);
  for (std::size_t v = 0; v < raw.num_nodes; ++v) ++size[comps.component_of[v]];
  for (const auto& members : raw.edges) {
    if (!members.empty()) has_edge[comps.component_of[members[0]]] = true;
  }
  std::size_t best = comps.count;
  for (std::size_t c = 0; c < comps.count; ++c) {
    // Component ids follow smallest node id, so strict '>' keeps the tie-break.
    if (has_edge[c] && (best == comps.count || size[c] > size[best])) best = c;
  }
  if (best == comps.count) fail(ErrorKind::EmptyGraph, "no component contains an edge");

  std::vector<NodeId> new_id(raw.num_nodes, UINT32_MAX);
  std::vector<NodeId> original_ids;
  for (std::size_t v = 0; v < raw.num_nodes; ++v) {
    if (comps.component_of[v] == best) {
      new_id[v] = static_cast<NodeId>(original_ids.size());
      original_ids.push_back(static_cast<NodeId>(v));
    }
  }

  RawHypergraph sub;
  sub.num_nodes = original_ids.size();
  for (std::size_t e = 0; e < raw.edges.size(); ++e) {
    const auto& members = raw.edges[e];
    if (members.empty() || comps.component_of[members[0]] != best) continue;
    std::vector<NodeId> mapped;
    mapped.reserve(members.size());
    for (NodeId v : members) mapped.push_back(new_id[v]);
    sub.edges.push_back(std::move(mapped));
    sub.weights.push_back(raw.weights.at(e));
  }
  return {Hypergraph(std::move(sub)), std::move(original_ids), comps.count};
}

}  // namespace hyperlap
