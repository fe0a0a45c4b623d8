// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

// Fixtures, random instance generators and independent reference
// implementations shared by the unit tests and the acceptance binary.
//
// The oracles work from first principles: explicit orderings of every edge,
// dense matrices built entry by entry, exhaustive enumeration. None of them
// call into the library beyond the Hypergraph accessors.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "hyperlap/hypergraph.hpp"
#include "hyperlap/random.hpp"

namespace hyperlap::testing {

inline Hypergraph t3() { return Hypergraph(3, {{0, 1, 2}}, {1.0}); }
inline Hypergraph g2() { return Hypergraph(4, {{0, 1, 2}, {2, 3}}, {1.0, 1.0}); }

struct RandomSpec {
  std::size_t min_nodes = 3;
  std::size_t max_nodes = 12;
  std::size_t max_edge_size = 5;
  std::size_t extra_edges = 6;
  double min_weight = 0.5;
  double max_weight = 2.0;
  /// Every edge has exactly two nodes.
  bool graph = false;
};

/// Connected random hypergraph: a random spanning chain of edges plus extras.
inline Hypergraph random_hypergraph(Rng& rng, const RandomSpec& spec = {}) {
  const std::size_t n =
      spec.min_nodes + uniform_index(rng, spec.max_nodes - spec.min_nodes + 1);
  const std::size_t max_size = spec.graph ? 2 : std::min(spec.max_edge_size, n);
  auto edge_size = [&]() { return spec.graph ? 2 : 2 + uniform_index(rng, max_size - 1); };

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  shuffle(order, rng);
  std::vector<std::vector<NodeId>> edges;
  // Chain: each edge contains the previous tail, so the union is connected.
  std::size_t covered = 1;
  while (covered < n) {
    const std::size_t take = std::min(edge_size() - 1, n - covered);
    std::vector<NodeId> e{order[covered - 1]};
    for (std::size_t i = 0; i < take; ++i) e.push_back(order[covered + i]);
    covered += take;
    edges.push_back(std::move(e));
  }
  const std::size_t extras = uniform_index(rng, spec.extra_edges + 1);
  for (std::size_t i = 0; i < extras; ++i) {
    std::vector<NodeId> pool(n);
    std::iota(pool.begin(), pool.end(), NodeId{0});
    shuffle(pool, rng);
    pool.resize(edge_size());
    edges.push_back(std::move(pool));
  }
  std::vector<double> weights(edges.size());
  for (double& w : weights) w = uniform_real(rng, spec.min_weight, spec.max_weight);
  return Hypergraph(n, std::move(edges), std::move(weights));
}

inline std::vector<double> random_function(Rng& rng, std::size_t n, double lo = -1.0,
                                           double hi = 1.0) {
  std::vector<double> f(n);
  for (double& x : f) x = uniform_real(rng, lo, hi);
  return f;
}

/// Dense √d(v) vector.
inline std::vector<double> sqrt_d(const Hypergraph& h) {
  return {h.sqrt_degrees().begin(), h.sqrt_degrees().end()};
}

// ---------------------------------------------------------------------------
// Explicit directed-edge oracles

/// Calls visit(e, ordering) for every one of the δ_e! orderings of every edge.
template <typename Visit>
void for_each_ordering(const Hypergraph& h, Visit visit) {
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    std::vector<NodeId> perm(h.edge(e).begin(), h.edge(e).end());
    std::sort(perm.begin(), perm.end());
    do {
      visit(e, perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

inline double factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

/// Gradient on one directed edge [v1, ..., vδ].
inline double oracle_gradient(const Hypergraph& h, EdgeId e, const std::vector<NodeId>& ordering,
                              const std::vector<double>& psi) {
  const double delta = static_cast<double>(ordering.size());
  double sum = 0.0;
  for (NodeId u : ordering) sum += psi[u] / std::sqrt(h.node_degree(u));
  const NodeId head = ordering.front();
  return std::sqrt(h.weight(e)) / std::sqrt(delta - 1.0) *
         (sum - delta * psi[head] / std::sqrt(h.node_degree(head)));
}

/// ‖∇ψ(v)‖ from the full sum over directed edges headed at v, weighted 1/δ_e!.
inline std::vector<double> oracle_norms(const Hypergraph& h, const std::vector<double>& psi) {
  std::vector<double> sq(h.num_nodes(), 0.0);
  for_each_ordering(h, [&](EdgeId e, const std::vector<NodeId>& o) {
    const double g = oracle_gradient(h, e, o, psi);
    sq[o.front()] += g * g / factorial(o.size());
  });
  for (double& x : sq) x = std::sqrt(x);
  return sq;
}

/// Dense clique-expansion weights w(u,v) = Σ_{e∋u,v} w(e)/(δ_e−1).
inline Eigen::MatrixXd oracle_adjacency(const Hypergraph& h) {
  const auto n = static_cast<Eigen::Index>(h.num_nodes());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto nodes = h.edge(e);
    const double c = h.weight(e) / static_cast<double>(nodes.size() - 1);
    for (NodeId u : nodes) {
      for (NodeId v : nodes) {
        if (u != v) w(u, v) += c;
      }
    }
  }
  return w;
}

/// I − D^{-1/2} A D^{-1/2} for a dense adjacency with row sums as degrees.
inline Eigen::MatrixXd normalized_graph_laplacian(const Eigen::MatrixXd& a) {
  const Eigen::VectorXd inv_sqrt = a.rowwise().sum().cwiseSqrt().cwiseInverse();
  return Eigen::MatrixXd::Identity(a.rows(), a.cols()) -
         inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
}

/// I − D_v^{-1/2} H W_e D_e^{-1} Hᵀ D_v^{-1/2} with H the incidence matrix.
inline Eigen::MatrixXd oracle_zhou(const Hypergraph& h) {
  const auto n = static_cast<Eigen::Index>(h.num_nodes());
  const auto m = static_cast<Eigen::Index>(h.num_edges());
  Eigen::MatrixXd inc = Eigen::MatrixXd::Zero(n, m);
  Eigen::VectorXd core(m);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    for (NodeId v : h.edge(e)) inc(v, e) = 1.0;
    core(e) = h.weight(e) / static_cast<double>(h.edge(e).size());
  }
  Eigen::VectorXd dv = inc * Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
                                 h.weights().data(), m));
  const Eigen::VectorXd inv_sqrt = dv.cwiseSqrt().cwiseInverse();
  return Eigen::MatrixXd::Identity(n, n) -
         inv_sqrt.asDiagonal() * inc * core.asDiagonal() * inc.transpose() * inv_sqrt.asDiagonal();
}

/// Ncut of an assignment straight from the clique-expansion weights.
inline double oracle_multiclass_ncut(const Hypergraph& h, const std::vector<std::uint32_t>& asg,
                                     std::size_t k) {
  const Eigen::MatrixXd w = oracle_adjacency(h);
  double total = 0.0;
  for (std::uint32_t c = 0; c < k; ++c) {
    double cut = 0.0, vol = 0.0;
    for (std::size_t u = 0; u < asg.size(); ++u) {
      if (asg[u] != c) continue;
      vol += h.node_degree(static_cast<NodeId>(u));
      for (std::size_t v = 0; v < asg.size(); ++v) {
        if (asg[v] != c) cut += w(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
      }
    }
    total += cut / vol;
  }
  return total;
}

/// Minimum k-way Ncut over all k^n assignments using every cluster.
inline double oracle_brute_force_ncut(const Hypergraph& h, std::size_t k) {
  const std::size_t n = h.num_nodes();
  std::vector<std::uint32_t> asg(n, 0);
  double best = INFINITY;
  while (true) {
    std::vector<std::uint8_t> used(k, 0);
    for (auto c : asg) used[c] = 1;
    if (std::all_of(used.begin(), used.end(), [](std::uint8_t u) { return u != 0; })) {
      best = std::min(best, oracle_multiclass_ncut(h, asg, k));
    }
    std::size_t i = 0;
    while (i < n && ++asg[i] == k) asg[i++] = 0;
    if (i == n) break;
  }
  return best;
}

/// Mismatch fraction under the best label permutation, by enumeration.
inline double oracle_error_rate(const std::vector<std::uint32_t>& pred,
                                const std::vector<std::uint32_t>& truth, std::size_t k) {
  std::vector<std::uint32_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0u);
  std::size_t best = pred.size();
  do {
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) wrong += perm[pred[i]] != truth[i];
    best = std::min(best, wrong);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(pred.size());
}

/// Two dense clusters of size m, every node in a few random within-cluster
/// edges, joined by a single light pair edge. Labels: cluster id.
struct Planted {
  Hypergraph h;
  std::vector<std::uint32_t> labels;
};

inline Planted planted(Rng& rng, std::size_t clusters, std::size_t m, double bridge_weight = 0.05) {
  const std::size_t n = clusters * m;
  std::vector<std::vector<NodeId>> edges;
  std::vector<double> weights;
  std::vector<std::uint32_t> labels(n);
  for (std::size_t c = 0; c < clusters; ++c) {
    const auto base = static_cast<NodeId>(c * m);
    for (std::size_t i = 0; i < m; ++i) labels[base + i] = static_cast<std::uint32_t>(c);
    // One edge spanning the cluster keeps it connected.
    std::vector<NodeId> all(m);
    std::iota(all.begin(), all.end(), base);
    edges.push_back(all);
    weights.push_back(1.0);
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<NodeId> pool = all;
      shuffle(pool, rng);
      pool.resize(std::min<std::size_t>(m, 2 + uniform_index(rng, 3)));
      edges.push_back(pool);
      weights.push_back(1.0);
    }
    if (c > 0) {
      edges.push_back({static_cast<NodeId>(base - 1), base});
      weights.push_back(bridge_weight);
    }
  }
  return {Hypergraph(n, std::move(edges), std::move(weights)), std::move(labels)};
}

}  // namespace hyperlap::testing
