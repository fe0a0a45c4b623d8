// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hyperlap/calculus.hpp"

#include <cmath>
#include <string>

#include "hyperlap/error.hpp"

namespace hyperlap {
namespace {

void check_function(const Hypergraph& h, std::span<const double> psi) {
  if (psi.size() != h.num_nodes()) {
    fail(ErrorKind::LengthMismatch, "function has " + std::to_string(psi.size()) +
                                        " values but the hypergraph has " +
                                        std::to_string(h.num_nodes()) + " nodes");
  }
}

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    fail(ErrorKind::InvalidP, "p must be a finite real >= 1, got " + std::to_string(p));
  }
}

}  // namespace

double floored_pow(double x, double exponent) {
  if (exponent == 0.0) return 1.0;
  if (exponent < 0.0 && x < kNormFloor) x = kNormFloor;
  return std::pow(x, exponent);
}

double EdgeVertexField::value(const Hypergraph& h, EdgeId e, NodeId v) const {
  const auto members = h.edge(e);
  for (std::uint32_t s = 0; s < members.size(); ++s) {
    if (members[s] == v) return at(h, e, s);
  }
  fail(ErrorKind::InvalidArgument,
       "node " + std::to_string(v) + " is not in edge " + std::to_string(e));
}

void EdgeVertexField::check_paired(const Hypergraph& h) const {
  if (values_.size() != h.num_pins()) {
    fail(ErrorKind::FieldMismatch, "field has " + std::to_string(values_.size()) +
                                       " entries, hypergraph has " +
                                       std::to_string(h.num_pins()) + " (edge, node) pairs");
  }
}

EdgeVertexField gradient(const Hypergraph& h, std::span<const double> psi) {
  check_function(h, psi);
  const auto sqrt_d = h.sqrt_degrees();
  EdgeVertexField grad(h);
  auto out = grad.values();
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto members = h.edge(e);
    const double delta = static_cast<double>(members.size());
    const double scale = std::sqrt(h.weight(e) / (delta - 1.0));
    double total = 0.0;
    for (NodeId u : members) total += psi[u] / sqrt_d[u];
    const std::size_t base = h.edge_offset(e);
    for (std::size_t s = 0; s < members.size(); ++s) {
      const NodeId v = members[s];
      out[base + s] = scale * (total - delta * psi[v] / sqrt_d[v]);
    }
  }
  return grad;
}

NodeFunction gradient_norms(const Hypergraph& h, const EdgeVertexField& grad) {
  grad.check_paired(h);
  NodeFunction squared(h.num_nodes(), 0.0);
  const auto g = grad.values();
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto members = h.edge(e);
    const double inv_delta = 1.0 / static_cast<double>(members.size());
    const std::size_t base = h.edge_offset(e);
    for (std::size_t s = 0; s < members.size(); ++s) {
      squared[members[s]] += g[base + s] * g[base + s] * inv_delta;
    }
  }
  for (double& x : squared) x = std::sqrt(x);
  return squared;
}

NodeFunction gradient_norms(const Hypergraph& h, std::span<const double> psi) {
  return gradient_norms(h, gradient(h, psi));
}

double gradient_norm(const Hypergraph& h, std::span<const double> psi, NodeId v) {
  check_function(h, psi);
  if (v >= h.num_nodes()) fail(ErrorKind::NodeIdOutOfRange, "node " + std::to_string(v));
  const auto sqrt_d = h.sqrt_degrees();
  double squared = 0.0;
  for (const Incidence inc : h.incident(v)) {
    const auto members = h.edge(inc.edge);
    const double delta = static_cast<double>(members.size());
    double total = 0.0;
    for (NodeId u : members) total += psi[u] / sqrt_d[u];
    const double g =
        std::sqrt(h.weight(inc.edge) / (delta - 1.0)) * (total - delta * psi[v] / sqrt_d[v]);
    squared += g * g / delta;
  }
  return std::sqrt(squared);
}

GradientProfile gradient_profile(const Hypergraph& h, std::span<const double> psi) {
  GradientProfile profile{gradient(h, psi), {}};
  profile.node_norms = gradient_norms(h, profile.field);
  return profile;
}

double dirichlet_sum_from_norms(std::span<const double> node_norms, double p) {
  check_p(p);
  double sum = 0.0;
  if (p == 2.0) {
    for (double n : node_norms) sum += n * n;
  } else {
    for (double n : node_norms) sum += std::pow(n, p);
  }
  return sum;
}

double dirichlet_sum(const Hypergraph& h, std::span<const double> psi, double p) {
  check_p(p);
  return dirichlet_sum_from_norms(gradient_norms(h, psi), p);
}

double edge_p_mean(const Hypergraph& h, std::span<const double> node_norms, EdgeId e, double p) {
  check_p(p);
  const auto members = h.edge(e);
  double sum = 0.0;
  for (NodeId v : members) sum += std::pow(node_norms[v], p);
  return std::pow(sum / static_cast<double>(members.size()), 1.0 / p);
}

double edge_mean_of_powers(const Hypergraph& h, std::span<const double> node_norms, EdgeId e,
                           double exponent) {
  const auto members = h.edge(e);
  double sum = 0.0;
  for (NodeId v : members) sum += floored_pow(node_norms[v], exponent);
  return sum / static_cast<double>(members.size());
}

double inner_product_nodes(std::span<const double> f, std::span<const double> g) {
  if (f.size() != g.size()) {
    fail(ErrorKind::LengthMismatch, "lengths " + std::to_string(f.size()) + " and " +
                                        std::to_string(g.size()) + " differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * g[i];
  return sum;
}

double inner_product_edges(const Hypergraph& h, const EdgeVertexField& f,
                           const EdgeVertexField& g) {
  f.check_paired(h);
  g.check_paired(h);
  const auto fv = f.values();
  const auto gv = g.values();
  double sum = 0.0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const std::size_t begin = h.edge_offset(e);
    const std::size_t delta = h.edge(e).size();
    double edge_sum = 0.0;
    for (std::size_t k = begin; k < begin + delta; ++k) edge_sum += fv[k] * gv[k];
    sum += edge_sum / static_cast<double>(delta);
  }
  return sum;
}

NodeFunction divergence(const Hypergraph& h, const EdgeVertexField& phi) {
  phi.check_paired(h);
  const auto sqrt_d = h.sqrt_degrees();
  const auto values = phi.values();
  NodeFunction div(h.num_nodes(), 0.0);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto members = h.edge(e);
    const double delta = static_cast<double>(members.size());
    const double scale = std::sqrt(h.weight(e) / (delta - 1.0));
    const std::size_t base = h.edge_offset(e);
    double mean = 0.0;
    for (std::size_t s = 0; s < members.size(); ++s) mean += values[base + s];
    mean /= delta;
    for (std::size_t s = 0; s < members.size(); ++s) {
      const NodeId v = members[s];
      div[v] += scale / sqrt_d[v] * (values[base + s] - mean);
    }
  }
  return div;
}

NodeFunction sqrt_degree_vector(const Hypergraph& h) {
  const auto s = h.sqrt_degrees();
  return NodeFunction(s.begin(), s.end());
}

}  // namespace hyperlap
