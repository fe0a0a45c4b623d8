// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hyperlap/laplacians.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "hyperlap/error.hpp"

namespace hyperlap {
namespace {

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    fail(ErrorKind::InvalidP, "p must be a finite real >= 1, got " + std::to_string(p));
  }
}

void check_length(const Hypergraph& h, std::span<const double> x) {
  if (x.size() != h.num_nodes()) {
    fail(ErrorKind::LengthMismatch, "function has " + std::to_string(x.size()) +
                                        " values, hypergraph has " +
                                        std::to_string(h.num_nodes()) + " nodes");
  }
}

// Σ_{u<v in e} (a_u + a_v − ā)(x_u − x_v)² for one edge, in O(δ).
double edge_pair_quadratic(std::span<const NodeId> members, std::span<const double> a, double a_bar,
                           std::span<const double> x) {
  const double delta = static_cast<double>(members.size());
  double sum_x = 0.0, sum_x2 = 0.0, sum_a = 0.0, sum_ax = 0.0, sum_ax2 = 0.0;
  for (NodeId u : members) {
    const double au = a.empty() ? 1.0 : a[u];
    sum_x += x[u];
    sum_x2 += x[u] * x[u];
    sum_a += au;
    sum_ax += au * x[u];
    sum_ax2 += au * x[u] * x[u];
  }
  // Σ_{u,v} a_u (x_u − x_v)² = δ Σ a x² − 2 (Σ a x)(Σ x) + (Σ a)(Σ x²).
  const double weighted = delta * sum_ax2 - 2.0 * sum_ax * sum_x + sum_a * sum_x2;
  const double plain = delta * sum_x2 - sum_x * sum_x;
  return weighted - a_bar * plain;
}

}  // namespace

LinearOperator::LinearOperator(std::size_t dim, Kernel kernel)
    : dim_(dim), kernel_(std::move(kernel)) {}

NodeFunction LinearOperator::apply(std::span<const double> x) const {
  if (x.size() != dim_) {
    fail(ErrorKind::LengthMismatch, "operator of dimension " + std::to_string(dim_) +
                                        " applied to vector of length " +
                                        std::to_string(x.size()));
  }
  NodeFunction y(dim_, 0.0);
  kernel_(x, y);
  return y;
}

void LinearOperator::apply_into(std::span<const double> x, std::span<double> y) const {
  kernel_(x, y);
}

Eigen::MatrixXd LinearOperator::dense(std::size_t max_dim) const {
  if (dim_ > max_dim) {
    fail(ErrorKind::TooLarge, "refusing to materialize a " + std::to_string(dim_) +
                                  "-dimensional operator (limit " + std::to_string(max_dim) +
                                  ")");
  }
  Eigen::MatrixXd m(dim_, dim_);
  std::vector<double> e(dim_, 0.0), col(dim_, 0.0);
  for (std::size_t j = 0; j < dim_; ++j) {
    e[j] = 1.0;
    kernel_(e, col);
    for (std::size_t i = 0; i < dim_; ++i) m(i, j) = col[i];
    e[j] = 0.0;
  }
  return m;
}

double PLaplacianCoefficients::pair_weight(const Hypergraph& h, NodeId u, NodeId v) const {
  if (u >= h.num_nodes() || v >= h.num_nodes()) {
    fail(ErrorKind::NodeIdOutOfRange, "pair (" + std::to_string(u) + ", " + std::to_string(v) + ")");
  }
  if (u == v) return 0.0;
  double total = 0.0;
  for (const Incidence inc : h.incident(u)) {
    const auto members = h.edge(inc.edge);
    if (std::find(members.begin(), members.end(), v) == members.end()) continue;
    const double delta = static_cast<double>(members.size());
    total += h.weight(inc.edge) / (delta - 1.0) *
             (node_factor[u] + node_factor[v] - edge_mean[inc.edge]);
  }
  return total;
}

std::vector<PairWeight> PLaplacianCoefficients::pair_weights(const Hypergraph& h) const {
  std::map<std::pair<NodeId, NodeId>, double> acc;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto members = h.edge(e);
    const double scale = h.weight(e) / (static_cast<double>(members.size()) - 1.0);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const NodeId u = std::min(members[i], members[j]);
        const NodeId v = std::max(members[i], members[j]);
        acc[{u, v}] += scale * (node_factor[u] + node_factor[v] - edge_mean[e]);
      }
    }
  }
  std::vector<PairWeight> out;
  out.reserve(acc.size());
  for (const auto& [key, w] : acc) out.push_back({key.first, key.second, w});
  return out;
}

NodeFunction PLaplacianCoefficients::apply_pair_weights(const Hypergraph& h,
                                                        std::span<const double> x) const {
  check_length(h, x);
  NodeFunction y(h.num_nodes(), 0.0);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto members = h.edge(e);
    const double scale = h.weight(e) / (static_cast<double>(members.size()) - 1.0);
    double sum_x = 0.0, sum_ax = 0.0;
    for (NodeId u : members) {
      sum_x += x[u];
      sum_ax += node_factor[u] * x[u];
    }
    const double a_bar = edge_mean[e];
    for (NodeId v : members) {
      const double others = sum_x - x[v];
      y[v] += scale * ((sum_ax - node_factor[v] * x[v]) + (node_factor[v] - a_bar) * others);
    }
  }
  return y;
}

PLaplacianCoefficients p_coefficients(const Hypergraph& h, std::span<const double> psi, double p) {
  check_p(p);
  check_length(h, psi);
  PLaplacianCoefficients c;
  c.p = p;
  c.psi.assign(psi.begin(), psi.end());
  c.node_norms = gradient_norms(h, psi);
  c.node_factor.resize(h.num_nodes());
  for (std::size_t v = 0; v < h.num_nodes(); ++v) {
    c.node_factor[v] = floored_pow(c.node_norms[v], p - 2.0);
  }
  c.edge_mean.resize(h.num_edges());
  c.node_coeffs.assign(h.num_nodes(), 0.0);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto members = h.edge(e);
    const double delta = static_cast<double>(members.size());
    double sum = 0.0;
    for (NodeId v : members) sum += c.node_factor[v];
    const double a_bar = sum / delta;
    c.edge_mean[e] = a_bar;
    const double scale = h.weight(e) / (delta - 1.0);
    for (NodeId v : members) c.node_coeffs[v] += scale * (a_bar + (delta - 2.0) * c.node_factor[v]);
  }
  return c;
}

double l_entry(const Hypergraph& h, const PLaplacianCoefficients& c, NodeId u, NodeId v) {
  const auto d = h.degrees();
  if (u == v) {
    if (u >= h.num_nodes()) fail(ErrorKind::NodeIdOutOfRange, "node " + std::to_string(u));
    return c.node_coeffs[u] / d[u];
  }
  return -c.pair_weight(h, u, v) / std::sqrt(d[u] * d[v]);
}

LinearOperator p_laplacian_operator(const Hypergraph& h, const PLaplacianCoefficients& c) {
  return LinearOperator(h.num_nodes(), [&h, c](std::span<const double> x, std::span<double> y) {
    const auto sqrt_d = h.sqrt_degrees();
    NodeFunction scaled(x.size());
    for (std::size_t v = 0; v < x.size(); ++v) scaled[v] = x[v] / sqrt_d[v];
    const NodeFunction wx = c.apply_pair_weights(h, scaled);
    for (std::size_t v = 0; v < x.size(); ++v) {
      y[v] = (c.node_coeffs[v] * scaled[v] - wx[v]) / sqrt_d[v];
    }
  });
}

NodeFunction apply_p_laplacian(const Hypergraph& h, std::span<const double> psi, double p) {
  const PLaplacianCoefficients c = p_coefficients(h, psi, p);
  return p_laplacian_operator(h, c).apply(psi);
}

NodeFunction apply_p_laplacian_divergence(const Hypergraph& h, std::span<const double> psi,
                                          double p) {
  check_p(p);
  GradientProfile profile = gradient_profile(h, psi);
  auto values = profile.field.values();
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto members = h.edge(e);
    const std::size_t base = h.edge_offset(e);
    for (std::size_t s = 0; s < members.size(); ++s) {
      values[base + s] *= floored_pow(profile.node_norms[members[s]], p - 2.0);
    }
  }
  NodeFunction out = divergence(h, profile.field);
  for (double& x : out) x = -x;
  return out;
}

LinearOperator laplacian_p2(const Hypergraph& h) {
  return LinearOperator(h.num_nodes(), [&h](std::span<const double> x, std::span<double> y) {
    const auto sqrt_d = h.sqrt_degrees();
    for (std::size_t v = 0; v < x.size(); ++v) y[v] = x[v];
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      const auto members = h.edge(e);
      const double scale = h.weight(e) / (static_cast<double>(members.size()) - 1.0);
      double total = 0.0;
      for (NodeId u : members) total += x[u] / sqrt_d[u];
      for (NodeId v : members) y[v] -= scale * (total - x[v] / sqrt_d[v]) / sqrt_d[v];
    }
  });
}

LinearOperator zhou_laplacian(const Hypergraph& h) {
  return LinearOperator(h.num_nodes(), [&h](std::span<const double> x, std::span<double> y) {
    const auto sqrt_d = h.sqrt_degrees();
    for (std::size_t v = 0; v < x.size(); ++v) y[v] = x[v];
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      const auto members = h.edge(e);
      const double scale = h.weight(e) / static_cast<double>(members.size());
      double total = 0.0;
      for (NodeId u : members) total += x[u] / sqrt_d[u];
      for (NodeId v : members) y[v] -= scale * total / sqrt_d[v];
    }
  });
}

NodeFunction rodriguez_degrees(const Hypergraph& h) {
  NodeFunction d(h.num_nodes(), 0.0);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto members = h.edge(e);
    const double contribution = h.weight(e) * (static_cast<double>(members.size()) - 1.0);
    for (NodeId v : members) d[v] += contribution;
  }
  return d;
}

LinearOperator rodriguez_laplacian(const Hypergraph& h) {
  NodeFunction sqrt_dr = rodriguez_degrees(h);
  for (double& x : sqrt_dr) x = std::sqrt(x);
  return LinearOperator(h.num_nodes(), [&h, sqrt_dr = std::move(sqrt_dr)](
                                           std::span<const double> x, std::span<double> y) {
    for (std::size_t v = 0; v < x.size(); ++v) y[v] = x[v];
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      const auto members = h.edge(e);
      double total = 0.0;
      for (NodeId u : members) total += x[u] / sqrt_dr[u];
      for (NodeId v : members) y[v] -= h.weight(e) * (total - x[v] / sqrt_dr[v]) / sqrt_dr[v];
    }
  });
}

double rodriguez_p_quadratic(const Hypergraph& h, std::span<const double> psi, double p) {
  const PLaplacianCoefficients c = p_coefficients(h, psi, p);
  const auto sqrt_d = h.sqrt_degrees();
  NodeFunction scaled(psi.size());
  for (std::size_t v = 0; v < psi.size(); ++v) scaled[v] = psi[v] / sqrt_d[v];
  double total = 0.0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    total += h.weight(e) * edge_pair_quadratic(h.edge(e), c.node_factor, c.edge_mean[e], scaled);
  }
  return total;
}

double hein_regularizer(const Hypergraph& h, std::span<const double> psi, double p) {
  check_p(p);
  check_length(h, psi);
  double total = 0.0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto members = h.edge(e);
    double lo = psi[members[0]], hi = lo;
    for (NodeId v : members) {
      lo = std::min(lo, psi[v]);
      hi = std::max(hi, psi[v]);
    }
    total += h.weight(e) * std::pow(hi - lo, p);
  }
  return total;
}

RandomWalk random_walk(const Hypergraph& h) {
  // w(u,v) aggregated per edge: (W x)(v) = Σ_{e∋v} w(e)/(δ_e−1) (X_e − x_v).
  auto apply_w = [&h](std::span<const double> x, std::span<double> y) {
    std::fill(y.begin(), y.end(), 0.0);
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      const auto members = h.edge(e);
      const double scale = h.weight(e) / (static_cast<double>(members.size()) - 1.0);
      double total = 0.0;
      for (NodeId u : members) total += x[u];
      for (NodeId v : members) y[v] += scale * (total - x[v]);
    }
  };
  LinearOperator transition(h.num_nodes(), [&h, apply_w](std::span<const double> x,
                                                         std::span<double> y) {
    apply_w(x, y);
    const auto d = h.degrees();
    for (std::size_t v = 0; v < y.size(); ++v) y[v] /= d[v];
  });
  LinearOperator transpose(h.num_nodes(), [&h, apply_w](std::span<const double> x,
                                                        std::span<double> y) {
    const auto d = h.degrees();
    NodeFunction scaled(x.size());
    for (std::size_t v = 0; v < x.size(); ++v) scaled[v] = x[v] / d[v];
    apply_w(scaled, y);
  });
  NodeFunction pi(h.degrees().begin(), h.degrees().end());
  for (double& x : pi) x /= h.total_volume();
  return {std::move(transition), std::move(transpose), std::move(pi)};
}

double xi_p(double x, double p) {
  if (x == 0.0) return 0.0;
  const double mag = p == 2.0 ? std::abs(x) : std::pow(std::abs(x), p - 1.0);
  return x > 0.0 ? mag : -mag;
}

GraphComparison graph_comparison_operators(const Eigen::MatrixXd& adjacency,
                                           std::span<const double> psi, double p, NodeId v) {
  check_p(p);
  const auto n = static_cast<std::size_t>(adjacency.rows());
  if (adjacency.cols() != adjacency.rows()) {
    fail(ErrorKind::AsymmetricInput, "adjacency matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0.0) fail(ErrorKind::AsymmetricInput, "nonzero diagonal entry");
    for (std::size_t j = 0; j < n; ++j) {
      if (adjacency(i, j) < 0.0 || std::abs(adjacency(i, j) - adjacency(j, i)) > 1e-14) {
        fail(ErrorKind::AsymmetricInput, "adjacency is not symmetric and nonnegative");
      }
    }
  }
  if (psi.size() != n) fail(ErrorKind::LengthMismatch, "psi length differs from graph size");
  if (v >= n) fail(ErrorKind::NodeIdOutOfRange, "node " + std::to_string(v));

  const Eigen::VectorXd d = adjacency.rowwise().sum();
  std::vector<double> hat(n), norms(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) hat[i] = psi[i] / std::sqrt(d(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double diff = hat[j] - hat[i];
      norms[i] += adjacency(i, j) * diff * diff;
    }
    norms[i] = std::sqrt(norms[i]);
  }

  GraphComparison out;
  const double av = floored_pow(norms[v], p - 2.0);
  for (std::size_t u = 0; u < n; ++u) {
    const double w = adjacency(u, v);
    if (w == 0.0) continue;
    out.zhou06 += 0.5 * w / std::sqrt(d(v)) * (floored_pow(norms[u], p - 2.0) + av) *
                  (hat[v] - hat[u]);
    out.buhler_unnormalized += w * xi_p(psi[v] - psi[u], p);
  }
  out.buhler_normalized = out.buhler_unnormalized / d(v);
  return out;
}

}  // namespace hyperlap
