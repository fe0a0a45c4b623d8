// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hyperlap/error.hpp"
#include "hyperlap/random.hpp"
#include "hyperlap/spectral.hpp"

namespace hyperlap {
namespace {

void check_assignment_size(const Hypergraph& h, std::size_t size) {
  if (size != h.num_nodes()) {
    fail(ErrorKind::SizeMismatch, "assignment has " + std::to_string(size) +
                                      " entries, hypergraph has " +
                                      std::to_string(h.num_nodes()) + " nodes");
  }
}

// Σ_i ∂V(V_i, V∖V_i)/vol(V_i) with k known and all clusters nonempty.
double kway_ncut(const Hypergraph& h, std::span<const std::uint32_t> assignment, std::size_t k,
                 std::vector<double>& cut, std::vector<double>& vol,
                 std::vector<std::uint32_t>& count) {
  cut.assign(k, 0.0);
  vol.assign(k, 0.0);
  count.assign(k, 0);
  const auto d = h.degrees();
  for (std::size_t v = 0; v < h.num_nodes(); ++v) vol[assignment[v]] += d[v];
  std::vector<std::uint32_t> touched;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto members = h.edge(e);
    const double delta = static_cast<double>(members.size());
    const double scale = h.weight(e) / (delta - 1.0);
    touched.clear();
    for (NodeId v : members) {
      if (count[assignment[v]]++ == 0) touched.push_back(assignment[v]);
    }
    for (std::uint32_t c : touched) {
      const double inside = count[c];
      cut[c] += scale * inside * (delta - inside);
      count[c] = 0;
    }
  }
  double total = 0.0;
  for (std::size_t c = 0; c < k; ++c) total += cut[c] / vol[c];
  return total;
}

}  // namespace

double boundary(const Hypergraph& h, std::span<const std::uint8_t> in_a) {
  check_assignment_size(h, in_a.size());
  double total = 0.0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto members = h.edge(e);
    double a = 0.0;
    for (NodeId v : members) a += in_a[v] ? 1.0 : 0.0;
    const double delta = static_cast<double>(members.size());
    total += h.weight(e) / (delta - 1.0) * a * (delta - a);
  }
  return total;
}

double ncut_indicator(const Hypergraph& h, std::span<const std::uint8_t> in_a) {
  check_assignment_size(h, in_a.size());
  double vol_a = 0.0;
  std::size_t size_a = 0;
  const auto d = h.degrees();
  for (std::size_t v = 0; v < in_a.size(); ++v) {
    if (in_a[v]) {
      vol_a += d[v];
      ++size_a;
    }
  }
  if (size_a == 0 || size_a == h.num_nodes()) {
    fail(ErrorKind::DegeneratePartition, "Ncut needs a nonempty proper subset");
  }
  const double vol_b = h.total_volume() - vol_a;
  return boundary(h, in_a) * (1.0 / vol_a + 1.0 / vol_b);
}

double ncut(const Hypergraph& h, std::span<const NodeId> a) {
  std::vector<std::uint8_t> in_a(h.num_nodes(), 0);
  for (NodeId v : a) {
    if (v >= h.num_nodes()) fail(ErrorKind::NodeIdOutOfRange, "node " + std::to_string(v));
    in_a[v] = 1;
  }
  return ncut_indicator(h, in_a);
}

double multiclass_ncut(const Hypergraph& h, std::span<const std::uint32_t> assignment) {
  check_assignment_size(h, assignment.size());
  const std::size_t k = 1 + *std::max_element(assignment.begin(), assignment.end());
  if (k < 2) fail(ErrorKind::EmptyCluster, "a k-way cut needs at least two clusters");
  std::vector<std::uint8_t> used(k, 0);
  for (std::uint32_t c : assignment) used[c] = 1;
  for (std::size_t c = 0; c < k; ++c) {
    if (!used[c]) fail(ErrorKind::EmptyCluster, "cluster " + std::to_string(c) + " is empty");
  }
  std::vector<double> cut, vol;
  std::vector<std::uint32_t> count;
  return kway_ncut(h, assignment, k, cut, vol, count);
}

SweepResult threshold_sweep(const Hypergraph& h, std::span<const double> f) {
  const std::size_t n = h.num_nodes();
  if (f.size() != n) fail(ErrorKind::LengthMismatch, "sweep vector length differs from |V|");
  if (n < 2) fail(ErrorKind::DegeneratePartition, "cannot split fewer than two nodes");
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return f[a] < f[b]; });

  // Moving v into A changes edge e's crossing term by w/(δ−1)·(b − a − 1),
  // where a, b count e's nodes in A and B before the move.
  std::vector<std::uint32_t> in_a_count(h.num_edges(), 0);
  const auto d = h.degrees();
  double cut = 0.0, vol_a = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_prefix = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const NodeId v = order[i];
    for (const Incidence inc : h.incident(v)) {
      const double delta = static_cast<double>(h.edge(inc.edge).size());
      const double a = in_a_count[inc.edge];
      const double b = delta - a;
      cut += h.weight(inc.edge) / (delta - 1.0) * (b - a - 1.0);
      ++in_a_count[inc.edge];
    }
    vol_a += d[v];
    const double value = cut * (1.0 / vol_a + 1.0 / (h.total_volume() - vol_a));
    if (value < best) {
      best = value;
      best_prefix = i + 1;
    }
  }
  SweepResult out;
  out.assignment.assign(n, 1);
  for (std::size_t i = 0; i < best_prefix; ++i) out.assignment[order[i]] = 0;
  out.threshold = f[order[best_prefix - 1]];
  // Recompute from scratch so the stored value carries no drift.
  std::vector<std::uint8_t> in_a(n);
  for (std::size_t v = 0; v < n; ++v) in_a[v] = out.assignment[v] == 0;
  out.ncut_value = ncut_indicator(h, in_a);
  return out;
}

PartitionResult two_class_cut_p2(const Hypergraph& h, const EigenOptions& eig) {
  const LinearOperator lap = laplacian_p2(h);
  const EigenPairs pairs = smallest_eigenpairs(lap, 2, h.degrees(), eig);
  NodeFunction f = pairs.eigenvectors[1];
  const auto sqrt_d = h.sqrt_degrees();
  for (std::size_t v = 0; v < f.size(); ++v) f[v] /= sqrt_d[v];
  const SweepResult sweep = threshold_sweep(h, f);
  PartitionResult out;
  out.assignment = sweep.assignment;
  out.k = 2;
  out.ncut_value = sweep.ncut_value;
  out.method = "eigen-p2";
  out.p = 2.0;
  out.threshold = sweep.threshold;
  out.eigenvalues = pairs.eigenvalues;
  out.eigen_residual = pairs.max_residual;
  return out;
}

KMeansResult kmeans(const Eigen::MatrixXd& rows, std::size_t k, std::uint64_t seed,
                    std::size_t restarts, std::size_t max_iter) {
  const auto n = static_cast<std::size_t>(rows.rows());
  const Eigen::Index dim = rows.cols();
  if (k == 0 || k > n) {
    fail(ErrorKind::InvalidArgument,
         "k-means with k=" + std::to_string(k) + " on " + std::to_string(n) + " points");
  }
  if (restarts == 0) restarts = 1;
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();

  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, r));
    Eigen::MatrixXd centers(static_cast<Eigen::Index>(k), dim);
    // k-means++ seeding.
    std::vector<double> dist2(n, std::numeric_limits<double>::infinity());
    std::size_t first = uniform_index(rng, n);
    centers.row(0) = rows.row(static_cast<Eigen::Index>(first));
    for (std::size_t c = 1; c < k; ++c) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        dist2[i] = std::min(dist2[i], (rows.row(ii) - centers.row(static_cast<Eigen::Index>(c - 1))).squaredNorm());
        total += dist2[i];
      }
      std::size_t pick = 0;
      if (total > 0.0) {
        const double target = uniform_real(rng) * total;
        double acc = 0.0;
        pick = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
          acc += dist2[i];
          if (acc > target && dist2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      } else {
        pick = uniform_index(rng, n);
      }
      centers.row(static_cast<Eigen::Index>(c)) = rows.row(static_cast<Eigen::Index>(pick));
    }

    std::vector<std::uint32_t> assign(n, 0);
    std::vector<double> point_cost(n, 0.0);
    double inertia = std::numeric_limits<double>::infinity();
    std::size_t it = 0;
    for (; it < max_iter; ++it) {
      double next = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        double bd = std::numeric_limits<double>::infinity();
        std::uint32_t bc = 0;
        for (std::size_t c = 0; c < k; ++c) {
          const double dd = (rows.row(ii) - centers.row(static_cast<Eigen::Index>(c))).squaredNorm();
          if (dd < bd) {
            bd = dd;
            bc = static_cast<std::uint32_t>(c);
          }
        }
        assign[i] = bc;
        point_cost[i] = bd;
        next += bd;
      }
      // Empty clusters take the point farthest from its center.
      std::vector<std::size_t> sizes(k, 0);
      for (std::uint32_t c : assign) ++sizes[c];
      for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] > 0) continue;
        std::size_t far = 0;
        for (std::size_t i = 1; i < n; ++i) {
          if (sizes[assign[i]] > 1 && (sizes[assign[far]] <= 1 || point_cost[i] > point_cost[far])) far = i;
        }
        --sizes[assign[far]];
        assign[far] = static_cast<std::uint32_t>(c);
        sizes[c] = 1;
        next -= point_cost[far];
        point_cost[far] = 0.0;
      }
      centers.setZero();
      for (std::size_t i = 0; i < n; ++i) {
        centers.row(assign[i]) += rows.row(static_cast<Eigen::Index>(i));
      }
      for (std::size_t c = 0; c < k; ++c) {
        centers.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(sizes[c]);
      }
      const bool settled = std::isfinite(inertia) &&
                           std::abs(inertia - next) <= 1e-9 * std::max(inertia, 1e-300);
      inertia = next;
      if (settled) break;
    }
    // Inertia of the final assignment against the final centers.
    double final_inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      final_inertia += (rows.row(static_cast<Eigen::Index>(i)) - centers.row(assign[i])).squaredNorm();
    }
    if (final_inertia < best.inertia) {
      best.inertia = final_inertia;
      best.assignment = assign;
      best.centers = centers;
      best.iterations = it + 1;
    }
  }
  return best;
}

PartitionResult multiclass_cut_p2(const Hypergraph& h, std::size_t k, std::uint64_t seed,
                                  std::size_t restarts, const EigenOptions& eig) {
  if (k < 2 || k > h.num_nodes()) {
    fail(ErrorKind::InvalidArgument, "k must lie in [2, |V|], got " + std::to_string(k));
  }
  const LinearOperator lap = laplacian_p2(h);
  const EigenPairs pairs = smallest_eigenpairs(lap, k, h.degrees(), eig);
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(h.num_nodes()), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t v = 0; v < h.num_nodes(); ++v) {
      rows(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(j)) = pairs.eigenvectors[j][v];
    }
  }
  const KMeansResult km = kmeans(rows, k, seed, restarts);
  PartitionResult out;
  out.assignment = km.assignment;
  out.k = k;
  out.ncut_value = multiclass_ncut(h, out.assignment);
  out.method = "eigen-kmeans-p2";
  out.p = 2.0;
  out.eigenvalues = pairs.eigenvalues;
  out.eigen_residual = pairs.max_residual;
  out.seed = seed;
  out.kmeans_inertia = km.inertia;
  return out;
}

double brute_force_min_ncut(const Hypergraph& h, std::size_t k) {
  const std::size_t n = h.num_nodes();
  if (n > 12) fail(ErrorKind::TooLarge, "brute force is limited to 12 nodes, got " + std::to_string(n));
  if (k == 0 || k > n) fail(ErrorKind::InvalidArgument, "k must lie in [1, |V|]");
  if (k == 1) return 0.0;

  // Restricted growth strings with exactly k blocks enumerate each set
  // partition once.
  std::vector<std::uint32_t> a(n, 0), prefix_max(n, 0);
  std::vector<double> cut, vol;
  std::vector<std::uint32_t> count;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    if (prefix_max[n - 1] + 1 == k) {
      best = std::min(best, kway_ncut(h, a, k, cut, vol, count));
    }
    // Advance to the next restricted growth string.
    std::size_t i = n - 1;
    while (i > 0 && (a[i] > prefix_max[i - 1] || a[i] + 1 >= k)) --i;
    if (i == 0) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return best;
}

double error_rate(std::span<const std::uint32_t> predicted, std::span<const std::uint32_t> truth) {
  if (predicted.size() != truth.size()) {
    fail(ErrorKind::SizeMismatch, "prediction and truth lengths differ");
  }
  if (predicted.empty()) return 0.0;
  const std::size_t kp = 1 + *std::max_element(predicted.begin(), predicted.end());
  const std::size_t kt = 1 + *std::max_element(truth.begin(), truth.end());
  const std::size_t m = std::max(kp, kt);
  std::vector<std::vector<double>> cost(m + 1, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = 0; i < predicted.size(); ++i) cost[predicted[i] + 1][truth[i] + 1] -= 1.0;

  // Hungarian method (potentials form), rows = clusters, columns = labels.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(m + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<std::size_t> match(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (std::size_t i = 1; i <= m; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0][j] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double matched = 0.0;
  for (std::size_t j = 1; j <= m; ++j) matched -= cost[match[j]][j];
  return 1.0 - matched / static_cast<double>(predicted.size());
}

}  // namespace hyperlap
