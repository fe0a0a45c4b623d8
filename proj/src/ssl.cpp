// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hyperlap/ssl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "hyperlap/calculus.hpp"
#include "hyperlap/error.hpp"
#include "hyperlap/laplacians.hpp"
#include "hyperlap/random.hpp"

namespace hyperlap {
namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

constexpr int kMaxHalvings = 60;
constexpr double kObjectiveSlack = 1e-13;

void check_mu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    fail(ErrorKind::InvalidArgument, "mu must be positive, got " + std::to_string(mu));
  }
}

}  // namespace

SSLProblem::SSLProblem(const Hypergraph& h, NodeFunction y, double mu, double p)
    : h_(&h), y_(std::move(y)), mu_(mu), p_(p) {
  if (y_.size() != h.num_nodes()) {
    fail(ErrorKind::LengthMismatch, "labels have " + std::to_string(y_.size()) +
                                        " entries, hypergraph has " +
                                        std::to_string(h.num_nodes()) + " nodes");
  }
  check_mu(mu);
  if (!(p >= 1.0) || !std::isfinite(p)) {
    fail(ErrorKind::InvalidP, "p must be a finite real >= 1, got " + std::to_string(p));
  }
  bool pos = false, neg = false;
  for (double v : y_) {
    if (v == 1.0) {
      pos = true;
    } else if (v == -1.0) {
      neg = true;
    } else if (v != 0.0) {
      fail(ErrorKind::InvalidArgument, "label " + std::to_string(v) + " not in {-1, 0, 1}");
    }
  }
  if (!pos || !neg) fail(ErrorKind::TooFewLabels, "both classes need at least one label");
}

double objective(const SSLProblem& prob, std::span<const double> psi) {
  const auto& y = prob.labels();
  double fit = 0.0;
  for (std::size_t v = 0; v < y.size(); ++v) fit += (psi[v] - y[v]) * (psi[v] - y[v]);
  return dirichlet_sum(prob.hypergraph(), psi, prob.p()) + prob.mu() * fit;
}

NodeFunction objective_gradient(const SSLProblem& prob, std::span<const double> psi) {
  NodeFunction g = apply_p_laplacian(prob.hypergraph(), psi, prob.p());
  const auto& y = prob.labels();
  for (std::size_t v = 0; v < y.size(); ++v) {
    g[v] = prob.p() * g[v] + 2.0 * prob.mu() * (psi[v] - y[v]);
  }
  return g;
}

double stationarity_residual(const SSLProblem& prob, std::span<const double> psi) {
  double m = 0.0;
  for (double x : objective_gradient(prob, psi)) m = std::max(m, std::abs(x));
  return m;
}

NodeFunction gauss_jacobi_step(const SSLProblem& prob, std::span<const double> psi) {
  const Hypergraph& h = prob.hypergraph();
  const PLaplacianCoefficients c = p_coefficients(h, psi, prob.p());
  const auto sqrt_d = h.sqrt_degrees();
  const auto d = h.degrees();
  NodeFunction scaled(psi.size());
  for (std::size_t v = 0; v < psi.size(); ++v) scaled[v] = psi[v] / sqrt_d[v];
  // Σ_{u≠v} −l_p(u,v) ψ(u) = (W_p ψ̂)(v) / √d(v).
  const NodeFunction wx = c.apply_pair_weights(h, scaled);
  const double p = prob.p();
  const double two_mu = 2.0 * prob.mu();
  const auto& y = prob.labels();
  NodeFunction next(psi.size());
  for (std::size_t v = 0; v < psi.size(); ++v) {
    const double denom = p * c.node_coeffs[v] / d[v] + two_mu;
    if (!(denom > 0.0)) {
      fail(ErrorKind::ZeroDiagonal, "p*l_p(v,v) + 2mu = " + std::to_string(denom) +
                                        " at node " + std::to_string(v));
    }
    next[v] = (p * wx[v] / sqrt_d[v] + two_mu * y[v]) / denom;
  }
  return next;
}

SSLResult solve(const SSLProblem& prob, const SolveOptions& opts) {
  const auto& y = prob.labels();
  const auto [y_lo, y_hi] = std::minmax_element(y.begin(), y.end());
  SSLResult result;
  result.psi = y;
  double value = objective(prob, result.psi);
  if (opts.record_objective) result.objective_trace.push_back(value);
  result.final_residual = std::numeric_limits<double>::infinity();
  NodeFunction best = result.psi;
  double best_value = value;
  NodeFunction trial(y.size());
  while (result.iterations < opts.max_iter) {
    const NodeFunction next = gauss_jacobi_step(prob, result.psi);
    result.final_residual = max_abs_diff(next, result.psi);
    // The sweep moves along d = −(objective gradient) / diagonal, a descent
    // direction. A step θd is accepted when the objective does not rise and
    // the slope along d does not grow in magnitude (the objective is convex
    // along d, so this rules out jumping past the minimum on the line). The
    // slope test stays meaningful once objective values agree to rounding.
    double theta = 1.0;
    trial = next;
    double next_value = std::numeric_limits<double>::quiet_NaN();
    if (opts.safeguard && result.final_residual >= opts.tol) {
      NodeFunction d(y.size());
      for (std::size_t v = 0; v < y.size(); ++v) d[v] = next[v] - result.psi[v];
      const double slope0 = std::abs(inner_product_nodes(objective_gradient(prob, result.psi), d));
      const double limit = value + kObjectiveSlack * std::abs(value);
      for (int halving = 0;; ++halving) {
        next_value = objective(prob, trial);
        const double slope = std::abs(inner_product_nodes(objective_gradient(prob, trial), d));
        if ((next_value <= limit && slope <= slope0) || halving == kMaxHalvings) break;
        theta *= 0.5;
        for (std::size_t v = 0; v < y.size(); ++v) trial[v] = result.psi[v] + theta * d[v];
      }
    }
    if (std::isnan(next_value)) next_value = objective(prob, trial);
    const auto [lo_it, hi_it] = std::minmax_element(result.psi.begin(), result.psi.end());
    const double lo = std::min(*y_lo, *lo_it) - 1e-12;
    const double hi = std::max(*y_hi, *hi_it) + 1e-12;
    for (double x : trial) {
      if (x < lo || x > hi) result.bounds_respected = false;
    }
    if (theta < 1.0) ++result.damped_sweeps;
    result.psi.swap(trial);
    value = next_value;
    ++result.iterations;
    if (opts.record_objective) result.objective_trace.push_back(value);
    if (value < best_value) {
      best_value = value;
      best = result.psi;
    }
    if (result.final_residual < opts.tol) {
      result.converged = true;
      break;
    }
  }
  if (!result.converged && best_value < value) result.psi = std::move(best);
  result.objective_value = objective(prob, result.psi);
  result.stationarity_residual = stationarity_residual(prob, result.psi);
  return result;
}

NodeFunction closed_form_p2(const Hypergraph& h, std::span<const double> y, double mu,
                            bool force_iterative) {
  check_mu(mu);
  const std::size_t n = h.num_nodes();
  if (y.size() != n) fail(ErrorKind::LengthMismatch, "label vector length differs from |V|");
  const double alpha = 1.0 / (1.0 + mu);
  const double beta = mu / (1.0 + mu);
  const LinearOperator lap = laplacian_p2(h);

  if (n <= kDenseLimit && !force_iterative) {
    // I − αQ = (1 − α) I + α L.
    Eigen::MatrixXd a = alpha * lap.dense();
    a.diagonal().array() += 1.0 - alpha;
    Eigen::VectorXd b(n);
    for (std::size_t v = 0; v < n; ++v) b(v) = beta * y[v];
    const Eigen::VectorXd x = a.ldlt().solve(b);
    return NodeFunction(x.data(), x.data() + n);
  }

  // Conjugate gradients on the SPD system; κ ≤ (1 + α)/(1 − α).
  NodeFunction x(n, 0.0), r(n), p(n), ap(n), lp(n);
  for (std::size_t v = 0; v < n; ++v) r[v] = beta * y[v];
  p = r;
  double rr = inner_product_nodes(r, r);
  const double stop = 1e-26 * std::max(rr, 1e-300);
  const std::size_t max_iter = std::max<std::size_t>(1000, 10 * n);
  for (std::size_t it = 0; it < max_iter; ++it) {
    if (rr <= stop) return x;
    lap.apply_into(p, lp);
    for (std::size_t v = 0; v < n; ++v) ap[v] = (1.0 - alpha) * p[v] + alpha * lp[v];
    const double step = rr / inner_product_nodes(p, ap);
    for (std::size_t v = 0; v < n; ++v) {
      x[v] += step * p[v];
      r[v] -= step * ap[v];
    }
    const double rr_next = inner_product_nodes(r, r);
    for (std::size_t v = 0; v < n; ++v) p[v] = r[v] + (rr_next / rr) * p[v];
    rr = rr_next;
  }
  if (rr <= stop) return x;
  fail(ErrorKind::SolverStall, "conjugate gradients did not reach tolerance in " +
                                   std::to_string(max_iter) + " iterations");
}

SSLResult regularize(const SSLProblem& prob, const SolveOptions& opts) {
  if (prob.p() != 2.0) return solve(prob, opts);
  SSLResult result;
  result.psi = closed_form_p2(prob.hypergraph(), prob.labels(), prob.mu());
  result.converged = true;
  result.final_residual = 0.0;
  result.objective_value = objective(prob, result.psi);
  result.stationarity_residual = stationarity_residual(prob, result.psi);
  return result;
}

double cross_validate_mu(const Hypergraph& h, std::span<const LabeledNode> labeled, double p,
                         std::span<const double> grid, std::size_t folds, std::uint64_t seed) {
  if (grid.empty()) fail(ErrorKind::InvalidArgument, "empty mu grid");
  if (folds < 2) fail(ErrorKind::InvalidArgument, "cross-validation needs at least 2 folds");
  std::vector<NodeId> pos, neg;
  for (const LabeledNode& l : labeled) {
    if (l.node >= h.num_nodes()) fail(ErrorKind::NodeIdOutOfRange, "labeled node out of range");
    if (l.label == 1) {
      pos.push_back(l.node);
    } else if (l.label == -1) {
      neg.push_back(l.node);
    } else {
      fail(ErrorKind::InvalidArgument, "labels must be -1 or +1");
    }
  }
  if (pos.size() < folds || neg.size() < folds) {
    fail(ErrorKind::TooFewLabels, "need " + std::to_string(folds) +
                                      " labeled nodes per class, have " +
                                      std::to_string(pos.size()) + " and " +
                                      std::to_string(neg.size()));
  }

  // Stratified fold assignment: shuffle each class, deal round-robin.
  Rng rng(derive_seed(seed, 0xc5));
  shuffle(pos, rng);
  shuffle(neg, rng);
  std::vector<std::vector<LabeledNode>> fold_members(folds);
  for (std::size_t i = 0; i < pos.size(); ++i) fold_members[i % folds].push_back({pos[i], 1});
  for (std::size_t i = 0; i < neg.size(); ++i) fold_members[i % folds].push_back({neg[i], -1});

  double best_mu = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  for (double mu : grid) {
    double err_sum = 0.0;
    for (std::size_t f = 0; f < folds; ++f) {
      NodeFunction y(h.num_nodes(), 0.0);
      for (std::size_t g = 0; g < folds; ++g) {
        if (g == f) continue;
        for (const LabeledNode& l : fold_members[g]) y[l.node] = l.label;
      }
      const SSLResult res = regularize(SSLProblem(h, std::move(y), mu, p));
      const std::vector<int> pred = predict(res.psi);
      std::size_t wrong = 0;
      for (const LabeledNode& l : fold_members[f]) wrong += pred[l.node] != l.label;
      err_sum += static_cast<double>(wrong) / static_cast<double>(fold_members[f].size());
    }
    const double err = err_sum / static_cast<double>(folds);
    if (err < best_err || (err == best_err && mu < best_mu)) {
      best_err = err;
      best_mu = mu;
    }
  }
  return best_mu;
}

std::vector<int> predict(std::span<const double> psi) {
  std::vector<int> out(psi.size());
  for (std::size_t v = 0; v < psi.size(); ++v) out[v] = psi[v] < 0.0 ? -1 : 1;
  return out;
}

}  // namespace hyperlap
