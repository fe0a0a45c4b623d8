// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hyperlap/calculus.hpp"
#include "hyperlap/error.hpp"
#include "hyperlap/spectral.hpp"

namespace hyperlap {
namespace {

void check_length(const Hypergraph& h, std::span<const double> psi) {
  if (psi.size() != h.num_nodes()) {
    fail(ErrorKind::LengthMismatch, "function length differs from |V|");
  }
}

double abs_pow(double x, double p) {
  const double a = std::abs(x);
  return p == 2.0 ? a * a : std::pow(a, p);
}

double centered_power_sum(const Hypergraph& h, std::span<const double> psi, double c, double p) {
  const auto sqrt_d = h.sqrt_degrees();
  double total = 0.0;
  for (std::size_t v = 0; v < psi.size(); ++v) total += abs_pow(psi[v] - c * sqrt_d[v], p);
  return total;
}

// var_p below this fraction of Σ|ψ|^p means ψ ∥ D^{1/2}𝟙.
constexpr double kDegenerateRatio = 1e-24;

}  // namespace

double p_eigen_residual(const Hypergraph& h, std::span<const double> psi, double lambda,
                        double p) {
  const NodeFunction lap = apply_p_laplacian(h, psi, p);
  double m = 0.0;
  for (std::size_t v = 0; v < psi.size(); ++v) {
    m = std::max(m, std::abs(lap[v] - lambda * xi_p(psi[v], p)));
  }
  return m;
}

double rayleigh(const Hypergraph& h, std::span<const double> psi, double p) {
  check_length(h, psi);
  double denom = 0.0;
  for (double x : psi) denom += abs_pow(x, p);
  if (!(denom > 0.0)) fail(ErrorKind::ZeroFunction, "Rayleigh quotient of the zero function");
  return dirichlet_sum(h, psi, p) / denom;
}

double p_mean(const Hypergraph& h, std::span<const double> psi, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    fail(ErrorKind::InvalidP, "p-mean needs p >= 1, got " + std::to_string(p));
  }
  check_length(h, psi);
  const auto sqrt_d = h.sqrt_degrees();
  const std::size_t n = psi.size();

  if (p == 2.0) {
    double num = 0.0;
    for (std::size_t v = 0; v < n; ++v) num += psi[v] * sqrt_d[v];
    return num / h.total_volume();
  }

  std::vector<double> t(n);
  for (std::size_t v = 0; v < n; ++v) t[v] = psi[v] / sqrt_d[v];

  if (p == 1.0) {
    // Weighted median of t with weights √d: the lowest minimizer.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
    double total = 0.0;
    for (std::size_t v = 0; v < n; ++v) total += sqrt_d[v];
    double acc = 0.0;
    for (std::size_t i : order) {
      acc += sqrt_d[i];
      if (acc >= 0.5 * total) return t[i];
    }
    return t[order.back()];
  }

  // g(c) = Σ √d ξ_p(ψ − √d c) is strictly decreasing, ≥ 0 at min t, ≤ 0 at max t.
  double lo = *std::min_element(t.begin(), t.end());
  double hi = *std::max_element(t.begin(), t.end());
  auto g = [&](double c) {
    double s = 0.0;
    for (std::size_t v = 0; v < n; ++v) s += sqrt_d[v] * xi_p(psi[v] - sqrt_d[v] * c, p);
    return s;
  };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double p_var(const Hypergraph& h, std::span<const double> psi, double p) {
  return centered_power_sum(h, psi, p_mean(h, psi, p), p);
}

double rayleigh2(const Hypergraph& h, std::span<const double> psi, double p) {
  check_length(h, psi);
  const double var = p_var(h, psi, p);
  double scale = 0.0;
  for (double x : psi) scale += abs_pow(x, p);
  if (!(var > kDegenerateRatio * scale) || !(scale > 0.0)) {
    fail(ErrorKind::DegenerateDirection, "function is a multiple of D^{1/2}1");
  }
  return dirichlet_sum(h, psi, p) / var;
}

NodeFunction rayleigh2_gradient(const Hypergraph& h, std::span<const double> psi, double p) {
  if (!(p > 1.0)) fail(ErrorKind::InvalidP, "the R2 gradient needs p > 1");
  check_length(h, psi);
  const double c = p_mean(h, psi, p);
  const double var = centered_power_sum(h, psi, c, p);
  double scale = 0.0;
  for (double x : psi) scale += abs_pow(x, p);
  if (!(var > kDegenerateRatio * scale) || !(scale > 0.0)) {
    fail(ErrorKind::DegenerateDirection, "function is a multiple of D^{1/2}1");
  }
  const double s = dirichlet_sum(h, psi, p);
  NodeFunction grad = apply_p_laplacian(h, psi, p);
  const auto sqrt_d = h.sqrt_degrees();
  for (std::size_t v = 0; v < psi.size(); ++v) {
    grad[v] = p / var * grad[v] - s * p / (var * var) * xi_p(psi[v] - sqrt_d[v] * c, p);
  }
  return grad;
}

DescentResult minimize_rayleigh2(const Hypergraph& h, std::span<const double> psi0, double p,
                                 const DescentOptions& opts) {
  if (!(p > 1.0)) fail(ErrorKind::InvalidP, "descent on R2 needs p > 1");
  check_length(h, psi0);
  const auto sqrt_d = h.sqrt_degrees();
  const std::size_t n = psi0.size();

  auto normalize = [&](NodeFunction& x) {
    const double c = p_mean(h, x, p);
    for (std::size_t v = 0; v < n; ++v) x[v] -= c * sqrt_d[v];
    const double norm = std::sqrt(inner_product_nodes(x, x));
    if (norm > 0.0) {
      for (double& e : x) e /= norm;
    }
  };

  DescentResult out;
  out.psi.assign(psi0.begin(), psi0.end());
  normalize(out.psi);
  double value = rayleigh2(h, out.psi, p);
  out.initial_value = value;
  double step = 1.0;
  NodeFunction trial(n);
  for (; out.iterations < opts.max_iter; ++out.iterations) {
    const NodeFunction grad = rayleigh2_gradient(h, out.psi, p);
    const double g2 = inner_product_nodes(grad, grad);
    // ψ has unit ℓ₂ norm, so the gradient scale is comparable to the value.
    if (!(std::sqrt(g2) > 1e-12 * std::max(1.0, value))) {
      out.converged = true;
      break;
    }
    step = std::min(step * 2.0, 1e6);
    bool accepted = false;
    double next_value = value;
    for (std::size_t b = 0; b < opts.max_backtracks; ++b) {
      for (std::size_t v = 0; v < n; ++v) trial[v] = out.psi[v] - step * grad[v];
      try {
        next_value = rayleigh2(h, trial, p);
      } catch (const Error&) {
        next_value = value;  // Collapsed onto D^{1/2}𝟙; shrink.
        step *= opts.shrink;
        continue;
      }
      if (next_value <= value - opts.armijo * step * g2) {
        accepted = true;
        break;
      }
      step *= opts.shrink;
    }
    if (!accepted) {
      out.no_descent = out.iterations == 0;
      out.converged = !out.no_descent;
      break;
    }
    if (value - next_value < opts.rel_tol * std::abs(value)) {
      // Improvement below tolerance: keep the current iterate.
      out.converged = true;
      break;
    }
    out.psi = trial;
    normalize(out.psi);
    value = next_value;
  }
  out.final_value = value;
  return out;
}

double effective_descent_p(double p) { return p == 1.0 ? 1.1 : p; }

PartitionResult two_class_cut_p(const Hypergraph& h, double p, const DescentOptions& opts,
                                const EigenOptions& eig) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    fail(ErrorKind::InvalidP, "two-class p-cut needs p >= 1, got " + std::to_string(p));
  }
  const LinearOperator lap = laplacian_p2(h);
  const EigenPairs pairs = smallest_eigenpairs(lap, 2, h.degrees(), eig);
  const double q = effective_descent_p(p);
  const DescentResult descent = minimize_rayleigh2(h, pairs.eigenvectors[1], q, opts);

  // A failed line search falls back to the p=2 eigenvector.
  NodeFunction f = descent.no_descent ? pairs.eigenvectors[1] : descent.psi;
  const auto sqrt_d = h.sqrt_degrees();
  for (std::size_t v = 0; v < f.size(); ++v) f[v] /= sqrt_d[v];
  const SweepResult sweep = threshold_sweep(h, f);
  PartitionResult out;
  out.assignment = sweep.assignment;
  out.k = 2;
  out.ncut_value = sweep.ncut_value;
  out.method = descent.no_descent ? "eigen-p2 (no descent)"
               : q == p            ? "rayleigh-descent"
                                   : "rayleigh-descent (continuation)";
  out.p = p;
  out.threshold = sweep.threshold;
  out.eigenvalues = pairs.eigenvalues;
  out.eigen_residual = pairs.max_residual;
  out.rayleigh_initial = descent.initial_value;
  out.rayleigh_final = descent.final_value;
  out.descent_iterations = descent.iterations;
  out.no_descent = descent.no_descent;
  return out;
}

}  // namespace hyperlap
