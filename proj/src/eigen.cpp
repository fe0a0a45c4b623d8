// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "hyperlap/error.hpp"
#include "hyperlap/random.hpp"
#include "hyperlap/spectral.hpp"

namespace hyperlap {
namespace {

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index arg = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(arg)) + 1e-14) arg = i;
  }
  if (v(arg) < 0.0) v = -v;
}

Eigen::VectorXd apply(const LinearOperator& op, const Eigen::VectorXd& x) {
  Eigen::VectorXd y(x.size());
  op.apply_into(std::span<const double>(x.data(), x.size()), std::span<double>(y.data(), y.size()));
  return y;
}

void finish(const LinearOperator& op, EigenPairs& out, std::vector<Eigen::VectorXd>& vecs,
            std::vector<double>& vals) {
  std::vector<std::size_t> order(vals.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  out.max_residual = 0.0;
  for (std::size_t i : order) {
    Eigen::VectorXd& v = vecs[i];
    v.normalize();
    fix_sign(v);
    const double r = (apply(op, v) - vals[i] * v).norm();
    out.max_residual = std::max(out.max_residual, r);
    out.eigenvalues.push_back(vals[i]);
    out.eigenvectors.emplace_back(v.data(), v.data() + v.size());
  }
}

// Orthonormalizes x against z (if set) and the first `cols` columns of v,
// twice. Returns the norm before normalization.
double orthonormalize(Eigen::VectorXd& x, const Eigen::VectorXd* z, const Eigen::MatrixXd& v,
                      Eigen::Index cols) {
  const double start = x.norm();
  for (int pass = 0; pass < 2; ++pass) {
    if (z) x -= z->dot(x) * *z;
    if (cols > 0) x -= v.leftCols(cols) * (v.leftCols(cols).transpose() * x);
  }
  const double norm = x.norm();
  if (norm > 0.0) x /= norm;
  return start > 0.0 ? norm / start : 0.0;
}

}  // namespace

EigenPairs smallest_eigenpairs(const LinearOperator& op, std::size_t k,
                               std::span<const double> degrees, const EigenOptions& opts) {
  const std::size_t n = op.dim();
  if (k == 0 || k > n) {
    fail(ErrorKind::InvalidArgument, "requested " + std::to_string(k) + " eigenpairs of a " +
                                         std::to_string(n) + "-dimensional operator");
  }
  if (!degrees.empty() && degrees.size() != n) {
    fail(ErrorKind::LengthMismatch, "degree vector length differs from operator dimension");
  }
  EigenPairs out;
  std::vector<Eigen::VectorXd> vecs;
  std::vector<double> vals;

  if (n <= kDenseLimit && !opts.force_iterative) {
    Eigen::MatrixXd m = op.dense();
    m = 0.5 * (m + m.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
      fail(ErrorKind::NoConvergence, "dense symmetric eigensolver failed");
    }
    for (std::size_t i = 0; i < k; ++i) {
      vecs.push_back(solver.eigenvectors().col(static_cast<Eigen::Index>(i)));
      vals.push_back(solver.eigenvalues()(static_cast<Eigen::Index>(i)));
    }
    out.dense = true;
    finish(op, out, vecs, vals);
    return out;
  }

  out.dense = false;
  std::optional<Eigen::VectorXd> z;
  if (!degrees.empty()) {
    Eigen::VectorXd s(n);
    for (std::size_t v = 0; v < n; ++v) s(static_cast<Eigen::Index>(v)) = std::sqrt(degrees[v]);
    s.normalize();
    z = s;
    vecs.push_back(s);
    vals.push_back(s.dot(apply(op, s)));
  }
  const std::size_t wanted = k - vecs.size();
  if (wanted > 0) {
    const std::size_t space = n - (z ? 1 : 0);
    std::size_t m = opts.basis_size ? opts.basis_size : std::max<std::size_t>(2 * k + 20, 40);
    m = std::min(m, space);
    const auto mi = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd basis(n, mi), image(n, mi);
    Eigen::Index cols = 0;
    Rng rng(opts.seed);
    auto random_vector = [&]() {
      Eigen::VectorXd x(n);
      for (std::size_t i = 0; i < n; ++i) x(static_cast<Eigen::Index>(i)) = uniform_real(rng, -1, 1);
      return x;
    };
    Eigen::VectorXd candidate = random_vector();
    const Eigen::VectorXd* zp = z ? &*z : nullptr;
    bool done = false;
    for (std::size_t restart = 0; restart <= opts.max_restarts; ++restart) {
      while (cols < mi) {
        Eigen::VectorXd x = candidate;
        double kept = orthonormalize(x, zp, basis, cols);
        if (kept < 1e-10) {
          x = random_vector();
          kept = orthonormalize(x, zp, basis, cols);
          if (kept < 1e-10) break;  // Invariant subspace exhausted.
        }
        basis.col(cols) = x;
        image.col(cols) = apply(op, x);
        candidate = image.col(cols);
        ++cols;
      }
      Eigen::MatrixXd proj = basis.leftCols(cols).transpose() * image.leftCols(cols);
      proj = 0.5 * (proj + proj.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(proj);
      const auto w = static_cast<Eigen::Index>(std::min<std::size_t>(wanted, cols));
      const Eigen::MatrixXd y = ritz.eigenvectors();
      const Eigen::MatrixXd x = basis.leftCols(cols) * y.leftCols(w);
      const Eigen::MatrixXd lx = image.leftCols(cols) * y.leftCols(w);
      Eigen::Index first_open = -1;
      for (Eigen::Index i = 0; i < w; ++i) {
        const double r = (lx.col(i) - ritz.eigenvalues()(i) * x.col(i)).norm();
        if (r >= opts.tol) {
          first_open = i;
          break;
        }
      }
      out.restarts = restart;
      if (first_open < 0 && static_cast<std::size_t>(w) == wanted) {
        for (Eigen::Index i = 0; i < w; ++i) {
          vecs.push_back(x.col(i));
          vals.push_back(ritz.eigenvalues()(i));
        }
        done = true;
        break;
      }
      if (cols < mi) {
        // Whole reachable space is spanned; Ritz pairs are exact up to rounding.
        fail(ErrorKind::NoConvergence, "Krylov space exhausted before " +
                                           std::to_string(wanted) + " pairs converged");
      }
      // Thick restart on the leading Ritz vectors; extend along the residual.
      const Eigen::Index q = std::min<Eigen::Index>(cols - 1, std::max<Eigen::Index>(w + 5, mi / 2));
      const Eigen::VectorXd residual =
          lx.col(first_open) - ritz.eigenvalues()(first_open) * x.col(first_open);
      const Eigen::MatrixXd new_basis = basis.leftCols(cols) * y.leftCols(q);
      const Eigen::MatrixXd new_image = image.leftCols(cols) * y.leftCols(q);
      basis.leftCols(q) = new_basis;
      image.leftCols(q) = new_image;
      cols = q;
      candidate = residual;
    }
    if (!done) {
      fail(ErrorKind::NoConvergence, "eigensolver did not reach residual " +
                                         std::to_string(opts.tol) + " in " +
                                         std::to_string(opts.max_restarts) + " restarts");
    }
  }
  finish(op, out, vecs, vals);
  return out;
}

}  // namespace hyperlap
