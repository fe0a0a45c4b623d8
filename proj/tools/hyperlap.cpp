// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

// hyperlap command-line interface.
//
// Exit codes: 0 success, 2 validation error, 3 solver non-convergence.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperlap/calculus.hpp"
#include "hyperlap/dataio.hpp"
#include "hyperlap/error.hpp"
#include "hyperlap/laplacians.hpp"
#include "hyperlap/random.hpp"
#include "hyperlap/spectral.hpp"

namespace {

using namespace hyperlap;

constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;

struct InputOptions {
  std::string path;
  std::string preset;
  std::string policy;
  std::optional<std::size_t> label_col;
  std::vector<std::size_t> ignore_cols;
};

struct Loaded {
  HypergraphDocument doc;
  std::vector<std::string> warnings;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Loaded load_input(const InputOptions& in) {
  Loaded out;
  if (ends_with(in.path, ".json")) {
    out.doc = load_hypergraph(in.path);
    return out;
  }
  DatasetSpec spec = in.preset.empty() ? DatasetSpec{} : preset_spec(in.preset, in.path);
  spec.path = in.path;
  if (!in.policy.empty()) spec.missing_policy = parse_policy(in.policy);
  if (in.label_col) spec.label_column = *in.label_col;
  if (!in.ignore_cols.empty()) {
    // Every column other than the label and the ignored ones is a feature.
    std::ifstream probe(in.path);
    std::string first;
    std::getline(probe, first);
    const std::size_t arity = static_cast<std::size_t>(std::count(first.begin(), first.end(), ',')) + 1;
    spec.feature_columns.clear();
    for (std::size_t c = 0; c < arity; ++c) {
      if (c != spec.label_column &&
          std::find(in.ignore_cols.begin(), in.ignore_cols.end(), c) == in.ignore_cols.end()) {
        spec.feature_columns.push_back(c);
      }
    }
  }
  Dataset data = ingest(spec);
  out.warnings = data.warnings;
  out.doc = to_document(data);
  return out;
}

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("input", in.path, "Hypergraph (.json) or delimited categorical data file")
      ->required();
  cmd->add_option("--preset", in.preset, "Dataset preset (breast-cancer, congress, mushroom, zoo)");
  cmd->add_option("--policy", in.policy, "Missing-value policy")
      ->check(CLI::IsMember({"drop-membership", "as-category", "drop-attribute"}));
  cmd->add_option("--label-col", in.label_col, "0-based label column");
  cmd->add_option("--ignore-col", in.ignore_cols, "Columns excluded from the features");
}

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void print_summary(const std::vector<ResultRecord>& records, bool by_fraction) {
  for (const AggregateRow& row : aggregate(records)) {
    std::cout << (by_fraction ? "fraction=" + fmt(row.labeled_fraction) + " " : "")
              << "p=" << fmt(row.p) << " mean_error=" << fmt(row.mean_error)
              << " n=" << row.count << "\n";
  }
  for (const BestP& b : best_p(records)) {
    std::cout << "best: " << (by_fraction ? "fraction=" + fmt(b.labeled_fraction) + " " : "")
              << fmt(b.best_error, 4) << " (" << fmt(b.best_p, 3) << ")";
    if (!std::isnan(b.p2_error)) std::cout << "  p=2: " << fmt(b.p2_error, 4);
    std::cout << "\n";
  }
}

int finish_records(const std::vector<ResultRecord>& records, const std::string& output,
                   bool by_fraction) {
  if (!output.empty()) {
    emit_csv(records, output);
  } else {
    write_csv(records, std::cout);
  }
  print_summary(records, by_fraction);
  for (const ResultRecord& r : records) {
    if (!r.converged) {
      std::cerr << "warning: some runs did not converge\n";
      return kExitConvergence;
    }
  }
  return 0;
}

struct CheckLine {
  std::string name;
  bool ok;
  double value;
};

std::vector<CheckLine> run_checks(const Hypergraph& h, std::uint64_t seed) {
  std::vector<CheckLine> out;
  Rng rng(seed);
  const std::size_t n = h.num_nodes();

  double pin_weight = 0.0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) pin_weight += h.weight(e) * static_cast<double>(h.edge(e).size());
  const double vol_err = std::abs(h.total_volume() - pin_weight) / pin_weight;
  out.push_back({"degree double counting", vol_err < 1e-12, vol_err});

  NodeFunction psi(n);
  for (double& x : psi) x = uniform_real(rng, -1, 1);
  EdgeVertexField phi(h);
  for (double& x : phi.values()) x = uniform_real(rng, -1, 1);
  const double lhs = inner_product_edges(h, gradient(h, psi), phi);
  const double rhs = inner_product_nodes(psi, divergence(h, phi));
  const double stokes = std::abs(lhs + rhs) / std::max(1.0, std::abs(lhs));
  out.push_back({"gradient/divergence adjointness", stokes < 1e-10, stokes});

  for (double p : {1.5, 2.0, 2.5, 3.0}) {
    const double s = dirichlet_sum(h, psi, p);
    const double q = inner_product_nodes(psi, apply_p_laplacian(h, psi, p));
    const double rel = std::abs(s - q) / std::max(1e-300, std::abs(s));
    out.push_back({"<psi, Lap_p psi> = S_p at p=" + fmt(p), rel < 1e-10, rel});
  }

  NodeFunction constant(h.sqrt_degrees().begin(), h.sqrt_degrees().end());
  const NodeFunction lc = laplacian_p2(h).apply(constant);
  double null_err = 0.0;
  for (double x : lc) null_err = std::max(null_err, std::abs(x));
  out.push_back({"L D^{1/2}1 = 0", null_err < 1e-10, null_err});

  const RandomWalk rw = random_walk(h);
  const NodeFunction moved = rw.transition_transpose.apply(rw.stationary);
  double stat_err = 0.0;
  for (std::size_t v = 0; v < n; ++v) stat_err = std::max(stat_err, std::abs(moved[v] - rw.stationary[v]));
  out.push_back({"random walk stationarity", stat_err < 1e-12, stat_err});

  if (n <= kDenseLimit) {
    const Eigen::MatrixXd l = laplacian_p2(h).dense();
    const double asym = (l - l.transpose()).cwiseAbs().maxCoeff();
    out.push_back({"L symmetric", asym < 1e-12, asym});
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (l + l.transpose()));
    const double lowest = eig.eigenvalues()(0);
    out.push_back({"L positive semi-definite", lowest > -1e-10, lowest});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypergraph p-Laplacian toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string output;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads")->capture_default_str();
  app.add_option("--output", output, "Output path");

  InputOptions convert_in, info_in, ssl_in, cut_in, sweep_in, check_in;

  auto* convert = app.add_subcommand("convert", "Ingest a categorical data file into a hypergraph document");
  add_input_options(convert, convert_in);

  auto* info = app.add_subcommand("info", "Print hypergraph statistics");
  add_input_options(info, info_in);

  std::vector<double> ssl_p{2.0};
  std::optional<double> mu;
  bool cv = false;
  std::vector<double> fractions{0.1};
  std::size_t trials = 10;
  auto* ssl = app.add_subcommand("ssl", "Semi-supervised label propagation");
  add_input_options(ssl, ssl_in);
  ssl->add_option("--p", ssl_p, "p value(s)");
  auto* mu_opt = ssl->add_option("--mu", mu, "Regularization weight");
  ssl->add_flag("--cv", cv, "Select mu by 5-fold cross-validation (default)")->excludes(mu_opt);
  ssl->add_option("--fraction", fractions, "Labeled fraction(s)");
  ssl->add_option("--trials", trials, "Trials per fraction")->capture_default_str();
  std::size_t max_iter = 10000;
  ssl->add_option("--max-iter", max_iter, "Gauss-Jacobi sweep limit for p != 2")
      ->capture_default_str();

  std::vector<double> cut_p{2.0};
  std::size_t k = 2;
  std::size_t cut_trials = 1;
  auto* cut = app.add_subcommand("cut", "Normalized-cut clustering");
  add_input_options(cut, cut_in);
  cut->add_option("--p", cut_p, "p value(s); p != 2 is two-class only");
  cut->add_option("--k", k, "Number of clusters (0 = number of classes)")->capture_default_str();
  cut->add_option("--trials", cut_trials, "k-means seeds")->capture_default_str();

  std::vector<double> sweep_p;
  auto* sweep = app.add_subcommand("sweep-p", "Two-class cuts over a grid of p");
  add_input_options(sweep, sweep_in);
  sweep->add_option("--p", sweep_p, "p grid (default 1.0..3.0 step 0.1)");

  auto* check = app.add_subcommand("check", "Run the invariant suite on a hypergraph");
  add_input_options(check, check_in);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*convert) {
      const Loaded in = load_input(convert_in);
      for (const auto& w : in.warnings) std::cerr << "warning: " << w << "\n";
      if (output.empty()) {
        std::cout << serialize_hypergraph(in.doc);
      } else {
        save_hypergraph(in.doc, output);
      }
      return 0;
    }
    if (*info) {
      const Loaded in = load_input(info_in);
      for (const auto& w : in.warnings) std::cerr << "warning: " << w << "\n";
      const Components comps = connected_components(in.doc.raw);
      const Hypergraph h(in.doc.raw);
      std::size_t min_delta = SIZE_MAX, max_delta = 0;
      for (EdgeId e = 0; e < h.num_edges(); ++e) {
        min_delta = std::min(min_delta, h.edge(e).size());
        max_delta = std::max(max_delta, h.edge(e).size());
      }
      std::cout << "nodes: " << h.num_nodes() << "\n"
                << "edges: " << h.num_edges() << "\n"
                << "pins: " << h.num_pins() << "\n"
                << "components: " << comps.count << "\n"
                << "edge degree: " << min_delta << ".." << max_delta << "\n"
                << "volume: " << fmt(h.total_volume(), 17) << "\n"
                << "classes: " << in.doc.label_names.size() << "\n";
      return 0;
    }
    if (*check) {
      const Loaded in = load_input(check_in);
      const Hypergraph h(in.doc.raw);
      bool all = true;
      for (const CheckLine& line : run_checks(h, seed)) {
        std::cout << (line.ok ? "PASS " : "FAIL ") << line.name << " (" << fmt(line.value, 3) << ")\n";
        all = all && line.ok;
      }
      return all ? 0 : kExitValidation;
    }

    InputOptions& src = *ssl ? ssl_in : (*cut ? cut_in : sweep_in);
    const Loaded in = load_input(src);
    for (const auto& w : in.warnings) std::cerr << "warning: " << w << "\n";
    const Hypergraph h(in.doc.raw);
    if (in.doc.labels.size() != h.num_nodes()) {
      fail(ErrorKind::InvalidArgument, "input carries no labels to score against");
    }
    ExperimentConfig cfg;
    cfg.dataset_id = src.preset.empty() ? src.path : src.preset;
    cfg.seed = seed;
    cfg.threads = threads;
    if (*ssl) {
      cfg.task = Task::SSL;
      cfg.p_values = ssl_p;
      if (mu && !cv) cfg.mu = *mu;
      cfg.labeled_fractions = fractions;
      cfg.trials = trials;
      cfg.max_iter = max_iter;
      return finish_records(run_ssl_experiment(h, in.doc.labels, cfg), output, true);
    }
    if (*cut) {
      const std::size_t classes = in.doc.label_names.size();
      cfg.k = k;
      cfg.task = (k == 0 ? classes : k) > 2 ? Task::CutK : Task::Cut2;
      cfg.p_values = cut_p;
      cfg.trials = cut_trials;
      return finish_records(run_cut_experiment(h, in.doc.labels, cfg), output, false);
    }
    cfg.task = Task::SweepP;
    cfg.p_values = sweep_p.empty() ? default_p_grid() : sweep_p;
    return finish_records(run_cut_experiment(h, in.doc.labels, cfg), output, false);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_convergence_failure(e.kind()) ? kExitConvergence : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
