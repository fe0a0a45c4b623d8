// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

#include "hyperlap/dataio.hpp"
#include "hyperlap/error.hpp"
#include "hyperlap/random.hpp"
#include "hyperlap/spectral.hpp"
#include "hyperlap/ssl.hpp"

namespace hyperlap {
namespace {

// Runs jobs[0..n) on up to `threads` workers; rethrows the first failure.
void run_parallel(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& job) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void sort_records(std::vector<ResultRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const ResultRecord& a, const ResultRecord& b) {
    return std::tie(a.labeled_fraction, a.p, a.trial) < std::tie(b.labeled_fraction, b.p, b.trial);
  });
}

std::size_t class_count(const std::vector<std::uint32_t>& labels) {
  return labels.empty() ? 0 : 1 + *std::max_element(labels.begin(), labels.end());
}

}  // namespace

std::string_view to_string(Task task) noexcept {
  switch (task) {
    case Task::SSL: return "ssl";
    case Task::Cut2: return "cut2";
    case Task::CutK: return "cutk";
    case Task::SweepP: return "sweep-p";
  }
  return "unknown";
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) fail(ErrorKind::InvalidArgument, "trials must be at least 1");
  if (cfg.max_iter == 0) fail(ErrorKind::InvalidArgument, "max_iter must be at least 1");
  if (cfg.p_values.empty()) fail(ErrorKind::InvalidArgument, "no p values");
  for (double p : cfg.p_values) {
    if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorKind::InvalidP, "p must be >= 1");
  }
  if (cfg.mu && !(*cfg.mu > 0.0)) fail(ErrorKind::InvalidArgument, "mu must be positive");
  if (cfg.task == Task::SSL) {
    if (cfg.labeled_fractions.empty()) fail(ErrorKind::InvalidArgument, "no labeled fractions");
    for (double f : cfg.labeled_fractions) {
      if (!(f > 0.0 && f <= 1.0)) {
        fail(ErrorKind::InvalidArgument, "labeled fractions must lie in (0, 1]");
      }
    }
  }
}

std::vector<double> default_p_grid() {
  std::vector<double> grid;
  for (int i = 10; i <= 30; ++i) grid.push_back(i / 10.0);
  return grid;
}

std::vector<NodeId> draw_labeled(const std::vector<std::uint32_t>& labels, std::size_t count,
                                 std::uint64_t seed) {
  const std::size_t k = class_count(labels);
  count = std::min(count, labels.size());
  Rng rng(seed);
  std::vector<std::vector<NodeId>> by_class(k);
  for (std::size_t v = 0; v < labels.size(); ++v) by_class[labels[v]].push_back(static_cast<NodeId>(v));
  std::vector<std::uint8_t> taken(labels.size(), 0);
  std::vector<NodeId> chosen;
  for (const auto& members : by_class) {
    if (members.empty() || chosen.size() >= count) continue;
    const NodeId v = members[uniform_index(rng, members.size())];
    chosen.push_back(v);
    taken[v] = 1;
  }
  std::vector<NodeId> rest;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (!taken[v]) rest.push_back(static_cast<NodeId>(v));
  }
  shuffle(rest, rng);
  for (std::size_t i = 0; chosen.size() < count; ++i) chosen.push_back(rest[i]);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<ResultRecord> run_ssl_experiment(const Hypergraph& h,
                                             const std::vector<std::uint32_t>& labels,
                                             const ExperimentConfig& cfg) {
  validate(cfg);
  if (labels.size() != h.num_nodes()) fail(ErrorKind::SizeMismatch, "label count differs from |V|");
  if (class_count(labels) != 2) {
    fail(ErrorKind::InvalidArgument, "SSL experiments need exactly two classes");
  }
  const std::size_t n = h.num_nodes();
  struct Job {
    std::size_t fraction_index;
    std::size_t p_index;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t f = 0; f < cfg.labeled_fractions.size(); ++f) {
    for (std::size_t pi = 0; pi < cfg.p_values.size(); ++pi) {
      for (std::size_t t = 0; t < cfg.trials; ++t) jobs.push_back({f, pi, t});
    }
  }
  std::vector<ResultRecord> records(jobs.size());
  run_parallel(jobs.size(), cfg.threads, [&](std::size_t j) {
    const auto start = std::chrono::steady_clock::now();
    const Job& job = jobs[j];
    const double fraction = cfg.labeled_fractions[job.fraction_index];
    const double p = cfg.p_values[job.p_index];
    // The label draw depends on (fraction, trial) only, so every p sees it.
    const std::uint64_t seed = derive_seed(cfg.seed, job.fraction_index * 1000003ULL + job.trial);
    const std::size_t count = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))));
    const std::vector<NodeId> chosen = draw_labeled(labels, count, seed);

    ResultRecord r;
    r.dataset = cfg.dataset_id;
    r.task = std::string(to_string(Task::SSL));
    r.p = p;
    r.labeled_fraction = fraction;
    r.trial = job.trial;
    r.seed = seed;
    r.ncut_value = std::numeric_limits<double>::quiet_NaN();

    NodeFunction y(n, 0.0);
    std::vector<LabeledNode> labeled;
    for (NodeId v : chosen) {
      const int s = labels[v] == 0 ? 1 : -1;
      y[v] = s;
      labeled.push_back({v, s});
    }
    double mu = cfg.mu.value_or(1.0);
    if (!cfg.mu) {
      std::size_t pos = 0;
      for (const auto& l : labeled) pos += l.label == 1;
      const std::size_t folds = std::min<std::size_t>(5, std::min(pos, labeled.size() - pos));
      if (folds >= 2) {
        mu = cross_validate_mu(h, labeled, p, kDefaultMuGrid, folds, derive_seed(seed, 1));
      } else {
        r.note = "cv-fallback";
      }
    }
    r.mu = mu;
    SolveOptions solve_opts;
    solve_opts.max_iter = cfg.max_iter;
    const SSLResult res = regularize(SSLProblem(h, y, mu, p), solve_opts);
    r.iterations = res.iterations;
    r.converged = res.converged;
    const std::vector<int> pred = predict(res.psi);
    std::vector<std::uint8_t> is_labeled(n, 0);
    for (NodeId v : chosen) is_labeled[v] = 1;
    std::size_t wrong = 0, scored = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (is_labeled[v]) continue;
      ++scored;
      wrong += pred[v] != (labels[v] == 0 ? 1 : -1);
    }
    if (scored == 0) {
      r.error_rate = 0.0;
      r.note += r.note.empty() ? "degenerate" : ";degenerate";
    } else {
      r.error_rate = static_cast<double>(wrong) / static_cast<double>(scored);
    }
    r.wall_time = seconds_since(start);
    records[j] = std::move(r);
  });
  sort_records(records);
  return records;
}

std::vector<ResultRecord> run_cut_experiment(const Hypergraph& h,
                                             const std::vector<std::uint32_t>& labels,
                                             const ExperimentConfig& cfg) {
  validate(cfg);
  if (labels.size() != h.num_nodes()) fail(ErrorKind::SizeMismatch, "label count differs from |V|");
  if (cfg.task == Task::SSL) fail(ErrorKind::InvalidArgument, "not a cut task");
  const bool multiclass = cfg.task == Task::CutK;
  const std::size_t k = multiclass ? (cfg.k ? cfg.k : class_count(labels)) : 2;
  // Two-class cuts are deterministic; only k-means consumes the trial seed.
  const std::size_t trials = multiclass ? cfg.trials : 1;

  struct Job {
    std::size_t p_index;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t pi = 0; pi < cfg.p_values.size(); ++pi) {
    for (std::size_t t = 0; t < trials; ++t) jobs.push_back({pi, t});
  }
  std::vector<ResultRecord> records(jobs.size());
  run_parallel(jobs.size(), cfg.threads, [&](std::size_t j) {
    const auto start = std::chrono::steady_clock::now();
    const double p = cfg.p_values[jobs[j].p_index];
    const std::uint64_t seed = derive_seed(cfg.seed, jobs[j].trial);
    PartitionResult part;
    if (multiclass) {
      if (p != 2.0) fail(ErrorKind::InvalidArgument, "multiclass cuts are available for p = 2 only");
      part = multiclass_cut_p2(h, k, seed, cfg.kmeans_restarts);
    } else if (p == 2.0) {
      part = two_class_cut_p2(h);
    } else {
      part = two_class_cut_p(h, p);
    }
    ResultRecord r;
    r.dataset = cfg.dataset_id;
    r.task = std::string(to_string(cfg.task));
    r.p = p;
    r.mu = std::numeric_limits<double>::quiet_NaN();
    r.labeled_fraction = 0.0;
    r.trial = jobs[j].trial;
    r.seed = seed;
    r.error_rate = error_rate(part.assignment, labels);
    r.ncut_value = part.ncut_value;
    r.iterations = part.descent_iterations;
    r.converged = !part.no_descent;
    if (part.no_descent) r.note = "no-descent";
    if (p == 1.0) r.note += r.note.empty() ? "continuation-p1.1" : ";continuation-p1.1";
    r.wall_time = seconds_since(start);
    records[j] = std::move(r);
  });
  sort_records(records);
  return records;
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRecord>& records) {
  std::map<std::pair<double, double>, std::pair<double, std::size_t>> acc;
  for (const ResultRecord& r : records) {
    auto& slot = acc[{r.labeled_fraction, r.p}];
    slot.first += r.error_rate;
    ++slot.second;
  }
  std::vector<AggregateRow> out;
  for (const auto& [key, value] : acc) {
    out.push_back({key.first, key.second, value.first / static_cast<double>(value.second), value.second});
  }
  return out;
}

std::vector<BestP> best_p(const std::vector<ResultRecord>& records) {
  std::vector<BestP> out;
  for (const AggregateRow& row : aggregate(records)) {
    if (out.empty() || out.back().labeled_fraction != row.labeled_fraction) {
      out.push_back({row.labeled_fraction, row.p, row.mean_error,
                     std::numeric_limits<double>::quiet_NaN()});
    } else if (row.mean_error < out.back().best_error) {
      out.back().best_p = row.p;
      out.back().best_error = row.mean_error;
    }
    if (row.p == 2.0) out.back().p2_error = row.mean_error;
  }
  return out;
}

}  // namespace hyperlap
