// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperlap/hypergraph.hpp"

namespace hyperlap {

// ---------------------------------------------------------------------------
// Ingestion

enum class MissingPolicy {
  /// A row with a missing value joins no edge of that column.
  DropMembership,
  /// The missing token is an ordinary value.
  AsCategory,
  /// Columns containing the missing token are removed.
  DropAttribute,
};

std::string_view to_string(MissingPolicy policy) noexcept;
/// Throws InvalidArgument for unknown names.
MissingPolicy parse_policy(std::string_view name);

struct DatasetSpec {
  std::string path;
  char delimiter = ',';
  std::size_t label_column = 0;
  /// Empty means every column except the label column.
  std::vector<std::size_t> feature_columns;
  std::string missing_token = "?";
  MissingPolicy missing_policy = MissingPolicy::AsCategory;
  /// Remove edges with fewer than two members.
  bool drop_trivial_edges = true;
};

/// Preset specs: "mushroom", "congress", "breast-cancer", "zoo".
/// Throws InvalidArgument for unknown names.
DatasetSpec preset_spec(std::string_view name, std::string path);
std::vector<std::string> preset_names();

struct Dataset {
  Hypergraph hypergraph;
  /// Class id per node; ids follow the sorted class strings.
  std::vector<std::uint32_t> labels{};
  std::vector<std::string> label_names{};
  /// 0-based data row of every node.
  std::vector<std::size_t> source_rows{};
  /// "column=value" for every edge.
  std::vector<std::string> edge_names{};
  std::vector<std::size_t> feature_columns_used{};
  std::size_t rows_read = 0;
  std::size_t trivial_edges_dropped = 0;
  /// Components before restriction to the largest one.
  std::size_t components = 1;
  std::vector<std::string> warnings{};
};

/// One hyperedge per (feature column, value), members = rows holding the
/// value, unit weights. Edges are ordered by (column, value string), nodes
/// by row. Throws IOError, ParseError (arity mismatch, with line number),
/// EmptyDataset, InvalidArgument.
Dataset ingest(const DatasetSpec& spec);
Dataset ingest_stream(std::istream& in, const DatasetSpec& spec);

// ---------------------------------------------------------------------------
// Serialization

inline constexpr std::string_view kFormatVersion = "hyperlap/1";

struct HypergraphDocument {
  RawHypergraph raw;
  std::vector<std::uint32_t> labels;
  std::vector<std::string> label_names;
  std::vector<std::string> edge_names;
};

HypergraphDocument to_document(const Dataset& data);
HypergraphDocument to_document(const Hypergraph& h, std::vector<std::uint32_t> labels = {},
                               std::vector<std::string> label_names = {});

/// Canonical JSON: members sorted within edges, edges sorted, stable key
/// order. Throws IOError.
void save_hypergraph(const HypergraphDocument& doc, const std::string& path);
std::string serialize_hypergraph(const HypergraphDocument& doc);

/// Throws IOError, SchemaVersionMismatch (unparsable or wrong version),
/// ParseError (missing or ill-typed fields).
HypergraphDocument load_hypergraph(const std::string& path);
HypergraphDocument parse_hypergraph(std::string_view text);

// ---------------------------------------------------------------------------
// Experiments

enum class Task { SSL, Cut2, CutK, SweepP };

std::string_view to_string(Task task) noexcept;

struct ExperimentConfig {
  Task task = Task::SSL;
  std::string dataset_id;
  std::vector<double> p_values = {2.0};
  /// Empty selects μ by cross-validation.
  std::optional<double> mu;
  std::vector<double> labeled_fractions = {0.1};
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// Cluster count for cutk; 0 uses the number of classes.
  std::size_t k = 0;
  std::size_t kmeans_restarts = 10;
  std::size_t threads = 1;
  /// Gauss-Jacobi sweep limit for p != 2.
  std::size_t max_iter = 10000;
};

/// Throws InvalidArgument.
void validate(const ExperimentConfig& cfg);

/// p grid 1.0, 1.1, ..., 3.0.
std::vector<double> default_p_grid();

struct ResultRecord {
  std::string dataset;
  std::string task;
  double p = 2.0;
  /// NaN when not applicable.
  double mu = 0.0;
  double labeled_fraction = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double error_rate = 0.0;
  /// NaN for SSL.
  double ncut_value = 0.0;
  std::size_t iterations = 0;
  double wall_time = 0.0;
  bool converged = true;
  /// Free-form flags such as "degenerate" or "cv-fallback".
  std::string note;
};

/// Records sorted by (fraction, p, trial).
std::vector<ResultRecord> run_ssl_experiment(const Hypergraph& h,
                                             const std::vector<std::uint32_t>& labels,
                                             const ExperimentConfig& cfg);
std::vector<ResultRecord> run_cut_experiment(const Hypergraph& h,
                                             const std::vector<std::uint32_t>& labels,
                                             const ExperimentConfig& cfg);

struct AggregateRow {
  double labeled_fraction = 0.0;
  double p = 0.0;
  double mean_error = 0.0;
  std::size_t count = 0;
};

/// Mean error per (fraction, p), sorted.
std::vector<AggregateRow> aggregate(const std::vector<ResultRecord>& records);

struct BestP {
  double labeled_fraction = 0.0;
  double best_p = 0.0;
  double best_error = 0.0;
  /// NaN when p = 2 was not run.
  double p2_error = 0.0;
};

/// Per fraction, the p with the smallest mean error (ties to smaller p).
std::vector<BestP> best_p(const std::vector<ResultRecord>& records);

/// Collects the first `count` labeled nodes drawn for a trial: one per class
/// first, then uniformly without replacement.
std::vector<NodeId> draw_labeled(const std::vector<std::uint32_t>& labels, std::size_t count,
                                 std::uint64_t seed);

// ---------------------------------------------------------------------------
// CSV

std::vector<std::string> csv_header();
void write_csv(const std::vector<ResultRecord>& records, std::ostream& out);
/// Throws IOError.
void emit_csv(const std::vector<ResultRecord>& records, const std::string& path);
/// Inverse of write_csv. Throws ParseError.
std::vector<ResultRecord> read_csv(std::istream& in);

}  // namespace hyperlap
