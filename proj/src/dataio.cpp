// Copyright The hyperlap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hyperlap/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hyperlap/error.hpp"

namespace hyperlap {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delimiter, start);
    if (pos == std::string::npos) {
      out.push_back(trim(std::string_view(line).substr(start)));
      return out;
    }
    out.push_back(trim(std::string_view(line).substr(start, pos - start)));
    start = pos + 1;
  }
}

}  // namespace

std::string_view to_string(MissingPolicy policy) noexcept {
  switch (policy) {
    case MissingPolicy::DropMembership: return "drop-membership";
    case MissingPolicy::AsCategory: return "as-category";
    case MissingPolicy::DropAttribute: return "drop-attribute";
  }
  return "unknown";
}

MissingPolicy parse_policy(std::string_view name) {
  if (name == "drop-membership") return MissingPolicy::DropMembership;
  if (name == "as-category") return MissingPolicy::AsCategory;
  if (name == "drop-attribute") return MissingPolicy::DropAttribute;
  fail(ErrorKind::InvalidArgument, "unknown missing-value policy '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"breast-cancer", "congress", "mushroom", "zoo"}; }

DatasetSpec preset_spec(std::string_view name, std::string path) {
  DatasetSpec spec;
  spec.path = std::move(path);
  if (name == "mushroom") {
    // class, then 22 attributes; stalk-root carries the '?' values.
    spec.label_column = 0;
    spec.missing_policy = MissingPolicy::DropAttribute;
  } else if (name == "congress") {
    spec.label_column = 0;
    spec.missing_policy = MissingPolicy::AsCategory;
  } else if (name == "breast-cancer") {
    // id, 9 attributes, class (2 = benign, 4 = malignant).
    spec.label_column = 10;
    spec.feature_columns = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    spec.missing_policy = MissingPolicy::DropMembership;
  } else if (name == "zoo") {
    // animal name, 16 attributes, type 1..7.
    spec.label_column = 17;
    spec.feature_columns.resize(16);
    std::iota(spec.feature_columns.begin(), spec.feature_columns.end(), std::size_t{1});
    spec.missing_policy = MissingPolicy::AsCategory;
  } else {
    fail(ErrorKind::InvalidArgument, "unknown dataset preset '" + std::string(name) + "'");
  }
  return spec;
}

Dataset ingest(const DatasetSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) fail(ErrorKind::IOError, "cannot open '" + spec.path + "'");
  return ingest_stream(in, spec);
}

Dataset ingest_stream(std::istream& in, const DatasetSpec& spec) {
  std::vector<std::vector<std::string>> rows;
  std::size_t arity = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split(line, spec.delimiter);
    if (rows.empty()) {
      arity = fields.size();
    } else if (fields.size() != arity) {
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                      std::to_string(arity) + " fields, found " +
                                      std::to_string(fields.size()));
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) fail(ErrorKind::EmptyDataset, "no data rows in '" + spec.path + "'");
  if (spec.label_column >= arity) {
    fail(ErrorKind::InvalidArgument, "label column " + std::to_string(spec.label_column) +
                                         " but rows have " + std::to_string(arity) + " fields");
  }

  std::vector<std::size_t> columns = spec.feature_columns;
  if (columns.empty()) {
    for (std::size_t c = 0; c < arity; ++c) {
      if (c != spec.label_column) columns.push_back(c);
    }
  }
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
  for (std::size_t c : columns) {
    if (c == spec.label_column) {
      fail(ErrorKind::InvalidArgument, "label column is also listed as a feature column");
    }
    if (c >= arity) fail(ErrorKind::InvalidArgument, "feature column " + std::to_string(c) + " out of range");
  }

  std::vector<std::size_t> used_columns;
  std::size_t trivial_dropped = 0;
  RawHypergraph raw;
  raw.num_nodes = rows.size();
  std::vector<std::string> edge_names;
  for (std::size_t c : columns) {
    if (spec.missing_policy == MissingPolicy::DropAttribute &&
        std::any_of(rows.begin(), rows.end(),
                    [&](const auto& r) { return r[c] == spec.missing_token; })) {
      continue;
    }
    used_columns.push_back(c);
    std::map<std::string, std::vector<NodeId>> groups;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string& value = rows[r][c];
      if (value == spec.missing_token && spec.missing_policy == MissingPolicy::DropMembership) {
        continue;
      }
      groups[value].push_back(static_cast<NodeId>(r));
    }
    for (auto& [value, members] : groups) {
      if (spec.drop_trivial_edges && members.size() < 2) {
        ++trivial_dropped;
        continue;
      }
      raw.edges.push_back(std::move(members));
      raw.weights.push_back(1.0);
      edge_names.push_back(std::to_string(c) + "=" + value);
    }
  }
  if (raw.edges.empty()) fail(ErrorKind::EmptyDataset, "no hyperedges could be formed");

  ComponentExtraction sub = largest_component(raw);
  std::vector<std::string> warnings;
  if (sub.component_count > 1) {
    warnings.push_back("input has " + std::to_string(sub.component_count) +
                           " connected components; kept the largest (" +
                           std::to_string(sub.original_ids.size()) + " of " +
                           std::to_string(rows.size()) + " rows)");
    std::vector<std::uint8_t> kept_node(rows.size(), 0);
    for (NodeId v : sub.original_ids) kept_node[v] = 1;
    std::vector<std::string> kept_names;
    for (std::size_t e = 0; e < raw.edges.size(); ++e) {
      if (kept_node[raw.edges[e][0]]) kept_names.push_back(edge_names[e]);
    }
    edge_names = std::move(kept_names);
  }
  Dataset out{std::move(sub.hypergraph)};
  out.edge_names = std::move(edge_names);
  out.source_rows.assign(sub.original_ids.begin(), sub.original_ids.end());
  out.feature_columns_used = std::move(used_columns);
  out.rows_read = rows.size();
  out.trivial_edges_dropped = trivial_dropped;
  out.components = sub.component_count;
  out.warnings = std::move(warnings);

  std::set<std::string> classes;
  for (std::size_t r : out.source_rows) classes.insert(rows[r][spec.label_column]);
  out.label_names.assign(classes.begin(), classes.end());
  out.labels.reserve(out.source_rows.size());
  for (std::size_t r : out.source_rows) {
    const auto it = std::lower_bound(out.label_names.begin(), out.label_names.end(),
                                     rows[r][spec.label_column]);
    out.labels.push_back(static_cast<std::uint32_t>(it - out.label_names.begin()));
  }
  return out;
}

// ---------------------------------------------------------------------------

HypergraphDocument to_document(const Dataset& data) {
  HypergraphDocument doc;
  doc.raw = data.hypergraph.to_raw();
  doc.labels = data.labels;
  doc.label_names = data.label_names;
  doc.edge_names = data.edge_names;
  return doc;
}

HypergraphDocument to_document(const Hypergraph& h, std::vector<std::uint32_t> labels,
                               std::vector<std::string> label_names) {
  HypergraphDocument doc;
  doc.raw = h.to_raw();
  doc.labels = std::move(labels);
  doc.label_names = std::move(label_names);
  return doc;
}

std::string serialize_hypergraph(const HypergraphDocument& doc) {
  const RawHypergraph& raw = doc.raw;
  const bool named = !doc.edge_names.empty();
  if (named && doc.edge_names.size() != raw.edges.size()) {
    fail(ErrorKind::InvalidArgument, "edge name count differs from edge count");
  }
  std::vector<std::vector<NodeId>> edges = raw.edges;
  for (auto& members : edges) std::sort(members.begin(), members.end());
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (edges[a] != edges[b]) return edges[a] < edges[b];
    if (raw.weights[a] != raw.weights[b]) return raw.weights[a] < raw.weights[b];
    return named && doc.edge_names[a] < doc.edge_names[b];
  });

  nlohmann::ordered_json j;
  j["format"] = kFormatVersion;
  j["num_nodes"] = raw.num_nodes;
  nlohmann::json edge_array = nlohmann::json::array();
  nlohmann::json weight_array = nlohmann::json::array();
  nlohmann::json name_array = nlohmann::json::array();
  for (std::size_t i : order) {
    edge_array.push_back(edges[i]);
    weight_array.push_back(raw.weights[i]);
    if (named) name_array.push_back(doc.edge_names[i]);
  }
  j["edges"] = std::move(edge_array);
  j["weights"] = std::move(weight_array);
  if (named) j["edge_names"] = std::move(name_array);
  if (!doc.labels.empty()) j["labels"] = doc.labels;
  if (!doc.label_names.empty()) j["label_names"] = doc.label_names;
  return j.dump() + "\n";
}

void save_hypergraph(const HypergraphDocument& doc, const std::string& path) {
  const std::string text = serialize_hypergraph(doc);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IOError, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorKind::IOError, "write to '" + path + "' failed");
}

HypergraphDocument parse_hypergraph(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("format") || !j["format"].is_string()) {
    fail(ErrorKind::SchemaVersionMismatch, "not a hypergraph document");
  }
  const std::string format = j["format"].get<std::string>();
  if (format != kFormatVersion) {
    fail(ErrorKind::SchemaVersionMismatch,
         "document format '" + format + "', expected '" + std::string(kFormatVersion) + "'");
  }
  HypergraphDocument doc;
  try {
    doc.raw.num_nodes = j.at("num_nodes").get<std::size_t>();
    doc.raw.edges = j.at("edges").get<std::vector<std::vector<NodeId>>>();
    doc.raw.weights = j.at("weights").get<std::vector<double>>();
    if (j.contains("edge_names")) doc.edge_names = j["edge_names"].get<std::vector<std::string>>();
    if (j.contains("labels")) doc.labels = j["labels"].get<std::vector<std::uint32_t>>();
    if (j.contains("label_names")) {
      doc.label_names = j["label_names"].get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("malformed hypergraph document: ") + e.what());
  }
  if (!doc.labels.empty() && doc.labels.size() != doc.raw.num_nodes) {
    fail(ErrorKind::ParseError, "label count differs from num_nodes");
  }
  return doc;
}

HypergraphDocument load_hypergraph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IOError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_hypergraph(buffer.str());
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string format_double(double x) {
  if (std::isnan(x)) return "";
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double parse_double(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double x = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return x;
}

// Reads one RFC-4180 record; false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\r') {
      if (in.peek() == '\n') in.get(c);
      break;
    } else if (c == '\n') {
      break;
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return true;
}

}  // namespace

std::vector<std::string> csv_header() {
  return {"dataset", "task",      "p",          "mu",        "labeled_fraction",
          "trial",   "seed",      "error_rate", "ncut_value", "iterations",
          "wall_time", "converged", "note"};
}

void write_csv(const std::vector<ResultRecord>& records, std::ostream& out) {
  const auto header = csv_header();
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\r\n";
  for (const ResultRecord& r : records) {
    out << quote(r.dataset) << ',' << quote(r.task) << ',' << format_double(r.p) << ','
        << format_double(r.mu) << ',' << format_double(r.labeled_fraction) << ',' << r.trial
        << ',' << r.seed << ',' << format_double(r.error_rate) << ','
        << format_double(r.ncut_value) << ',' << r.iterations << ','
        << format_double(r.wall_time) << ',' << (r.converged ? "true" : "false") << ','
        << quote(r.note) << "\r\n";
  }
}

void emit_csv(const std::vector<ResultRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IOError, "cannot write '" + path + "'");
  write_csv(records, out);
  if (!out) fail(ErrorKind::IOError, "write to '" + path + "' failed");
}

std::vector<ResultRecord> read_csv(std::istream& in) {
  std::vector<std::string> fields;
  if (!read_record(in, fields) || fields != csv_header()) {
    fail(ErrorKind::ParseError, "missing or unexpected CSV header");
  }
  std::vector<ResultRecord> out;
  std::size_t line = 1;
  while (read_record(in, fields)) {
    ++line;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != csv_header().size()) {
      fail(ErrorKind::ParseError, "CSV line " + std::to_string(line) + " has " +
                                      std::to_string(fields.size()) + " fields");
    }
    try {
      ResultRecord r;
      r.dataset = fields[0];
      r.task = fields[1];
      r.p = parse_double(fields[2]);
      r.mu = parse_double(fields[3]);
      r.labeled_fraction = parse_double(fields[4]);
      r.trial = std::stoull(fields[5]);
      r.seed = std::stoull(fields[6]);
      r.error_rate = parse_double(fields[7]);
      r.ncut_value = parse_double(fields[8]);
      r.iterations = std::stoull(fields[9]);
      r.wall_time = parse_double(fields[10]);
      r.converged = fields[11] == "true";
      r.note = fields[12];
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      fail(ErrorKind::ParseError, "CSV line " + std::to_string(line) + " has a malformed number");
    }
  }
  return out;
}

}  // namespace hyperlap
