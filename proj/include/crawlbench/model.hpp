// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Core domain types shared by all modules: node types, configuration, the
// typed node graph, per-node RDF graphs, the cloud manifest and the run
// report, plus the crawlability check everything else is measured against.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crawlbench {

inline constexpr char kManifestVersion[] = "1";

// ---------------------------------------------------------------------------
// Node types

enum class NodeType : int {
  Dereferencing = 0,
  DumpFile = 1,
  Sparql = 2,
  Ckan = 3,
  Rdfa = 4,
};

inline constexpr int kNodeTypeCount = 5;

std::string to_string(NodeType t);
NodeType node_type_from_string(const std::string& name);

// ---------------------------------------------------------------------------
// RDF formats and compressions (wire values are normative)

enum class RdfFormatKind : int { NTriples = 0, Turtle = 1, RdfXml = 2, N3 = 3 };
inline constexpr int kRdfFormatCount = 4;

struct RdfFormat {
  RdfFormatKind kind;
  std::string media_type;
  std::string extension;
};

const RdfFormat& format_info(RdfFormatKind kind);
std::string to_string(RdfFormatKind kind);
RdfFormatKind rdf_format_from_string(const std::string& name);

enum class Compression : int { None = 0, Zip = 1, Gzip = 2, Bzip2 = 3 };

std::string compression_extension(Compression c);
std::string to_string(Compression c);
Compression compression_from_string(const std::string& name);

// ---------------------------------------------------------------------------
// Triples

struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;

  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Canonical N-Triples line: `<s> <p> <o> .` with single spaces. Recall
/// checking and determinism tests are exact string-set operations over these
/// lines; canonical files sort them lexicographically (bytewise).
std::string canonical_line(const Triple& t);

/// Sorted canonical lines for a triple list (duplicates collapse).
std::vector<std::string> canonical_lines(const std::vector<Triple>& triples);

// ---------------------------------------------------------------------------
// Configuration

struct CloudConfig {
  std::uint64_t node_count = 0;
  std::array<double, kNodeTypeCount> type_weights{};  // indexed by NodeType
  double avg_node_degree = 1.0;
  std::uint64_t triples_per_graph = 1;   // dataset size per node
  std::uint64_t avg_resource_degree = 1; // average resource degree
  double dump_compression_ratio = 0.0;
  std::set<RdfFormatKind> dump_formats_enabled = {
      RdfFormatKind::NTriples, RdfFormatKind::Turtle, RdfFormatKind::RdfXml,
      RdfFormatKind::N3};
  double disallowed_ratio = 0.0;
  double crawl_delay_seconds = 0.0;  // 0 = no Crawl-delay line
  std::uint64_t seed = 0;
  std::string host_template = "127.0.0.1:{port}";
  std::uint16_t base_port = 18100;

  /// Node types with positive weight, in NodeType order.
  std::vector<NodeType> positive_types() const;

  /// Throws std::invalid_argument on the first violated invariant.
  void validate() const;

  /// Expands host_template for node `k` ({k} = node index, {port} = port).
  std::string host_for(std::uint32_t node_id) const;
};

// ---------------------------------------------------------------------------
// Connectivity matrix

struct ConnectivityMatrix {
  // allowed[from][to], indexed by NodeType.
  std::array<std::array<bool, kNodeTypeCount>, kNodeTypeCount> allowed{};

  /// Default matrix: everything allowed except CKAN -> Dereferencing.
  static ConnectivityMatrix defaults();

  bool operator==(const ConnectivityMatrix&) const = default;
};

// ---------------------------------------------------------------------------
// Node graph

struct NodeSpec {
  std::uint32_t id = 0;
  NodeType type = NodeType::Dereferencing;
  std::string host;  // "name:port" or "name"
  // Only meaningful for DumpFile nodes.
  RdfFormatKind dump_format = RdfFormatKind::Turtle;
  Compression dump_compression = Compression::None;

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

struct WebGraph {
  std::vector<NodeSpec> nodes;  // index == node id
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // sorted, unique
  std::vector<std::uint32_t> seeds;  // ascending

  std::vector<std::vector<std::uint32_t>> adjacency() const;
  std::size_t out_degree(std::uint32_t node) const;
  std::vector<std::uint32_t> targets_of(std::uint32_t node) const;  // ascending
};

// ---------------------------------------------------------------------------
// Per-node RDF graph

struct RdfGraph {
  std::vector<std::string> resources;   // resources[0] is the entrance
  std::vector<std::string> properties;
  std::vector<std::string> externals;   // sorted set of external IRIs
  std::vector<Triple> internal_triples; // objects in `resources`
  std::vector<Triple> outgoing_triples; // objects in `externals`

  /// T_i then T_o, in stored order.
  std::vector<Triple> all_triples() const;

  /// All triples whose subject equals `iri`, in stored order.
  std::vector<Triple> subject_slice(const std::string& iri) const;
};

// ---------------------------------------------------------------------------
// Manifest

struct NodeData {
  RdfGraph graph;
  std::vector<std::string> disallowed;  // sorted copy IRIs
  std::map<std::string, std::string> served_urls;
  std::vector<std::string> expected_lines;  // sorted canonical N-Triples
};

struct CloudManifest {
  CloudConfig config;
  ConnectivityMatrix connectivity;
  WebGraph web;
  std::vector<NodeData> per_node;  // index == node id
  std::string rng_algorithm;       // part of the manifest identity

  /// Seed URIs handed to the crawler: entrance references of seed nodes.
  std::vector<std::string> seed_uris() const;
};

// ---------------------------------------------------------------------------
// Run report

struct CdfReport {
  std::map<std::uint32_t, double> per_node;  // nodes with >= 2 requests
  double min = 0.0;
  double max = 0.0;
  double avg = 0.0;
};

struct RdrReport {
  std::map<std::uint32_t, double> per_node;  // nodes with disallowed sets
  double ratio = 0.0;                        // mean of per-node fractions
  std::uint64_t disallowed_total = 0;
  std::uint64_t requested_total = 0;
};

struct RunReport {
  std::map<std::uint32_t, double> recall_per_node;
  double micro_recall = 0.0;
  double macro_recall = 0.0;
  std::uint64_t true_positives = 0;
  std::uint64_t expected_total = 0;
  double runtime_seconds = 0.0;
  std::vector<std::pair<double, std::uint64_t>> triples_over_time;
  std::optional<CdfReport> cdf;
  std::optional<RdrReport> rdr;
  std::uint64_t seed = 0;
  std::string config_echo;  // canonical JSON of the config
  std::string started_at;   // wall clock, ISO 8601 UTC
  std::string finished_at;
  bool timed_out = false;
  int crawler_exit_code = 0;
};

// ---------------------------------------------------------------------------
// Crawlability

/// Directed-graph view used by the crawlability check. Nodes are dense ids
/// 0..node_count-1.
struct GraphView {
  std::size_t node_count = 0;
  std::vector<std::vector<std::uint32_t>> adjacency;
};

GraphView as_view(const WebGraph& graph);

/// View of an RDF graph's internal triples; node i is resources[i].
GraphView internal_view(const RdfGraph& graph);

/// True iff directed BFS from `seeds` reaches every node.
/// Throws std::invalid_argument("seed not in graph") on an unknown seed id.
bool check_crawlable(const GraphView& graph, std::span<const std::uint32_t> seeds);

bool check_crawlable(const WebGraph& graph, std::span<const std::uint32_t> seeds);

/// True iff every resource is reachable from resources[0].
bool entrance_reaches_all(const RdfGraph& graph);

}  // namespace crawlbench
